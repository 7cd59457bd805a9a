#pragma once

#include <stdexcept>
#include <string>

namespace robustmix {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid scalar input (non-finite argument, probability outside its range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Dimension mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Matrix is not symmetric positive definite; carries the failing pivot.
class NotSpdError : public Error {
public:
    NotSpdError(const std::string& what, int pivot) : Error(what), pivot_index(pivot) {}
    int pivot_index;
};

// Operation preconditions not met (epsilon beyond a bound's validity limit,
// imbalanced mixture passed to a balanced-only analysis, ...).
class ApplicabilityError : public Error {
public:
    using Error::Error;
};

// Requested configuration is outside the supported family
// (grid oracle beyond d=4, imbalanced no-tradeoff check, bad norm order).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace robustmix
