#pragma once

#include <cstdint>

#include "robustmix/linearloss.hpp"
#include "robustmix/model.hpp"

namespace robustmix::montecarlo {

// Counter-based stream: a (seed, stream_id, counter...) tuple maps to one
// uniform draw through splitmix64-style mixing, so any sample can be computed
// independently of the others. Identical specs reproduce identical sequences
// bit-exactly, and chunked parallel evaluation cannot change the result.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Uniform draw in the open interval (0,1) at the given counters.
double uniform_open01(const RngSpec& rng, std::uint64_t ctr0, std::uint64_t ctr1);

// Standard normal draws for one sample index via Box-Muller on counter pairs.
void standard_normal_fill(const RngSpec& rng, std::uint64_t sample_index,
                          Eigen::Ref<Eigen::VectorXd> out);

struct EmpiricalRisk {
    double estimate = 0.0;
    double std_error = 0.0;
    long n = 0;
};

// Draws n labeled samples: y = +1 with probability pi_plus, x = y mu + L g.
linearloss::SampleSet sample(const model::GaussianMixture& mixture, long n, const RngSpec& rng);

// Empirical adversarial risk of a linear classifier. The per-sample worst
// case is the closed-form margin shift y(<w,x> + w0) - eps ||w||_1; the tie
// at a zero score predicts +1. eps = 0 gives the empirical natural risk.
EmpiricalRisk empirical_adversarial_risk(const model::LinearClassifier& classifier,
                                         const model::GaussianMixture& mixture,
                                         const model::ThreatModel& threat, long n,
                                         const RngSpec& rng);

}  // namespace robustmix::montecarlo
