#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "robustmix/model.hpp"

namespace robustmix::experiment {

using model::Matrix;
using model::Vector;

// Configuration file problems (unknown keys handled leniently, bad values not).
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class SweepKind { pi_sweep, eps_sweep, regime, bounds, finite_sample, breakpoints };

SweepKind sweep_kind_from_string(const std::string& name);
std::string to_string(SweepKind kind);

// Finite-sample training experiment: repeated draws from a clipped Gaussian,
// closed-form training at eps and 0, equality frequency against the matching
// probability bound.
struct FiniteSampleSpec {
    double p = std::numeric_limits<double>::infinity();  // norm order (1 or inf)
    double W = 1.0;
    long n = 1000;        // samples per trial
    long trials = 1000;
    double noise_sigma = 0.5;
    double clip_margin = 4.0;  // A = max|mu_i| + clip_margin * noise_sigma
};

struct ExperimentConfig {
    std::string name = "experiment";
    SweepKind sweep = SweepKind::pi_sweep;
    Vector mu;
    Matrix sigma;
    std::vector<double> pi_values{0.5};   // curve set for eps sweeps
    std::vector<double> eps_values{0.0};  // curve set for pi sweeps / regime points
    std::vector<double> pi_grid;          // sweep axis for pi_sweep / regime
    std::vector<double> eps_grid;         // sweep axis for eps_sweep / bounds / breakpoints
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
    bool emit_svg = true;
    std::string plot_y;  // optional y-column override for the plot
    std::optional<FiniteSampleSpec> finite_sample;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load(const std::filesystem::path& path);
    std::string to_json_text() const;

    model::GaussianMixture mixture(double pi_plus) const;
};

// Mixture (de)serialization used by configs; doubles survive the round trip
// bit-exactly.
std::string mixture_to_json_text(const model::GaussianMixture& mixture);
model::GaussianMixture mixture_from_json_text(const std::string& text);

// Uniform grid start..stop by step, endpoints included.
std::vector<double> make_grid(double start, double stop, double step);

struct RunResult {
    std::vector<std::filesystem::path> artifacts;
    std::string summary;  // printable table
};

// Executes the configured sweep, writes one CSV (plus SVG when enabled and
// meaningful) into out_dir, and returns a printable summary.
RunResult run(const ExperimentConfig& config);

// Renders the plot for an already-written sweep CSV; used both by run() and
// by the round-trip check that re-plotting a re-read CSV is byte-identical.
std::string render_plot(const ExperimentConfig& config, const std::filesystem::path& csv_path);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace robustmix::experiment
