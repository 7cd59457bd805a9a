#include "robustmix/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "robustmix/parallel.hpp"

namespace robustmix::montecarlo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t hash_counters(const RngSpec& rng, std::uint64_t c0, std::uint64_t c1) {
    std::uint64_t h = mix64(rng.seed);
    h = mix64(h ^ (rng.stream_id + kGolden));
    h = mix64(h ^ c0);
    h = mix64(h ^ c1);
    return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform_open01(const RngSpec& rng, std::uint64_t ctr0, std::uint64_t ctr1) {
    // (0,1): never returns 0 or 1, so log/Box-Muller stay finite.
    return (static_cast<double>(hash_counters(rng, ctr0, ctr1) >> 11) + 0.5) * 0x1.0p-53;
}

void standard_normal_fill(const RngSpec& rng, std::uint64_t sample_index,
                          Eigen::Ref<Eigen::VectorXd> out) {
    const auto d = out.size();
    for (Eigen::Index j = 0; 2 * j < d; ++j) {
        // Counter slot 0 of each sample is reserved for the label draw.
        double u1 = uniform_open01(rng, sample_index, 1 + 2 * static_cast<std::uint64_t>(j));
        double u2 = uniform_open01(rng, sample_index, 2 + 2 * static_cast<std::uint64_t>(j));
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        out[2 * j] = radius * std::cos(angle);
        if (2 * j + 1 < d) out[2 * j + 1] = radius * std::sin(angle);
    }
}

linearloss::SampleSet sample(const model::GaussianMixture& mixture, long n, const RngSpec& rng) {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    const int d = mixture.dim();
    const Eigen::MatrixXd& lower = mixture.sigma_factor().lower;

    Eigen::MatrixXd x(n, d);
    Eigen::VectorXi y(n);
    parallel::parallel_for(n, [&](long i) {
        auto idx = static_cast<std::uint64_t>(i);
        int label = uniform_open01(rng, idx, 0) < mixture.pi_plus() ? 1 : -1;
        Eigen::VectorXd g(d);
        standard_normal_fill(rng, idx, g);
        y[i] = label;
        x.row(i) = (static_cast<double>(label) * mixture.mu() + lower * g).transpose();
    });
    return linearloss::SampleSet::from_data(std::move(x), std::move(y));
}

EmpiricalRisk empirical_adversarial_risk(const model::LinearClassifier& classifier,
                                         const model::GaussianMixture& mixture,
                                         const model::ThreatModel& threat, long n,
                                         const RngSpec& rng) {
    if (n < 1) throw DomainError("empirical_adversarial_risk: n must be >= 1");
    if (classifier.w.size() != mixture.dim()) {
        throw ShapeError("empirical_adversarial_risk: classifier dimension does not match mixture");
    }
    const int d = mixture.dim();
    const double w_mu = classifier.w.dot(mixture.mu());
    const double shift = threat.epsilon * classifier.w.lpNorm<1>();
    const Eigen::VectorXd lt_w = mixture.sigma_factor().lower.transpose() * classifier.w;

    // Disjoint index ranges per worker; the error count is an integer sum, so
    // the estimate does not depend on the chunking.
    const int workers = parallel::worker_count();
    const long chunks = std::min<long>(n, workers > 1 ? workers * 4 : 1);
    std::vector<long> errors(static_cast<size_t>(chunks), 0);
    parallel::parallel_for(chunks, [&](long c) {
        const long begin = n * c / chunks;
        const long end = n * (c + 1) / chunks;
        Eigen::VectorXd g(d);
        long count = 0;
        for (long i = begin; i < end; ++i) {
            auto idx = static_cast<std::uint64_t>(i);
            int label = uniform_open01(rng, idx, 0) < mixture.pi_plus() ? 1 : -1;
            standard_normal_fill(rng, idx, g);
            double score = static_cast<double>(label) * w_mu + lt_w.dot(g) + classifier.w0;
            double worst_margin = static_cast<double>(label) * score - shift;
            // Tie at a zero perturbed score predicts +1.
            if (label > 0 ? worst_margin < 0.0 : worst_margin <= 0.0) ++count;
        }
        errors[static_cast<size_t>(c)] = count;
    });

    long total = 0;
    for (long e : errors) total += e;
    EmpiricalRisk result;
    result.n = n;
    result.estimate = static_cast<double>(total) / static_cast<double>(n);
    result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(n));
    return result;
}

}  // namespace robustmix::montecarlo
