#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "robustmix/analysis.hpp"
#include "robustmix/boxqp.hpp"
#include "robustmix/classifiers.hpp"
#include "robustmix/experiment.hpp"
#include "robustmix/linearloss.hpp"
#include "robustmix/model.hpp"
#include "robustmix/montecarlo.hpp"
#include "robustmix/numerics.hpp"
#include "robustmix/risk.hpp"

namespace py = pybind11;
using namespace robustmix;

namespace {

boxqp::SolveOptions make_options(double tol, long max_iterations, bool nesterov) {
    boxqp::SolveOptions opts;
    opts.tol = tol;
    opts.max_iterations = max_iterations;
    opts.nesterov = nesterov;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_robustmix, m) {
    m.doc() = "Optimal standard/adversarial linear classification for binary Gaussian mixtures";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<NotSpdError>(m, "NotSpdError", PyExc_ValueError);
    py::register_exception<ApplicabilityError>(m, "ApplicabilityError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
    py::register_exception<boxqp::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def("std_normal_cdf", &numerics::std_normal_cdf, py::arg("x"));
    m.def("std_normal_pdf", &numerics::std_normal_pdf, py::arg("x"));

    py::class_<model::ThreatModel>(m, "ThreatModel")
        .def(py::init<double>(), py::arg("epsilon"))
        .def_readonly("epsilon", &model::ThreatModel::epsilon);

    py::class_<model::GaussianMixture>(m, "GaussianMixture")
        .def(py::init<model::Vector, model::Matrix, double>(), py::arg("mu"), py::arg("sigma"),
             py::arg("pi_plus"))
        .def_property_readonly("mu", &model::GaussianMixture::mu)
        .def_property_readonly("sigma", &model::GaussianMixture::sigma)
        .def_property_readonly("pi_plus", &model::GaussianMixture::pi_plus)
        .def_property_readonly("pi_minus", &model::GaussianMixture::pi_minus)
        .def_property_readonly("dim", &model::GaussianMixture::dim)
        .def("mahalanobis", &model::GaussianMixture::mahalanobis, py::arg("v"));

    m.def("validate_mixture", &model::validate_mixture, py::arg("mu"), py::arg("sigma"),
          py::arg("pi_plus"));
    m.def(
        "nontrivial_budget",
        [](const model::GaussianMixture& mix, double eps) {
            return model::nontrivial_budget(mix, model::ThreatModel(eps));
        },
        py::arg("mixture"), py::arg("epsilon"));

    py::class_<model::LinearClassifier>(m, "LinearClassifier")
        .def(py::init<model::Vector, double>(), py::arg("w"), py::arg("w0"))
        .def_readwrite("w", &model::LinearClassifier::w)
        .def_readwrite("w0", &model::LinearClassifier::w0)
        .def("predict", &model::LinearClassifier::predict, py::arg("x"));

    py::enum_<boxqp::Activity>(m, "Activity")
        .value("lower", boxqp::Activity::lower)
        .value("interior", boxqp::Activity::interior)
        .value("upper", boxqp::Activity::upper);

    py::class_<boxqp::BoxQpSolution>(m, "BoxQpSolution")
        .def_readonly("z_star", &boxqp::BoxQpSolution::z_star)
        .def_readonly("objective", &boxqp::BoxQpSolution::objective)
        .def_readonly("active_set", &boxqp::BoxQpSolution::active_set)
        .def_readonly("kkt_residual", &boxqp::BoxQpSolution::kkt_residual)
        .def_readonly("iterations", &boxqp::BoxQpSolution::iterations);

    m.def(
        "solve_zstar",
        [](const model::GaussianMixture& mix, double eps, double tol, long max_iterations,
           bool nesterov) {
            return boxqp::solve_zstar(mix, model::ThreatModel(eps),
                                      make_options(tol, max_iterations, nesterov));
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10,
        py::arg("max_iterations") = 200000, py::arg("nesterov") = false);
    m.def("diagonal_zstar", &boxqp::diagonal_zstar, py::arg("mu"), py::arg("sigma_diag"),
          py::arg("epsilon"));
    m.def(
        "grid_oracle_zstar",
        [](const model::GaussianMixture& mix, double eps, int grid_points) {
            return boxqp::grid_oracle_zstar(mix, model::ThreatModel(eps), grid_points);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("grid_points_per_axis"));

    py::class_<boxqp::BreakpointBracket>(m, "BreakpointBracket")
        .def_readonly("eps_lo", &boxqp::BreakpointBracket::eps_lo)
        .def_readonly("eps_hi", &boxqp::BreakpointBracket::eps_hi)
        .def_readonly("change", &boxqp::BreakpointBracket::change);

    m.def(
        "detect_breakpoints",
        [](const model::GaussianMixture& mix, const model::Vector& grid, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return boxqp::detect_breakpoints(mix, grid, opts);
        },
        py::arg("mixture"), py::arg("eps_grid"), py::arg("tol") = 1e-10);

    m.def("bayes_classifier", &classifiers::bayes_classifier, py::arg("mixture"));
    py::class_<classifiers::AdversarialOptimum>(m, "AdversarialOptimum")
        .def_readonly("classifier", &classifiers::AdversarialOptimum::classifier)
        .def_readonly("qp", &classifiers::AdversarialOptimum::qp)
        .def_readonly("trivial", &classifiers::AdversarialOptimum::trivial);
    m.def(
        "adversarial_classifier",
        [](const model::GaussianMixture& mix, double eps, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return classifiers::adversarial_classifier(mix, model::ThreatModel(eps), opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10);

    py::class_<classifiers::NoTradeoffReport>(m, "NoTradeoffReport")
        .def_readonly("equivalent", &classifiers::NoTradeoffReport::equivalent)
        .def_readonly("witness_c", &classifiers::NoTradeoffReport::witness_c)
        .def_readonly("violating_indices", &classifiers::NoTradeoffReport::violating_indices);
    m.def(
        "no_tradeoff_check",
        [](const model::GaussianMixture& mix, double eps) {
            return classifiers::no_tradeoff_check(mix, model::ThreatModel(eps));
        },
        py::arg("mixture"), py::arg("epsilon"));
    m.def("linear_loss_tradeoff_check", &classifiers::linear_loss_tradeoff_check, py::arg("mu"),
          py::arg("epsilon"), py::arg("p"));

    py::class_<risk::RiskReport>(m, "RiskReport")
        .def_readonly("natural_risk", &risk::RiskReport::natural_risk)
        .def_readonly("adversarial_risk", &risk::RiskReport::adversarial_risk)
        .def_readonly("plus_term", &risk::RiskReport::plus_term)
        .def_readonly("minus_term", &risk::RiskReport::minus_term);
    m.def(
        "adversarial_risk",
        [](const model::LinearClassifier& clf, const model::GaussianMixture& mix, double eps) {
            return risk::adversarial_risk(clf, mix, model::ThreatModel(eps));
        },
        py::arg("classifier"), py::arg("mixture"), py::arg("epsilon"));
    m.def("natural_risk", &risk::natural_risk, py::arg("classifier"), py::arg("mixture"));
    m.def(
        "gap",
        [](const model::GaussianMixture& mix, double eps, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return risk::gap(mix, model::ThreatModel(eps), opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10);

    py::enum_<analysis::Regime>(m, "Regime")
        .value("standard", analysis::Regime::standard)
        .value("surprising", analysis::Regime::surprising);
    py::class_<analysis::RegimeParams>(m, "RegimeParams")
        .def_readonly("c", &analysis::RegimeParams::c)
        .def_readonly("d", &analysis::RegimeParams::d)
        .def_readonly("ratio", &analysis::RegimeParams::ratio);
    py::class_<analysis::RegimeReport>(m, "RegimeReport")
        .def_readonly("label", &analysis::RegimeReport::label)
        .def_readonly("near_boundary", &analysis::RegimeReport::near_boundary)
        .def_readonly("params", &analysis::RegimeReport::params)
        .def_readonly("condition_lhs", &analysis::RegimeReport::condition_lhs)
        .def_readonly("condition_rhs", &analysis::RegimeReport::condition_rhs);

    m.def(
        "regime_params",
        [](const model::GaussianMixture& mix, double eps, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return analysis::regime_params(mix, model::ThreatModel(eps), opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10);
    m.def(
        "risk_regime",
        [](const model::GaussianMixture& mix, double eps, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return analysis::risk_regime(mix, model::ThreatModel(eps), opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10);
    m.def(
        "gap_regime",
        [](const model::GaussianMixture& mix, double eps, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return analysis::gap_regime(mix, model::ThreatModel(eps), opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("tol") = 1e-10);

    py::enum_<analysis::RegimeQuantity>(m, "RegimeQuantity")
        .value("risk", analysis::RegimeQuantity::risk)
        .value("gap", analysis::RegimeQuantity::gap);
    py::class_<analysis::ExtremaSummary>(m, "ExtremaSummary")
        .def_readonly("interior_maxima", &analysis::ExtremaSummary::interior_maxima)
        .def_readonly("maxima_locations", &analysis::ExtremaSummary::maxima_locations)
        .def_readonly("local_min_at_half", &analysis::ExtremaSummary::local_min_at_half)
        .def_readonly("local_max_at_half", &analysis::ExtremaSummary::local_max_at_half)
        .def_readonly("symmetry_defect", &analysis::ExtremaSummary::symmetry_defect);
    m.def(
        "verify_regime_numerically",
        [](const model::GaussianMixture& mix, double eps, const model::Vector& pi_grid,
           analysis::RegimeQuantity which, double tol) {
            boxqp::SolveOptions opts;
            opts.tol = tol;
            return analysis::verify_regime_numerically(mix, model::ThreatModel(eps), pi_grid,
                                                       which, opts);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("pi_grid"), py::arg("which"),
        py::arg("tol") = 1e-10);

    py::class_<analysis::GapBoundTerms>(m, "GapBoundTerms")
        .def_readonly("C_sigma_mu", &analysis::GapBoundTerms::C_sigma_mu)
        .def_readonly("eps_limit_A", &analysis::GapBoundTerms::eps_limit_A)
        .def_readonly("eps_limit_B", &analysis::GapBoundTerms::eps_limit_B);
    py::enum_<analysis::UpperBoundForm>(m, "UpperBoundForm")
        .value("phi_difference", analysis::UpperBoundForm::phi_difference)
        .value("exponential", analysis::UpperBoundForm::exponential)
        .value("precise", analysis::UpperBoundForm::precise);
    m.def("gap_bound_terms", &analysis::gap_bound_terms, py::arg("mixture"));
    m.def(
        "gap_upper_bound",
        [](const model::GaussianMixture& mix, double eps, analysis::UpperBoundForm form) {
            return analysis::gap_upper_bound(mix, model::ThreatModel(eps), form);
        },
        py::arg("mixture"), py::arg("epsilon"), py::arg("form"));
    m.def(
        "gap_lower_bound",
        [](const model::GaussianMixture& mix, double eps) {
            return analysis::gap_lower_bound(mix, model::ThreatModel(eps));
        },
        py::arg("mixture"), py::arg("epsilon"));

    py::class_<linearloss::LinearLossConstraint>(m, "LinearLossConstraint")
        .def(py::init<double, double>(), py::arg("W"), py::arg("p"))
        .def_readonly("W", &linearloss::LinearLossConstraint::W)
        .def_readonly("p", &linearloss::LinearLossConstraint::p);
    py::class_<linearloss::SampleSet>(m, "SampleSet")
        .def_static("from_data", &linearloss::SampleSet::from_data, py::arg("x"), py::arg("y"))
        .def_readonly("x", &linearloss::SampleSet::x)
        .def_readonly("y", &linearloss::SampleSet::y)
        .def_readonly("mu_hat", &linearloss::SampleSet::mu_hat)
        .def_readonly("sup_norm_bound", &linearloss::SampleSet::sup_norm_bound)
        .def_property_readonly("n", &linearloss::SampleSet::n);
    m.def("closed_form_weights", &linearloss::closed_form_weights, py::arg("mu"),
          py::arg("constraint"), py::arg("epsilon"));
    m.def("linear_loss_risk", &linearloss::linear_loss_risk, py::arg("w"), py::arg("mu"),
          py::arg("epsilon"));
    m.def("train_finite_sample", &linearloss::train_finite_sample, py::arg("samples"),
          py::arg("constraint"), py::arg("epsilon"));

    py::enum_<linearloss::HoeffdingCase>(m, "HoeffdingCase")
        .value("p1_equal", linearloss::HoeffdingCase::p1_equal)
        .value("p1_gap", linearloss::HoeffdingCase::p1_gap)
        .value("pinf_equal", linearloss::HoeffdingCase::pinf_equal)
        .value("pinf_gap", linearloss::HoeffdingCase::pinf_gap);
    py::class_<linearloss::HoeffdingReport>(m, "HoeffdingReport")
        .def_readonly("which", &linearloss::HoeffdingReport::which)
        .def_readonly("bound", &linearloss::HoeffdingReport::bound)
        .def_readonly("raw_bound", &linearloss::HoeffdingReport::raw_bound)
        .def_readonly("r", &linearloss::HoeffdingReport::r)
        .def_readonly("tau", &linearloss::HoeffdingReport::tau)
        .def_readonly("tied_maxima", &linearloss::HoeffdingReport::tied_maxima);
    m.def("hoeffding_bound", &linearloss::hoeffding_bound, py::arg("mu"), py::arg("epsilon"),
          py::arg("n"), py::arg("A"), py::arg("case"), py::arg("j") = -1);

    py::class_<montecarlo::RngSpec>(m, "RngSpec")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id") = 0)
        .def_readwrite("seed", &montecarlo::RngSpec::seed)
        .def_readwrite("stream_id", &montecarlo::RngSpec::stream_id);
    py::class_<montecarlo::EmpiricalRisk>(m, "EmpiricalRisk")
        .def_readonly("estimate", &montecarlo::EmpiricalRisk::estimate)
        .def_readonly("std_error", &montecarlo::EmpiricalRisk::std_error)
        .def_readonly("n", &montecarlo::EmpiricalRisk::n);
    m.def("sample", &montecarlo::sample, py::arg("mixture"), py::arg("n"), py::arg("rng"));
    m.def(
        "empirical_adversarial_risk",
        [](const model::LinearClassifier& clf, const model::GaussianMixture& mix, double eps,
           long n, const montecarlo::RngSpec& rng) {
            return montecarlo::empirical_adversarial_risk(clf, mix, model::ThreatModel(eps), n,
                                                          rng);
        },
        py::arg("classifier"), py::arg("mixture"), py::arg("epsilon"), py::arg("n"),
        py::arg("rng"));

    m.def("preset_names", &experiment::preset_names);
    m.def(
        "run_preset",
        [](const std::string& name, const std::string& out_dir) {
            auto config = experiment::preset(name);
            config.out_dir = out_dir;
            auto result = experiment::run(config);
            std::vector<std::string> artifacts;
            for (const auto& p : result.artifacts) artifacts.push_back(p.string());
            return py::make_tuple(artifacts, result.summary);
        },
        py::arg("name"), py::arg("out_dir"));
}
