"""Optimal standard/adversarial linear classification for binary Gaussian mixtures.

Thin Python surface over the C++ core: mixture/threat model types, the box-QP
solver for z*, exact closed-form risks, regime classification under class
imbalance, gap bounds, linear-loss training, and the Monte Carlo oracle.
"""

from ._robustmix import (  # noqa: F401
    Activity,
    AdversarialOptimum,
    ApplicabilityError,
    BoxQpSolution,
    BreakpointBracket,
    ConvergenceError,
    DomainError,
    EmpiricalRisk,
    ExtremaSummary,
    GapBoundTerms,
    GaussianMixture,
    HoeffdingCase,
    HoeffdingReport,
    LinearClassifier,
    LinearLossConstraint,
    NoTradeoffReport,
    NotSpdError,
    Regime,
    RegimeParams,
    RegimeQuantity,
    RegimeReport,
    RiskReport,
    RngSpec,
    SampleSet,
    ShapeError,
    ThreatModel,
    UnsupportedError,
    UpperBoundForm,
    adversarial_classifier,
    adversarial_risk,
    bayes_classifier,
    closed_form_weights,
    detect_breakpoints,
    diagonal_zstar,
    empirical_adversarial_risk,
    gap,
    gap_bound_terms,
    gap_lower_bound,
    gap_regime,
    gap_upper_bound,
    grid_oracle_zstar,
    hoeffding_bound,
    linear_loss_risk,
    linear_loss_tradeoff_check,
    natural_risk,
    no_tradeoff_check,
    nontrivial_budget,
    preset_names,
    regime_params,
    risk_regime,
    run_preset,
    sample,
    solve_zstar,
    std_normal_cdf,
    std_normal_pdf,
    train_finite_sample,
    validate_mixture,
    verify_regime_numerically,
)

__version__ = "0.1.0"
