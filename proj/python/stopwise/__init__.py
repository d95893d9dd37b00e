"""Payoff curves and optimal thresholds for quality-based hiring rules."""

from ._stopwise import (
    ArgmaxReport,
    BernoulliBeta,
    Bracket,
    Model,
    SignViolation,
    SimReport,
    SweepPoint,
    SweepReport,
    ThresholdResult,
    ValueCurve,
    argmax_first,
    bernoulli_beta,
    classical_threshold,
    curve,
    discrete_derivative,
    empirical_argmax,
    exact_enumeration,
    exact_enumeration_curve,
    exponential_bracket,
    forward_diff,
    harmonic_bound_holds,
    harmonic_tail_from,
    normal_upper_bound,
    optimal_threshold,
    pareto_ratio_bound,
    permutation_threshold,
    prop3_identity_residual,
    prop3_identity_residual_exact,
    second_diff,
    sign_alternation_check,
    simulate,
    sweep_simulate,
    threshold,
    value_at,
)

__all__ = [
    "ArgmaxReport",
    "BernoulliBeta",
    "Bracket",
    "Model",
    "SignViolation",
    "SimReport",
    "SweepPoint",
    "SweepReport",
    "ThresholdResult",
    "ValueCurve",
    "argmax_first",
    "bernoulli_beta",
    "classical_threshold",
    "curve",
    "discrete_derivative",
    "empirical_argmax",
    "exact_enumeration",
    "exact_enumeration_curve",
    "exponential_bracket",
    "forward_diff",
    "harmonic_bound_holds",
    "harmonic_tail_from",
    "normal_upper_bound",
    "optimal_threshold",
    "pareto_ratio_bound",
    "permutation_threshold",
    "prop3_identity_residual",
    "prop3_identity_residual_exact",
    "second_diff",
    "sign_alternation_check",
    "simulate",
    "sweep_simulate",
    "threshold",
    "value_at",
]
