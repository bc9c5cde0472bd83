"""Metric spans, frequency bounds and certified checks for exponential polynomials."""

from ._core import (
    CertificationError,
    ExpPolynomial,
    InputError,
    EvalOverflowError,
    RealSet,
    construct_vanishing,
    cover_bounds_nd,
    cover_count,
    cover_thresholds,
    disk_zero_bound,
    ensemble_csv,
    frequency_bound,
    khovanskii_C,
    level_crossings,
    metric_span,
    metric_span_nd_lower,
    resolution_measure,
    sublevel_set,
    sup_abs,
    verify_inequality,
)

__all__ = [
    "CertificationError",
    "ExpPolynomial",
    "InputError",
    "EvalOverflowError",
    "RealSet",
    "construct_vanishing",
    "cover_bounds_nd",
    "cover_count",
    "cover_thresholds",
    "disk_zero_bound",
    "ensemble_csv",
    "frequency_bound",
    "khovanskii_C",
    "level_crossings",
    "metric_span",
    "metric_span_nd_lower",
    "resolution_measure",
    "sublevel_set",
    "sup_abs",
    "verify_inequality",
]
