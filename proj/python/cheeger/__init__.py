"""Isoperimetric constants and functional inequality certificates on the real line."""

from ._cheeger import (
    ConfigError,
    DomainError,
    ExpressionError,
    HypothesisViolated,
    IntegrationError,
    Measure,
    UnsupportedMeasure,
    best_constant,
    cheeger,
    covariance,
    cp_sequence,
    hardy,
    isoperimetric_constant,
    kernel,
    lp_poincare,
    moment_comparison,
    run_config,
    t_norm,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "ExpressionError",
    "HypothesisViolated",
    "IntegrationError",
    "Measure",
    "UnsupportedMeasure",
    "best_constant",
    "cheeger",
    "covariance",
    "cp_sequence",
    "hardy",
    "isoperimetric_constant",
    "kernel",
    "lp_poincare",
    "moment_comparison",
    "run_config",
    "t_norm",
]
