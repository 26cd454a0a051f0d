"""Elliptic special functions and numerical certification of the integral-operator identities."""

from ._ellint import (
    ConfigError,
    DomainError,
    act,
    elliptic_gamma,
    jacobi_theta,
    qpochhammer,
    run,
    suites,
    theta,
    word_gate,
    word_identity,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "act",
    "elliptic_gamma",
    "jacobi_theta",
    "qpochhammer",
    "run",
    "suites",
    "theta",
    "word_gate",
    "word_identity",
]
