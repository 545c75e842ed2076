"""Semiring-generic circuits, formal polynomials and lower-bound certificates
for tropical (min/max-plus) dynamic programming."""

from tropbound.errors import (
    CircuitError,
    DomainError,
    ExplosionError,
    InvariantViolation,
    NoCanonicalForm,
    PreconditionError,
    RangeError,
    ToolkitError,
    UnlicensedTransfer,
)
from tropbound.polynomial import Polynomial, monomial
from tropbound.semiring import INF, NEG_INF, SemiringId

__version__ = "0.1.0"

__all__ = [
    "CircuitError",
    "DomainError",
    "ExplosionError",
    "INF",
    "InvariantViolation",
    "NEG_INF",
    "NoCanonicalForm",
    "Polynomial",
    "PreconditionError",
    "RangeError",
    "SemiringId",
    "ToolkitError",
    "UnlicensedTransfer",
    "monomial",
]
