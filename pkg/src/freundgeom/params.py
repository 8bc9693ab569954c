"""Parameter points of the Freund manifold and shared validation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

#: Smallest value accepted as "strictly positive".
POSITIVE_FLOOR = 1e-300
#: Relative distance below which alpha1 + alpha2 == beta_i is treated as degenerate.
DEGENERACY_RTOL = 1e-9

COORDINATE_LABELS = ("alpha1", "beta1", "alpha2", "beta2")


class DomainError(ValueError):
    """Raised when a parameter or argument lies outside its domain."""


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= POSITIVE_FLOOR:
        raise DomainError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_alpha(alpha: float) -> float:
    """Validate the connection index; any finite real is allowed."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    return alpha


def nearly_equal(a: float, b: float, rtol: float = DEGENERACY_RTOL) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


@dataclass(frozen=True)
class FreundParams:
    """A point ``(alpha1, beta1, alpha2, beta2)`` of the Freund 4-manifold.

    ``alpha_i`` are the failure rates while both components run; ``beta1``
    (``beta2``) is the rate of X (Y) once the other component has failed.
    """

    alpha1: float
    beta1: float
    alpha2: float
    beta2: float

    def __post_init__(self) -> None:
        for name in COORDINATE_LABELS:
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @classmethod
    def from_sequence(cls, values: Iterable[float]) -> "FreundParams":
        values = [float(v) for v in values]
        if len(values) != 4:
            raise DomainError(f"expected 4 parameters, got {len(values)}")
        return cls(*values)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.beta1, self.alpha2, self.beta2])

    @property
    def total_rate(self) -> float:
        """Rate ``alpha1 + alpha2`` of the first failure."""
        return self.alpha1 + self.alpha2

    @property
    def marginal_x_defined(self) -> bool:
        """False when ``alpha1 + alpha2 == beta1`` and the limit form is needed."""
        return not nearly_equal(self.total_rate, self.beta1)

    @property
    def marginal_y_defined(self) -> bool:
        return not nearly_equal(self.total_rate, self.beta2)


def as_params(p) -> FreundParams:
    """Coerce a FreundParams or a length-4 sequence."""
    if isinstance(p, FreundParams):
        return p
    return FreundParams.from_sequence(p)
