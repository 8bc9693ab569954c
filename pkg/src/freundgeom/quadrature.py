"""One-dimensional rules for exponentially decaying integrands on [0, inf)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .params import DomainError

TRANSFORMS = ("exp-substitution", "direct-truncation")


class QuadratureError(RuntimeError):
    """Raised when the estimated relative quadrature error exceeds its bound."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Tensor-product Gauss-Legendre settings.

    ``exp-substitution`` maps ``t = -(stretch / rate) * log(u)`` onto ``u`` in (0, 1);
    with ``stretch`` well above 1 the mapped integrand vanishes smoothly at
    ``u = 0`` even when it carries polynomial factors in ``t``.
    ``direct-truncation`` integrates ``[0, -log(1 - truncation_quantile) / rate]``.
    """

    nodes_per_axis: int = 64
    truncation_quantile: float = 1.0 - 1e-14
    transform: str = "exp-substitution"
    stretch: float = 8.0
    max_rel_error: float = 1e-5

    def __post_init__(self) -> None:
        if int(self.nodes_per_axis) != self.nodes_per_axis or self.nodes_per_axis < 16:
            raise DomainError("nodes_per_axis must be an integer >= 16")
        if not (1.0 - 1e-10 <= self.truncation_quantile < 1.0):
            raise DomainError("truncation_quantile must lie in [1 - 1e-10, 1)")
        if self.transform not in TRANSFORMS:
            raise DomainError(f"unknown transform {self.transform!r}")
        if not self.stretch >= 1.0:
            raise DomainError("stretch must be >= 1")

    def with_nodes(self, n: int) -> "QuadratureConfig":
        return QuadratureConfig(
            nodes_per_axis=n,
            truncation_quantile=self.truncation_quantile,
            transform=self.transform,
            stretch=self.stretch,
            max_rel_error=self.max_rel_error,
        )


@lru_cache(maxsize=32)
def _unit_legendre(n: int):
    z, w = np.polynomial.legendre.leggauss(n)
    return (z + 1.0) / 2.0, w / 2.0


def half_line_rule(rate: float, config: QuadratureConfig, n: int | None = None):
    """Nodes and weights for ``int_0^inf h(t) dt`` where h decays like ``e^{-rate t}``."""
    if not rate > 0.0:
        raise DomainError(f"decay rate must be positive, got {rate!r}")
    u, w = _unit_legendre(int(n or config.nodes_per_axis))
    if config.transform == "exp-substitution":
        scale = config.stretch / rate
        return -scale * np.log(u), scale * w / u
    length = -np.log1p(-config.truncation_quantile) / rate
    return length * u, length * w


def unit_interval_log_rule(exponent: float, config: QuadratureConfig, n: int | None = None):
    """Logarithms of nodes and weights on (0, 1) for integrands like ``r^(exponent - 1)`` at 0.

    Power grading ``r = z^q`` with ``q = stretch / exponent`` removes the
    endpoint singularity (including logarithmic factors).  Returning logs keeps
    strongly graded nodes from underflowing.
    """
    if not exponent > 0.0:
        raise DomainError(f"singularity exponent must be positive, got {exponent!r}")
    z, w = _unit_legendre(int(n or config.nodes_per_axis))
    q = max(1.0, config.stretch / exponent)
    lz = np.log(z)
    return q * lz, np.log(q) + (q - 1.0) * lz + np.log(w)


def unit_interval_rule(exponent: float, config: QuadratureConfig, n: int | None = None):
    """Nodes and weights on (0, 1); see :func:`unit_interval_log_rule`."""
    lr, lw = unit_interval_log_rule(exponent, config, n)
    return np.exp(lr), np.exp(lw)
