"""Independent numeric ground truth computed from the density alone.

Metrics and connections are integrated directly from the score functions
by quadrature; curvature is assembled from finite differences of the
connection.  None of the routines here read the closed-form tables.

Every family handled here has, on each wedge ``{x < y}`` and ``{y < x}``,
a log-density that is affine in the observation::

    log f = kappa(theta) - A(theta) x - B(theta) y,
    kappa(theta) = const + sum_m sign_m log(c_m . theta),
    A(theta) = a . theta,  B(theta) = b . theta,

so scores and log-density Hessians are available analytically.  The two
wedges are integrated separately in (min, gap) coordinates; the density
kink along the diagonal is never crossed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import geometry, tensors
from .params import FreundParams, as_params, check_alpha, check_positive
from .quadrature import QuadratureConfig, QuadratureError, half_line_rule
from .tensors import FiniteDiffConfig

__all__ = [
    "FiniteDiffConfig",
    "LogLinearWedge",
    "WedgeFamily",
    "FREUND",
    "QuadratureConfig",
    "QuadratureError",
    "expectation",
    "family_fisher_metric",
    "family_christoffel_lower",
    "family_score_mean",
    "fisher_metric_numeric",
    "christoffel_lower_numeric",
    "score_mean_numeric",
    "curvature_numeric",
]


@dataclass(frozen=True)
class LogLinearWedge:
    """One branch of a piecewise log-affine density (see module docstring)."""

    lower: bool  # True for the wedge {x < y}
    log_terms: tuple  # ((sign, coefficients), ...)
    x_coef: tuple
    y_coef: tuple
    const: float = 0.0

    def evaluate(self, theta: np.ndarray):
        kappa = self.const
        dk = np.zeros_like(theta)
        d2k = np.zeros((theta.size, theta.size))
        for sign, coef in self.log_terms:
            c = np.asarray(coef, dtype=float)
            lin = float(c @ theta)
            if not lin > 0.0:
                raise ValueError("log argument must stay positive")
            kappa += sign * np.log(lin)
            dk += sign * c / lin
            d2k -= sign * np.outer(c, c) / lin**2
        a = np.asarray(self.x_coef, dtype=float)
        b = np.asarray(self.y_coef, dtype=float)
        return kappa, dk, d2k, float(a @ theta), a, float(b @ theta), b


@dataclass(frozen=True)
class WedgeFamily:
    name: str
    labels: tuple
    wedges: tuple  # (LogLinearWedge for x<y, LogLinearWedge for y<x)

    @property
    def dim(self) -> int:
        return len(self.labels)


def _e(i, n=4):
    v = [0.0] * n
    v[i] = 1.0
    return tuple(v)


FREUND = WedgeFamily(
    name="freund",
    labels=("alpha1", "beta1", "alpha2", "beta2"),
    wedges=(
        LogLinearWedge(True, ((1, _e(0)), (1, _e(3))), (1.0, 0.0, 1.0, -1.0), _e(3)),
        LogLinearWedge(False, ((1, _e(2)), (1, _e(1))), _e(1), (1.0, -1.0, 1.0, 0.0)),
    ),
)


@dataclass
class _Nodes:
    x: np.ndarray
    y: np.ndarray
    weight: np.ndarray  # quadrature weight times density
    score: np.ndarray  # (dim, N)
    hess: np.ndarray  # (dim, dim, N)


def _nodes(family: WedgeFamily, theta: np.ndarray, config: QuadratureConfig, n: int) -> _Nodes:
    parts = []
    for wedge in family.wedges:
        kappa, dk, d2k, A, dA, B, dB = wedge.evaluate(theta)
        min_rate = A + B
        gap_rate = B if wedge.lower else A
        s, ws = half_line_rule(min_rate, config, n)
        t, wt = half_line_rule(gap_rate, config, n)
        S, T = np.meshgrid(s, t, indexing="ij")
        W = np.outer(ws, wt).ravel()
        S, T = S.ravel(), T.ravel()
        if wedge.lower:
            x, y = S, S + T
        else:
            x, y = S + T, S
        dens = np.exp(kappa - min_rate * S - gap_rate * T)
        score = dk[:, None] - dA[:, None] * x - dB[:, None] * y
        hess = np.broadcast_to(d2k[:, :, None], d2k.shape + (x.size,))
        parts.append((x, y, W * dens, score, hess))
    return _Nodes(
        x=np.concatenate([p[0] for p in parts]),
        y=np.concatenate([p[1] for p in parts]),
        weight=np.concatenate([p[2] for p in parts]),
        score=np.concatenate([p[3] for p in parts], axis=1),
        hess=np.concatenate([p[4] for p in parts], axis=2),
    )


def _with_error(compute: Callable[[_Nodes], tuple], family, theta, config, return_error):
    """Evaluate at n and n/2 nodes; error is relative to the integral of |integrand|."""
    value, mass = compute(_nodes(family, theta, config, config.nodes_per_axis))
    coarse, _ = compute(_nodes(family, theta, config, config.nodes_per_axis // 2))
    scale = np.maximum(mass, np.finfo(float).tiny)
    err = float(np.max(np.abs(value - coarse) / scale))
    if err > config.max_rel_error:
        raise QuadratureError(
            f"{family.name}: estimated relative quadrature error {err:.3e} "
            f"exceeds {config.max_rel_error:.1e}"
        )
    return (value, err) if return_error else value


def _theta(family: WedgeFamily, theta) -> np.ndarray:
    theta = np.asarray(
        theta.as_array() if isinstance(theta, FreundParams) else theta, dtype=float
    )
    if theta.shape != (family.dim,):
        raise ValueError(f"{family.name} expects {family.dim} coordinates")
    for label, v in zip(family.labels, theta):
        check_positive(label, v)
    return theta


def expectation(
    family: WedgeFamily,
    theta,
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
    config: QuadratureConfig = QuadratureConfig(),
    return_error: bool = False,
):
    """``E[fn(X, Y)]``; ``fn`` maps node arrays to an array with trailing node axis."""
    theta = _theta(family, theta)

    def compute(nd):
        vals = np.asarray(fn(nd.x, nd.y), dtype=float)
        return vals @ nd.weight, np.abs(vals) @ nd.weight

    return _with_error(compute, family, theta, config, return_error)


def family_fisher_metric(family, theta, config=QuadratureConfig(), return_error=False):
    """``E[d_i log f * d_j log f]`` by quadrature."""
    theta = _theta(family, theta)

    def compute(nd):
        S = nd.score
        return (
            np.einsum("in,jn,n->ij", S, S, nd.weight),
            np.einsum("in,jn,n->ij", np.abs(S), np.abs(S), nd.weight),
        )

    return _with_error(compute, family, theta, config, return_error)


def family_christoffel_lower(family, theta, alpha, config=QuadratureConfig(), return_error=False):
    """``E[(d_i d_j log f + (1 - alpha)/2 d_i log f d_j log f) d_k log f]``."""
    theta = _theta(family, theta)
    half = (1.0 - check_alpha(alpha)) / 2.0

    def compute(nd):
        S, H, w = nd.score, nd.hess, nd.weight
        inner = H + half * np.einsum("in,jn->ijn", S, S)
        return (
            np.einsum("ijn,kn,n->ijk", inner, S, w),
            np.einsum("ijn,kn,n->ijk", np.abs(inner), np.abs(S), w),
        )

    return _with_error(compute, family, theta, config, return_error)


def family_score_mean(family, theta, config=QuadratureConfig(), return_error=False):
    theta = _theta(family, theta)

    def compute(nd):
        return nd.score @ nd.weight, np.abs(nd.score) @ nd.weight

    return _with_error(compute, family, theta, config, return_error)


def fisher_metric_numeric(p: FreundParams, q: QuadratureConfig = QuadratureConfig(), return_error=False):
    return family_fisher_metric(FREUND, as_params(p), q, return_error)


def christoffel_lower_numeric(
    p: FreundParams, alpha: float, q: QuadratureConfig = QuadratureConfig(), return_error=False
):
    return family_christoffel_lower(FREUND, as_params(p), alpha, q, return_error)


def score_mean_numeric(p: FreundParams, q: QuadratureConfig = QuadratureConfig(), return_error=False):
    return family_score_mean(FREUND, as_params(p), q, return_error)


def curvature_numeric(p: FreundParams, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()) -> np.ndarray:
    """Curvature assembled from central differences of the closed-form Gamma^k_{ij}."""
    p = as_params(p)
    al = check_alpha(alpha)
    return tensors.curvature_by_differences(
        lambda x: geometry.christoffel_upper(x, al), geometry.fisher_metric, p.as_array(), fd
    )
