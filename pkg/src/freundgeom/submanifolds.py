"""Two- and three-parameter submanifolds of the Freund manifold.

* F1: independence, ``beta1 = alpha1`` and ``beta2 = alpha2``.
* F2: exchangeable case ``alpha1 = alpha2``, ``beta1 = beta2``; an
  exponential family with potential ``psi = -log(alpha1 beta1)``.
* F3: ``beta1 = beta2 = alpha1 + alpha2``.
* F4: the absolutely continuous bivariate exponential (ACBED) with
  parameters ``(lambda1, lambda12, lambda2)``, and its exponential-family
  slice ``lambda1 = lambda2``.

Every point type carries its embedding into the ambient 4-manifold, so each
closed form below can be checked against the pullback of the ambient
geometry (:func:`induced_geometry`) and against score quadrature through
the wedge families exported here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry, tensors
from .oracle import LogLinearWedge, WedgeFamily
from .params import DomainError, FreundParams, check_alpha, check_positive
from .tensors import FiniteDiffConfig


# ---------------------------------------------------------------- points


@dataclass(frozen=True)
class F1Point:
    alpha1: float
    alpha2: float

    def __post_init__(self) -> None:
        check_positive("alpha1", self.alpha1)
        check_positive("alpha2", self.alpha2)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.alpha2], dtype=float)

    def embed(self) -> FreundParams:
        return FreundParams(self.alpha1, self.alpha1, self.alpha2, self.alpha2)


@dataclass(frozen=True)
class F2Point:
    alpha1: float
    beta1: float

    def __post_init__(self) -> None:
        check_positive("alpha1", self.alpha1)
        check_positive("beta1", self.beta1)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.beta1], dtype=float)

    def embed(self) -> FreundParams:
        return FreundParams(self.alpha1, self.beta1, self.alpha1, self.beta1)


@dataclass(frozen=True)
class F2DualPoint:
    """Mixture-affine coordinates ``eta_i = -1/theta_i`` of F2."""

    eta1: float
    eta2: float

    def __post_init__(self) -> None:
        for name, v in (("eta1", self.eta1), ("eta2", self.eta2)):
            if not (np.isfinite(v) and v < 0.0):
                raise DomainError(f"{name} must be finite and negative, got {v!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.eta1, self.eta2], dtype=float)


@dataclass(frozen=True)
class F3Point:
    alpha1: float
    alpha2: float

    def __post_init__(self) -> None:
        check_positive("alpha1", self.alpha1)
        check_positive("alpha2", self.alpha2)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.alpha2], dtype=float)

    def embed(self) -> FreundParams:
        s = self.alpha1 + self.alpha2
        return FreundParams(self.alpha1, s, self.alpha2, s)


@dataclass(frozen=True)
class ACBEDPoint:
    lambda1: float
    lambda12: float
    lambda2: float

    def __post_init__(self) -> None:
        check_positive("lambda1", self.lambda1)
        check_positive("lambda12", self.lambda12)
        check_positive("lambda2", self.lambda2)

    @property
    def lam(self) -> float:
        return self.lambda1 + self.lambda2 + self.lambda12

    def as_array(self) -> np.ndarray:
        return np.array([self.lambda1, self.lambda12, self.lambda2], dtype=float)

    def embed(self) -> FreundParams:
        return acbed_to_freund(self)


@dataclass(frozen=True)
class PotentialFunction:
    value: float
    gradient: np.ndarray
    hessian: np.ndarray


# ------------------------------------------------- embeddings and pullbacks


@dataclass(frozen=True)
class Embedding:
    """Smooth map ``q -> x`` into the Freund coordinates with first and second derivatives.

    ``jacobian(q)[i, a] = dx^i/dq^a`` and ``hessian(q)[i, a, b] = d^2 x^i/dq^a dq^b``.
    """

    name: str
    dim: int
    embed: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]


def _constant(mat):
    mat = np.asarray(mat, dtype=float)
    return lambda q: mat.copy()


F1_EMBEDDING = Embedding(
    "F1",
    2,
    lambda q: np.array([q[0], q[0], q[1], q[1]], dtype=float),
    _constant([[1, 0], [1, 0], [0, 1], [0, 1]]),
    _constant(np.zeros((4, 2, 2))),
)

F2_EMBEDDING = Embedding(
    "F2",
    2,
    lambda q: np.array([q[0], q[1], q[0], q[1]], dtype=float),
    _constant([[1, 0], [0, 1], [1, 0], [0, 1]]),
    _constant(np.zeros((4, 2, 2))),
)

F3_EMBEDDING = Embedding(
    "F3",
    2,
    lambda q: np.array([q[0], q[0] + q[1], q[1], q[0] + q[1]], dtype=float),
    _constant([[1, 0], [1, 1], [0, 1], [1, 1]]),
    _constant(np.zeros((4, 2, 2))),
)


def _acbed_embed(q):
    l1, l12, l2 = q
    m = l1 + l2
    return np.array([l1 + l1 * l12 / m, l1 + l12, l2 + l2 * l12 / m, l2 + l12], dtype=float)


def _acbed_jacobian(q):
    l1, l12, l2 = q
    m = l1 + l2
    m2 = m * m
    return np.array(
        [
            [1 + l12 * l2 / m2, l1 / m, -l1 * l12 / m2],
            [1.0, 1.0, 0.0],
            [-l2 * l12 / m2, l2 / m, 1 + l12 * l1 / m2],
            [0.0, 1.0, 1.0],
        ]
    )


def _acbed_hessian(q):
    l1, l12, l2 = q
    m = l1 + l2
    m2, m3 = m * m, m**3
    h = np.zeros((4, 3, 3))
    # alpha1 = l1 + l1 l12 / m; coordinates ordered (l1, l12, l2)
    a1 = [
        [-2 * l12 * l2 / m3, l2 / m2, l12 * (l1 - l2) / m3],
        [l2 / m2, 0.0, -l1 / m2],
        [l12 * (l1 - l2) / m3, -l1 / m2, 2 * l1 * l12 / m3],
    ]
    # alpha2 is alpha1 with l1 and l2 exchanged
    a2 = [
        [2 * l2 * l12 / m3, -l2 / m2, l12 * (l2 - l1) / m3],
        [-l2 / m2, 0.0, l1 / m2],
        [l12 * (l2 - l1) / m3, l1 / m2, -2 * l12 * l1 / m3],
    ]
    h[0] = a1
    h[2] = a2
    return h


ACBED_EMBEDDING = Embedding("F4", 3, _acbed_embed, _acbed_jacobian, _acbed_hessian)


def _sym_embed(q):
    a = q[0] + q[1] / 2.0
    b = q[0] + q[1]
    return np.array([a, b, a, b], dtype=float)


ACBED_SYMMETRIC_EMBEDDING = Embedding(
    "F4-symmetric",
    2,
    _sym_embed,
    _constant([[1, 0.5], [1, 1], [1, 0.5], [1, 1]]),
    _constant(np.zeros((4, 2, 2))),
)


@dataclass(frozen=True)
class InducedGeometry:
    metric: np.ndarray
    christoffel_lower: np.ndarray
    christoffel_upper: np.ndarray


def induced_geometry(emb: Embedding, q, alpha: float) -> InducedGeometry:
    """Metric and alpha-connection pulled back from the ambient closed forms.

    For a statistical submodel the induced connection coincides with the
    submodel's own alpha-connection, so this is an independent route to
    every submanifold connection.
    """
    q = np.asarray(q, dtype=float)
    x = FreundParams.from_sequence(emb.embed(q))
    jac, hess = emb.jacobian(q), emb.hessian(q)
    g_amb = geometry.fisher_metric(x)
    g = tensors.pullback_metric(jac, g_amb)
    low = tensors.induced_christoffel_lower(jac, hess, g_amb, geometry.christoffel_lower(x, alpha))
    return InducedGeometry(g, low, tensors.raise_christoffel(low, g))


def induced_curvature(emb: Embedding, q, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()):
    """All-lower curvature of the induced connection by finite differences."""
    al = check_alpha(alpha)
    return tensors.curvature_by_differences(
        lambda y: induced_geometry(emb, y, al).christoffel_upper,
        lambda y: induced_geometry(emb, y, al).metric,
        np.asarray(q, dtype=float),
        fd,
    )


def curvature_from_upper(
    gamma_upper_fn: Callable[[np.ndarray], np.ndarray],
    metric_fn: Callable[[np.ndarray], np.ndarray],
    q,
    fd: FiniteDiffConfig = FiniteDiffConfig(),
):
    """Curvature of a closed-form connection given as callables of the coordinates."""
    return tensors.curvature_by_differences(gamma_upper_fn, metric_fn, np.asarray(q, dtype=float), fd)


# ---------------------------------------------------------- wedge families

F1_FAMILY = WedgeFamily(
    "F1",
    ("alpha1", "alpha2"),
    (
        LogLinearWedge(True, ((1, (1, 0)), (1, (0, 1))), (1, 0), (0, 1)),
        LogLinearWedge(False, ((1, (1, 0)), (1, (0, 1))), (1, 0), (0, 1)),
    ),
)

F2_FAMILY = WedgeFamily(
    "F2",
    ("alpha1", "beta1"),
    (
        LogLinearWedge(True, ((1, (1, 0)), (1, (0, 1))), (2, -1), (0, 1)),
        LogLinearWedge(False, ((1, (1, 0)), (1, (0, 1))), (0, 1), (2, -1)),
    ),
)

F3_FAMILY = WedgeFamily(
    "F3",
    ("alpha1", "alpha2"),
    (
        LogLinearWedge(True, ((1, (1, 0)), (1, (1, 1))), (0, 0), (1, 1)),
        LogLinearWedge(False, ((1, (0, 1)), (1, (1, 1))), (1, 1), (0, 0)),
    ),
)

# coordinates (lambda1, lambda12, lambda2)
ACBED_FAMILY = WedgeFamily(
    "F4",
    ("lambda1", "lambda12", "lambda2"),
    (
        LogLinearWedge(
            True,
            ((1, (1, 0, 0)), (1, (1, 1, 1)), (1, (0, 1, 1)), (-1, (1, 0, 1))),
            (1, 0, 0),
            (0, 1, 1),
        ),
        LogLinearWedge(
            False,
            ((1, (0, 0, 1)), (1, (1, 1, 1)), (1, (1, 1, 0)), (-1, (1, 0, 1))),
            (1, 1, 0),
            (0, 0, 1),
        ),
    ),
)

ACBED_SYMMETRIC_FAMILY = WedgeFamily(
    "F4-symmetric",
    ("lambda1", "lambda12"),
    (
        LogLinearWedge(True, ((1, (2, 1)), (1, (1, 1))), (1, 0), (1, 1), const=-np.log(2.0)),
        LogLinearWedge(False, ((1, (2, 1)), (1, (1, 1))), (1, 1), (1, 0), const=-np.log(2.0)),
    ),
)


# ---------------------------------------------------------------------- F1


def f1_metric(p: F1Point) -> np.ndarray:
    return np.diag([1.0 / p.alpha1**2, 1.0 / p.alpha2**2])


def f1_connection(p: F1Point, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """``(gamma_lower, gamma_upper)``; only the pure diagonal components are nonzero."""
    al = check_alpha(alpha)
    low = np.zeros((2, 2, 2))
    up = np.zeros((2, 2, 2))
    for i, a in enumerate((p.alpha1, p.alpha2)):
        low[i, i, i] = (al - 1.0) / a**3
        up[i, i, i] = (al - 1.0) / a
    return low, up


def f1_curvature(p: F1Point, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()) -> np.ndarray:
    al = check_alpha(alpha)
    return curvature_from_upper(
        lambda q: f1_connection(F1Point(*q), al)[1], lambda q: f1_metric(F1Point(*q)), p.as_array(), fd
    )


# ---------------------------------------------------------------------- F2


def f2_metric(p: F2Point) -> np.ndarray:
    return np.diag([1.0 / p.alpha1**2, 1.0 / p.beta1**2])


def f2_potential(p: F2Point) -> PotentialFunction:
    """``psi = -log(alpha1 beta1)`` with its gradient and Hessian."""
    a, b = p.alpha1, p.beta1
    return PotentialFunction(
        value=float(-np.log(a * b)),
        gradient=np.array([-1.0 / a, -1.0 / b]),
        hessian=np.diag([1.0 / a**2, 1.0 / b**2]),
    )


def f2_dual_potential(p: F2Point) -> float:
    """Legendre dual ``log(alpha1 beta1) - 2`` of the potential."""
    return float(np.log(p.alpha1 * p.beta1) - 2.0)


def f2_to_dual(p: F2Point) -> F2DualPoint:
    return F2DualPoint(-1.0 / p.alpha1, -1.0 / p.beta1)


def f2_from_dual(d: F2DualPoint) -> F2Point:
    return F2Point(-1.0 / d.eta1, -1.0 / d.eta2)


def f2_mixed_metric(alpha1: float, eta2: float) -> np.ndarray:
    """Fisher metric in the mixed coordinates ``(alpha1, eta2)``.

    Obtained by transforming the natural-coordinate metric; it is
    ``diag(1/alpha1^2, 1/eta2^2)`` and positive definite.
    """
    if not (np.isfinite(eta2) and eta2 < 0.0):
        raise DomainError(f"eta2 must be finite and negative, got {eta2!r}")
    p = F2Point(alpha1, -1.0 / eta2)
    jac = np.diag([1.0, 1.0 / eta2**2])  # d(alpha1, beta1)/d(alpha1, eta2)
    return jac.T @ f2_metric(p) @ jac


def f2_connection(p: F2Point, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Connection in natural coordinates, ``(1 - alpha)/2`` times the third derivatives of psi."""
    al = check_alpha(alpha)
    low = np.zeros((2, 2, 2))
    up = np.zeros((2, 2, 2))
    for i, a in enumerate((p.alpha1, p.beta1)):
        low[i, i, i] = (al - 1.0) / a**3
        up[i, i, i] = (al - 1.0) / a
    return low, up


def f2_connection_dual(d: F2DualPoint, alpha: float) -> np.ndarray:
    """``Gamma^k_{ij}`` in the eta coordinates, by transforming the natural-coordinate symbols."""
    p = f2_from_dual(d)
    eta = d.as_array()
    jac = np.diag(1.0 / eta**2)  # theta = -1/eta
    hess = np.zeros((2, 2, 2))
    hess[0, 0, 0] = -2.0 / eta[0] ** 3
    hess[1, 1, 1] = -2.0 / eta[1] ** 3
    return tensors.change_coordinates_upper(f2_connection(p, alpha)[1], jac, hess)


def f2_covariance(p: F2Point) -> float:
    return 0.25 * (1.0 / p.alpha1**2 - 1.0 / p.beta1**2)


def f2_correlation(p: F2Point) -> float:
    a2, b2 = p.alpha1**2, p.beta1**2
    return 1.0 - 4.0 * a2 / (3.0 * a2 + b2)


# ---------------------------------------------------------------------- F3


def f3_metric(p: F3Point) -> np.ndarray:
    a1, a2 = p.alpha1, p.alpha2
    s2 = (a1 + a2) ** 2
    off = 1.0 / s2
    return np.array([[(a2 + 2 * a1) / (a1 * s2), off], [off, (a1 + 2 * a2) / (a2 * s2)]])


def f3_connection(p: F3Point, alpha: float) -> np.ndarray:
    """``Gamma^k_{ij}`` as ``out[i, j, k]``.

    Besides the five commonly tabulated symbols this includes
    ``Gamma^2_{12} = (alpha - 1) / (2 (alpha1 + alpha2))``, which is nonzero
    and needed for the connection to be flat.
    """
    a1, a2 = p.alpha1, p.alpha2
    s = a1 + a2
    al = check_alpha(alpha)
    up = np.zeros((2, 2, 2))
    up[0, 0, 0] = 0.5 * (-(1 + al) / a1 + (3 * al - 1) / s)
    up[0, 1, 0] = up[1, 0, 0] = (al - 1) / (2 * s)
    up[1, 1, 0] = (1 + al) * a1 / (2 * a2 * s)
    up[0, 0, 1] = (1 + al) * a2 / (2 * a1 * s)
    up[0, 1, 1] = up[1, 0, 1] = (al - 1) / (2 * s)
    up[1, 1, 1] = 0.5 * (-(1 + al) / a2 + (3 * al - 1) / s)
    return up


def f3_christoffel_lower(p: F3Point, alpha: float) -> np.ndarray:
    return tensors.lower_christoffel(f3_connection(p, alpha), f3_metric(p))


def f3_curvature(p: F3Point, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()) -> np.ndarray:
    al = check_alpha(alpha)
    return curvature_from_upper(
        lambda q: f3_connection(F3Point(*q), al), lambda q: f3_metric(F3Point(*q)), p.as_array(), fd
    )


def f3_covariance(p: F3Point) -> float:
    a1, a2 = p.alpha1, p.alpha2
    return (a1**2 + a1 * a2 + a2**2) / (a1 + a2) ** 4


def f3_correlation(p: F3Point) -> float:
    a1, a2 = p.alpha1, p.alpha2
    num = a1**2 + a1 * a2 + a2**2
    den = np.sqrt(2 * (a1 + a2) ** 2 - a1**2) * np.sqrt(2 * a1**2 + 4 * a1 * a2 + a2**2)
    return float(num / den)


# ------------------------------------------------------------------- ACBED


def acbed_to_freund(p: ACBEDPoint) -> FreundParams:
    return FreundParams.from_sequence(_acbed_embed(p.as_array()))


def acbed_density(p: ACBEDPoint, x, y):
    """Two-wedge ACBED density; the boundary ``x == y`` belongs to the ``y < x`` branch."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(y < 0):
        raise DomainError("x and y must be non-negative")
    l1, l12, l2, lam = p.lambda1, p.lambda12, p.lambda2, p.lam
    m = l1 + l2
    x, y = np.broadcast_arrays(x, y)
    lo = x < y
    out = np.empty(x.shape)
    out[lo] = l1 * lam * (l2 + l12) / m * np.exp(-l1 * x[lo] - (l2 + l12) * y[lo])
    out[~lo] = l2 * lam * (l1 + l12) / m * np.exp(-(l1 + l12) * x[~lo] - l2 * y[~lo])
    return float(out) if out.ndim == 0 else out


def acbed_metric(p: ACBEDPoint) -> np.ndarray:
    l1, l12, l2, lam = p.lambda1, p.lambda12, p.lambda2, p.lam
    m = l1 + l2
    u1, u2 = l1 + l12, l2 + l12
    il2 = 1.0 / lam**2
    g = np.empty((3, 3))
    g[0, 0] = l2 * (1 / l1 + m / u1**2) / m**2 + il2
    g[0, 1] = g[1, 0] = l2 / (m * u1**2) + il2
    g[0, 2] = g[2, 0] = -1.0 / m**2 + il2
    g[1, 1] = (l2 / u1**2 + l1 / u2**2) / m + il2
    g[1, 2] = g[2, 1] = l1 / (m * u2**2) + il2
    g[2, 2] = l1 * (1 / l2 + m / u2**2) / m**2 + il2
    return g


def acbed_connection(p: ACBEDPoint, alpha: float) -> InducedGeometry:
    """Metric and alpha-connection of F4, pulled back through the reparametrization."""
    return induced_geometry(ACBED_EMBEDDING, p.as_array(), alpha)


def acbed_curvature(p: ACBEDPoint, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()) -> np.ndarray:
    return induced_curvature(ACBED_EMBEDDING, p.as_array(), alpha, fd)


def acbed_covariance(p: ACBEDPoint) -> float:
    l1, l12, l2, lam = p.lambda1, p.lambda12, p.lambda2, p.lam
    m = l1 + l2
    u1, u2 = l1 + l12, l2 + l12
    return (m**2 * u1 * u2 - lam**2 * l1 * l2) / (lam**2 * m**2 * u1 * u2)


def acbed_correlation(p: ACBEDPoint) -> float:
    l1, l12, l2, lam = p.lambda1, p.lambda12, p.lambda2, p.lam
    m = l1 + l2
    u = {1: l1 + l12, 2: l2 + l12}
    lj = {1: l1, 2: l2}
    num = m**2 * u[1] * u[2] - lam**2 * l1 * l2
    den = 1.0
    for i, j in ((1, 2), (2, 1)):
        den *= m**2 * u[i] ** 2 + lj[j] * lam**2 * (lj[j] + 2 * lj[i])
    return float(num / np.sqrt(den))


def acbed_marginals(p: ACBEDPoint, t):
    """``(f_X(t), f_Y(t))``: each a negative mixture of two exponentials."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be non-negative")
    l1, l12, l2, lam = p.lambda1, p.lambda12, p.lambda2, p.lam
    m = l1 + l2
    common = -l12 / m * lam * np.exp(-lam * t)
    fx = common + lam / m * (l1 + l12) * np.exp(-(l1 + l12) * t)
    fy = common + lam / m * (l2 + l12) * np.exp(-(l2 + l12) * t)
    if t.ndim == 0:
        return float(fx), float(fy)
    return fx, fy


@dataclass(frozen=True)
class SymmetricACBED:
    """Exponential-family geometry of the ``lambda1 = lambda2`` slice in ``(lambda1, lambda12)``."""

    lambda1: float
    lambda12: float
    alpha: float
    potential: PotentialFunction
    metric: np.ndarray
    christoffel_lower: np.ndarray
    christoffel_upper: np.ndarray
    dual_coords: np.ndarray
    dual_potential: float


def _sym_potential(l1: float, l12: float) -> PotentialFunction:
    u, v = l1 + l12, 2 * l1 + l12
    return PotentialFunction(
        value=float(np.log(2.0) - np.log(u) - np.log(v)),
        gradient=np.array([-1 / u - 2 / v, -1 / u - 1 / v]),
        hessian=np.array(
            [[1 / u**2 + 4 / v**2, 1 / u**2 + 2 / v**2], [1 / u**2 + 2 / v**2, 1 / u**2 + 1 / v**2]]
        ),
    )


def acbed_symmetric_family(l1: float, l12: float, alpha: float = 0.0) -> SymmetricACBED:
    """All alpha-geometry of the symmetric ACBED slice at ``(l1, l12)``.

    The dual coordinates are the gradient of the potential.
    """
    check_positive("lambda1", l1)
    check_positive("lambda12", l12)
    al = check_alpha(alpha)
    u, v = l1 + l12, 2 * l1 + l12
    pot = _sym_potential(l1, l12)
    c = 1.0 - al
    low = np.zeros((2, 2, 2))
    # (1 - alpha)/2 times third derivatives of psi; fully symmetric
    third = {
        (0, 0, 0): -1 / u**3 - 8 / v**3,
        (0, 0, 1): -1 / u**3 - 4 / v**3,
        (0, 1, 1): -1 / u**3 - 2 / v**3,
        (1, 1, 1): -1 / u**3 - 1 / v**3,
    }
    for (i, j, k), val in third.items():
        for perm in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            low[perm] = c * val
    uv = u * v
    up = np.zeros((2, 2, 2))
    up[0, 0, 0] = (1 - al) / u + 4 * (al - 1) / v
    up[0, 1, 0] = up[1, 0, 0] = (al - 1) * l12 / uv
    up[1, 1, 0] = -(al - 1) * l1 / uv
    up[0, 0, 1] = -2 * (al - 1) * l12 / uv
    up[0, 1, 1] = up[1, 0, 1] = 2 * (al - 1) * l1 / uv
    up[1, 1, 1] = 2 * (al - 1) / u + (1 - al) / v
    return SymmetricACBED(
        lambda1=float(l1),
        lambda12=float(l12),
        alpha=al,
        potential=pot,
        metric=pot.hessian.copy(),
        christoffel_lower=low,
        christoffel_upper=up,
        dual_coords=pot.gradient.copy(),
        dual_potential=float(-2.0 - np.log(2.0) + np.log(u) + np.log(v)),
    )


def acbed_symmetric_curvature(
    l1: float, l12: float, alpha: float, fd: FiniteDiffConfig = FiniteDiffConfig()
) -> np.ndarray:
    al = check_alpha(alpha)
    return curvature_from_upper(
        lambda q: acbed_symmetric_family(q[0], q[1], al).christoffel_upper,
        lambda q: acbed_symmetric_family(q[0], q[1], al).metric,
        np.array([l1, l12], dtype=float),
        fd,
    )
