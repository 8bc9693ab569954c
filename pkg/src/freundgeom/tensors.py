"""Coordinate-level tensor algebra shared by the closed forms and the oracles.

Index conventions used throughout the package (all indices 0-based):

* ``gamma_lower[i, j, k]`` is the lowered connection symbol Gamma_{ij,k}.
* ``gamma_upper[i, j, k]`` is Gamma^k_{ij}, so that
  ``gamma_lower[i, j, k] = sum_h g[k, h] * gamma_upper[i, j, h]``.
* ``R[i, j, k, l] = <R(d_i, d_j) d_k, d_l>`` with
  ``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``.
  In components::

      R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
      R_{ijkl}  = R^m_{ijk} g_{ml}

  With this convention a round sphere has ``R[0, 1, 1, 0] > 0``, so the
  sectional curvature of the plane (i, j) is ``R[i, j, j, i] / (g_ii g_jj - g_ij^2)``.
* Ricci: ``Ric[j, k] = sum_{i,l} g^{il} R[i, j, k, l]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .params import DomainError

FD_SCHEMES = ("central-2nd-order", "central-4th-order")


@dataclass(frozen=True)
class FiniteDiffConfig:
    """Step and stencil for parameter derivatives.

    The absolute step along coordinate m is ``step_relative * |x_m|``.
    """

    step_relative: float = 1e-4
    scheme: str = "central-4th-order"

    def __post_init__(self) -> None:
        if not 1e-8 <= self.step_relative <= 1e-2:
            raise DomainError(
                f"step_relative must lie in [1e-8, 1e-2], got {self.step_relative!r}"
            )
        if self.scheme not in FD_SCHEMES:
            raise DomainError(f"unknown finite-difference scheme {self.scheme!r}")


def partial_derivatives(
    fn: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    fd: FiniteDiffConfig = FiniteDiffConfig(),
) -> np.ndarray:
    """Central differences of an array-valued ``fn``; result has shape ``(n, *fn(x).shape)``."""
    x = np.asarray(x, dtype=float)
    out = []
    for m in range(x.size):
        h = fd.step_relative * abs(x[m])
        if not np.isfinite(h) or h <= 0.0 or x[m] - 2.0 * h == x[m]:
            raise DomainError(f"finite-difference step underflows at coordinate {m}")
        e = np.zeros_like(x)
        e[m] = h
        if fd.scheme == "central-2nd-order":
            d = (np.asarray(fn(x + e)) - np.asarray(fn(x - e))) / (2.0 * h)
        else:
            # grouped as differences so that constant components give exact zeros
            near = np.asarray(fn(x + e)) - np.asarray(fn(x - e))
            far = np.asarray(fn(x + 2 * e)) - np.asarray(fn(x - 2 * e))
            d = (8.0 * near - far) / (12.0 * h)
        out.append(d)
    return np.stack(out)


def lower_christoffel(gamma_upper: np.ndarray, g: np.ndarray) -> np.ndarray:
    return np.einsum("kh,ijh->ijk", g, gamma_upper)


def raise_christoffel(gamma_lower: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Solve ``gamma_lower[i, j, :] = g @ gamma_upper[i, j, :]`` for every (i, j)."""
    n = g.shape[0]
    rhs = gamma_lower.reshape(n * n, n).T
    return np.linalg.solve(g, rhs).T.reshape(n, n, n)


def curvature_from_connection(
    gamma_upper: np.ndarray, dgamma_upper: np.ndarray, g: np.ndarray
) -> np.ndarray:
    """All-lower curvature from Gamma^k_{ij} and its derivatives ``dgamma[m, i, j, k]``."""
    G = gamma_upper
    r_up = (
        np.einsum("ijkl->ijkl", dgamma_upper)
        - np.einsum("jikl->ijkl", dgamma_upper)
        + np.einsum("iml,jkm->ijkl", G, G)
        - np.einsum("jml,ikm->ijkl", G, G)
    )
    return np.einsum("ijkm,ml->ijkl", r_up, g)


def curvature_by_differences(
    gamma_upper_fn: Callable[[np.ndarray], np.ndarray],
    metric_fn: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    fd: FiniteDiffConfig = FiniteDiffConfig(),
) -> np.ndarray:
    """Curvature of a connection given only as a callable of the coordinates."""
    x = np.asarray(x, dtype=float)
    dgamma = partial_derivatives(gamma_upper_fn, x, fd)
    return curvature_from_connection(gamma_upper_fn(x), dgamma, metric_fn(x))


def expand_curvature(components: Mapping[tuple, float], n: int) -> np.ndarray:
    """Fill a full tensor from independent components using the pair symmetries.

    Uses R_ijkl = -R_jikl = -R_ijlk = R_klij.
    """
    R = np.zeros((n, n, n, n))
    for (i, j, k, l), v in components.items():
        for (a, b, c, d) in ((i, j, k, l), (k, l, i, j)):
            R[a, b, c, d] = v
            R[b, a, c, d] = -v
            R[a, b, d, c] = -v
            R[b, a, d, c] = v
    return R


def bianchi_residual(R: np.ndarray) -> np.ndarray:
    """First Bianchi sum R_ijkl + R_iklj + R_iljk (zero for a torsion-free connection)."""
    return R + np.einsum("iklj->ijkl", R) + np.einsum("iljk->ijkl", R)


def ricci_from_curvature(R: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    return np.einsum("il,ijkl->jk", g_inv, R)


def scalar_from_ricci(ric: np.ndarray, g_inv: np.ndarray) -> float:
    return float(np.einsum("jk,jk->", g_inv, ric))


def sectional_curvature(R: np.ndarray, g: np.ndarray, lam: int, mu: int) -> float:
    """Sectional curvature of the coordinate plane spanned by d_lam and d_mu."""
    return float(R[lam, mu, mu, lam] / (g[lam, lam] * g[mu, mu] - g[lam, mu] ** 2))


def pullback_metric(jac: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``J^T g J`` for an embedding with ``jac[i, a] = d x^i / d q^a``."""
    return jac.T @ g @ jac


def induced_christoffel_lower(
    jac: np.ndarray, hess: np.ndarray, g: np.ndarray, gamma_lower: np.ndarray
) -> np.ndarray:
    """Lowered connection induced on a submanifold.

    ``hess[i, a, b] = d^2 x^i / dq^a dq^b``.  For a statistical submodel this
    is exactly the alpha-connection of the submodel's own density.
    """
    return np.einsum("iab,ij,jc->abc", hess, g, jac) + np.einsum(
        "ia,jb,kc,ijk->abc", jac, jac, jac, gamma_lower
    )


def change_coordinates_upper(
    gamma_upper: np.ndarray, jac: np.ndarray, hess: np.ndarray
) -> np.ndarray:
    """Express Gamma^k_{ij} (old coordinates x) in new coordinates y.

    ``jac[k, a] = dx^k/dy^a`` and ``hess[k, a, b] = d^2 x^k / dy^a dy^b``,
    all evaluated at the same point.
    """
    inv = np.linalg.inv(jac)  # inv[c, k] = dy^c/dx^k
    inner = hess + np.einsum("ia,jb,ijk->kab", jac, jac, gamma_upper)
    return np.einsum("ck,kab->abc", inv, inner)


def relative_max_error(actual: np.ndarray, expected: np.ndarray, floor: float = 0.0) -> float:
    """Largest componentwise relative error over entries with ``|expected| > floor``."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    mask = np.abs(expected) > floor
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(actual[mask] - expected[mask]) / np.abs(expected[mask])))
