"""Closed-form alpha-geometry of the Freund 4-manifold.

Coordinates are ``x = (alpha1, beta1, alpha2, beta2)``, indexed 0..3 in
arrays.  Index and sign conventions are those of :mod:`freundgeom.tensors`;
in particular ``R[0, 1, 0, 1]`` is negative at ``alpha = 0`` and all
coordinate-plane sectional curvatures there are non-negative.

Every expression is a direct rational function of the parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tensors
from .params import FreundParams, as_params, check_alpha


def _unpack(p):
    p = as_params(p)
    return p.alpha1, p.beta1, p.alpha2, p.beta2, p.alpha1 + p.alpha2


def fisher_metric(p: FreundParams) -> np.ndarray:
    """Diagonal Fisher information matrix."""
    a1, b1, a2, b2, s = _unpack(p)
    return np.diag([1.0 / (a1 * s), a2 / (b1**2 * s), 1.0 / (a2 * s), a1 / (b2**2 * s)])


def fisher_metric_inverse(p: FreundParams) -> np.ndarray:
    a1, b1, a2, b2, s = _unpack(p)
    return np.diag([a1 * s, b1**2 * s / a2, a2 * s, b2**2 * s / a1])


def christoffel_lower(p: FreundParams, alpha: float) -> np.ndarray:
    """Gamma^{(alpha)}_{ij,k} as ``out[i, j, k]``.

    Includes the components (13,1), (22,1), (23,2), (33,1), (44,1) and
    (44,3) which are nonzero but commonly omitted from published tables.
    """
    a1, b1, a2, b2, _ = _unpack(p)
    return _symmetric_in_first_pair(
        christoffel_lower_components(a1, b1, a2, b2, check_alpha(alpha))
    )


def christoffel_lower_components(a1, b1, a2, b2, al) -> dict:
    """Independent components ``{(i, j, k): Gamma_{ij,k}}`` with ``i <= j``.

    Pure arithmetic on the arguments, so it also runs on exact types such as
    :class:`fractions.Fraction`.
    """
    s = a1 + a2
    s2 = s * s
    comps = {
        (0, 0, 0): (2 * (al - 1) * a1 - (1 + al) * a2) / (2 * a1**2 * s2),
        (0, 0, 2): (1 + al) / (2 * a1 * s2),
        (0, 1, 1): (al - 1) * a2 / (2 * s2 * b1**2),
        (0, 2, 0): (al - 1) / (2 * a1 * s2),
        (0, 2, 2): (al - 1) / (2 * a2 * s2),
        (0, 3, 3): -(al - 1) * a2 / (2 * s2 * b2**2),
        (1, 1, 0): (1 + al) * a2 / (2 * s2 * b1**2),
        (1, 1, 1): (al - 1) * a2 / (s * b1**3),
        (1, 1, 2): -(1 + al) * a1 / (2 * s2 * b1**2),
        (1, 2, 1): -(al - 1) * a1 / (2 * s2 * b1**2),
        (2, 2, 0): (1 + al) / (2 * a2 * s2),
        (2, 2, 2): (-(1 + al) * a1 + 2 * (al - 1) * a2) / (2 * a2**2 * s2),
        (2, 3, 3): (al - 1) * a1 / (2 * s2 * b2**2),
        (3, 3, 0): -(1 + al) * a2 / (2 * s2 * b2**2),
        (3, 3, 2): (1 + al) * a1 / (2 * s2 * b2**2),
        (3, 3, 3): (al - 1) * a1 / (s * b2**3),
    }
    return comps


def christoffel_upper(p: FreundParams, alpha: float) -> np.ndarray:
    """Gamma^{(alpha)k}_{ij} as ``out[i, j, k]``."""
    a1, b1, a2, b2, s = _unpack(p)
    al = check_alpha(alpha)
    half_gap = (al - 1) / (2 * s)
    comps = {
        (0, 0, 0): 0.5 * (-(1 + al) / a1 + (3 * al - 1) / s),
        (0, 0, 2): (1 + al) * a2 / (2 * a1 * s),
        (0, 1, 1): half_gap,
        (0, 2, 0): half_gap,
        (0, 2, 2): half_gap,
        (0, 3, 3): (1 - al) * a2 / (2 * a1 * s),
        (1, 1, 0): (1 + al) * a1 * a2 / (2 * s * b1**2),
        (1, 1, 1): (al - 1) / b1,
        (1, 1, 2): -(1 + al) * a1 * a2 / (2 * s * b1**2),
        (1, 2, 1): (1 - al) * a1 / (2 * a2 * s),
        (2, 2, 0): (1 + al) * a1 / (2 * a2 * s),
        (2, 2, 2): 0.5 * (-(1 + al) / a2 + (3 * al - 1) / s),
        (2, 3, 3): half_gap,
        (3, 3, 0): -(1 + al) * a1 * a2 / (2 * s * b2**2),
        (3, 3, 2): (1 + al) * a1 * a2 / (2 * s * b2**2),
        (3, 3, 3): (al - 1) / b2,
    }
    return _symmetric_in_first_pair(comps)


def _symmetric_in_first_pair(comps, n: int = 4) -> np.ndarray:
    out = np.zeros((n, n, n))
    for (i, j, k), v in comps.items():
        out[i, j, k] = v
        out[j, i, k] = v
    return out


def curvature_tensor(p: FreundParams, alpha: float) -> np.ndarray:
    """All-lower alpha-curvature ``R[i, j, k, l]``."""
    a1, b1, a2, b2, s = _unpack(p)
    c = check_alpha(alpha) ** 2 - 1.0
    s3 = s**3
    comps = {
        (0, 1, 0, 1): c * a2**2 / (4 * a1 * s3 * b1**2),
        (0, 1, 1, 2): c * a2 / (4 * s3 * b1**2),
        (0, 3, 0, 3): c * a2 / (4 * s3 * b2**2),
        (0, 3, 2, 3): -c * a1 / (4 * s3 * b2**2),
        (1, 2, 1, 2): c * a1 / (4 * s3 * b1**2),
        (1, 3, 1, 3): c * a1 * a2 / (4 * s**2 * b1**2 * b2**2),
        (2, 3, 2, 3): c * a1**2 / (4 * a2 * s3 * b2**2),
    }
    return tensors.expand_curvature(comps, 4)


@dataclass(frozen=True)
class RicciTensor:
    """Ricci matrix with its ordinary (``ric @ v = lambda v``) eigen-system.

    ``eigenvectors[m]`` is the unit eigenvector for ``eigenvalues[m]``.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def ricci_matrix(p: FreundParams, alpha: float) -> np.ndarray:
    a1, b1, a2, b2, s = _unpack(p)
    c = check_alpha(alpha) ** 2 - 1.0
    s2 = s * s
    ric = np.zeros((4, 4))
    ric[0, 0] = -c * a2 / (2 * a1 * s2)
    ric[0, 2] = ric[2, 0] = c / (2 * s2)
    ric[1, 1] = -c * a2 / (2 * s * b1**2)
    ric[2, 2] = -c * a1 / (2 * a2 * s2)
    ric[3, 3] = -c * a1 / (2 * s * b2**2)
    return ric


def ricci_tensor(p: FreundParams, alpha: float, tie_rtol: float = 1e-12) -> RicciTensor:
    """Ricci tensor and its eigen-system.

    Eigenvalues ascend; eigenvalues within ``tie_rtol`` of each other are
    ordered lexicographically by eigenvector, each vector signed so its first
    nonzero component is positive.
    """
    ric = ricci_matrix(p, alpha)
    vals, vecs = np.linalg.eigh(ric)
    vecs = [_canonical_sign(vecs[:, m]) for m in range(vecs.shape[1])]
    scale = max(1.0, float(np.max(np.abs(vals))))
    order = sorted(range(len(vals)), key=lambda m: vals[m])
    # group near-equal eigenvalues, then order each group lexicographically
    groups, current = [], [order[0]]
    for m in order[1:]:
        if vals[m] - vals[current[-1]] <= tie_rtol * scale:
            current.append(m)
        else:
            groups.append(current)
            current = [m]
    groups.append(current)
    final = []
    for grp in groups:
        final.extend(sorted(grp, key=lambda m: tuple(np.round(vecs[m], 12))))
    return RicciTensor(
        matrix=ric,
        eigenvalues=np.array([vals[m] for m in final]),
        eigenvectors=np.array([vecs[m] for m in final]),
    )


def _canonical_sign(v: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    for comp in v:
        if abs(comp) > atol:
            return v if comp > 0 else -v
    return v


def ricci_eigensystem_closed_form(p: FreundParams, alpha: float):
    """Published eigen-pairs in their listed order (unnormalised eigenvectors as rows)."""
    a1, b1, a2, b2, s = _unpack(p)
    c = check_alpha(alpha) ** 2 - 1.0
    values = c * np.array(
        [
            0.0,
            1.0 / s**2 - 1.0 / (2 * a1 * a2),
            -a2 / (2 * s * b1**2),
            -a1 / (2 * s * b2**2),
        ]
    )
    vectors = np.array(
        [
            [a1 / a2, 0.0, 1.0, 0.0],
            [-a2 / a1, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return values, vectors


def scalar_curvature(p: FreundParams, alpha: float) -> float:
    """Constant alpha-scalar curvature ``-3 (alpha^2 - 1) / 2``."""
    as_params(p)
    al = check_alpha(alpha)
    return -1.5 * (al * al - 1.0)


def sectional_curvatures(p: FreundParams, alpha: float) -> dict[tuple[int, int], float]:
    """Coordinate-plane sectional curvatures keyed by 1-based pairs ``(lam, mu)``, lam < mu."""
    R = curvature_tensor(p, alpha)
    g = fisher_metric(p)
    return {
        (lam + 1, mu + 1): tensors.sectional_curvature(R, g, lam, mu)
        for lam in range(4)
        for mu in range(lam + 1, 4)
    }


def mean_curvatures(p: FreundParams, alpha: float) -> dict[int, float]:
    """Average sectional curvature over the three coordinate planes through each direction."""
    rho = sectional_curvatures(p, alpha)
    out = {}
    for lam in range(1, 5):
        planes = [rho[tuple(sorted((lam, mu)))] for mu in range(1, 5) if mu != lam]
        out[lam] = sum(planes) / 3.0
    return out
