"""Affine immersion of F2 as the graph of its potential in R^3.

The point ``(alpha1, beta1)`` maps to ``(u, v, w) = (alpha1, beta1, -log(alpha1 beta1))``
with transversal field ``(0, 0, 1)``.  The independence curve ``alpha1 = beta1``
is ``t -> (t, t, -2 log t)``; its tubular neighbourhood is a Euclidean tube of
user-chosen radius.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import minimize_scalar

from .params import DomainError, check_positive
from .submanifolds import F2Point

TRANSVERSAL = (0.0, 0.0, 1.0)
#: Grid used to isolate the global basin before the bounded Brent refinement.
_SCAN_POINTS = 401


class ConvergenceError(RuntimeError):
    """The distance minimizer failed; the message carries the bracket."""


def _height(u: float, v: float) -> float:
    return float(-np.log(u * v)) + 0.0  # avoid -0.0


@dataclass(frozen=True)
class ImmersedPoint:
    u: float
    v: float
    w: float

    def __post_init__(self) -> None:
        check_positive("u", self.u)
        check_positive("v", self.v)
        expected = _height(self.u, self.v)
        if not abs(self.w - expected) <= 1e-12 * max(1.0, abs(expected)):
            raise DomainError("point is not on the immersed surface w = -log(u v)")

    @classmethod
    def at(cls, u: float, v: float) -> "ImmersedPoint":
        u, v = check_positive("u", u), check_positive("v", v)
        return cls(u, v, _height(u, v))

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w])


def immerse(p: F2Point) -> ImmersedPoint:
    return ImmersedPoint.at(p.alpha1, p.beta1)


def height_hessian(u: float, v: float) -> np.ndarray:
    """Hessian of ``w(u, v)``; equal to the F2 Fisher metric."""
    return np.diag([1.0 / u**2, 1.0 / v**2])


def curve_point(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.stack([t, t, -2.0 * np.log(t) + 0.0], axis=-1)


def independence_curve(t_min: float, t_max: float, n: int) -> np.ndarray:
    """``n`` samples of ``(t, t, -2 log t)``, ``t`` evenly spaced in ``[t_min, t_max]``."""
    check_positive("t_min", t_min)
    check_positive("t_max", t_max)
    if not t_min < t_max:
        raise DomainError("t_min must be smaller than t_max")
    if int(n) != n or n < 2:
        raise DomainError("n must be an integer >= 2")
    return curve_point(np.linspace(t_min, t_max, int(n)))


def _sq_distance(q: np.ndarray, t):
    t = np.asarray(t, dtype=float)
    return (q[0] - t) ** 2 + (q[1] - t) ** 2 + (q[2] + 2.0 * np.log(t)) ** 2


def candidate_interval(q: ImmersedPoint) -> tuple[float, float]:
    """Interval of ``t`` guaranteed to contain every closest curve point.

    The curve point at ``t0 = sqrt(u v)`` has the same height as ``q``; any
    minimizer is at most that far away in each coordinate.
    """
    u, v, w = q.u, q.v, q.w
    t0 = np.sqrt(u * v)
    d_ref = float(np.hypot(u - t0, v - t0))
    lo = max(u - d_ref, v - d_ref, np.exp((-w - d_ref) / 2.0))
    hi = min(u + d_ref, v + d_ref, np.exp((-w + d_ref) / 2.0))
    return float(lo), float(max(hi, lo))


def distance_to_independence(q: ImmersedPoint) -> tuple[float, ImmersedPoint]:
    """Euclidean distance from ``q`` to the independence curve and the foot point."""
    if q.u == q.v:
        return 0.0, q
    arr = q.as_array()
    lo, hi = candidate_interval(q)
    grid = np.linspace(lo, hi, _SCAN_POINTS)
    k = int(np.argmin(_sq_distance(arr, grid)))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    xatol = 1e-13 * max(1.0, b)
    res = minimize_scalar(
        lambda t: float(_sq_distance(arr, t)),
        bounds=(a, b),
        method="bounded",
        options={"xatol": xatol, "maxiter": 500},
    )
    if not res.success:
        raise ConvergenceError(
            f"bounded minimization failed on [{a!r}, {b!r}] "
            f"(candidate interval [{lo!r}, {hi!r}]): {res.message}"
        )
    t = float(res.x)
    d2 = float(res.fun)
    # the scan point can beat an endpoint-limited search; keep the better one
    if _sq_distance(arr, grid[k]) < d2:
        t, d2 = float(grid[k]), float(_sq_distance(arr, grid[k]))
    return float(np.sqrt(d2)), ImmersedPoint.at(t, t)


@dataclass(frozen=True)
class ImmersionMesh:
    """Regular-grid triangulation of the immersed surface.

    ``vertices[i * resolution + j]`` is ``(u_i, v_j, w)``; ``triangles`` are
    0-based vertex indices; ``curve`` samples the independence curve over
    the part of the grid where it exists.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    curve: np.ndarray
    in_tube: np.ndarray
    tube_radius: float
    resolution: int


def _check_range(name, rng):
    lo, hi = (float(r) for r in rng)
    check_positive(f"{name} lower bound", lo)
    check_positive(f"{name} upper bound", hi)
    if not lo < hi:
        raise DomainError(f"{name} must be increasing, got {rng!r}")
    return lo, hi


def build_mesh(
    u_range=(0.2, 3.0), v_range=(0.2, 3.0), resolution: int = 64, tube_radius: float = 0.1
) -> ImmersionMesh:
    u0, u1 = _check_range("u_range", u_range)
    v0, v1 = _check_range("v_range", v_range)
    if int(resolution) != resolution or resolution < 2:
        raise DomainError("resolution must be an integer >= 2")
    check_positive("tube_radius", tube_radius)
    r = int(resolution)
    us = np.linspace(u0, u1, r)
    vs = np.linspace(v0, v1, r)
    U, V = np.meshgrid(us, vs, indexing="ij")
    U, V = U.ravel(), V.ravel()
    vertices = np.column_stack([U, V, -np.log(U * V) + 0.0])

    tris = []
    for i in range(r - 1):
        for j in range(r - 1):
            a = i * r + j
            b, c, d = a + r, a + 1, a + r + 1
            tris.append((a, b, d))
            tris.append((a, d, c))
    triangles = np.array(tris, dtype=np.int64)

    in_tube = np.array(
        [distance_to_independence(ImmersedPoint.at(u, v))[0] < tube_radius for u, v in zip(U, V)]
    )
    t0, t1 = max(u0, v0), min(u1, v1)
    curve = independence_curve(t0, t1, r) if t0 < t1 else np.empty((0, 3))
    return ImmersionMesh(vertices, triangles, curve, in_tube, float(tube_radius), r)


def _g(x: float) -> str:
    return format(float(x), ".17g")


def mesh_to_obj(mesh: ImmersionMesh) -> str:
    """Wavefront OBJ text: surface faces, then the curve as an ``l`` polyline."""
    out = io.StringIO()
    out.write("# affine immersion w = -log(u v)\n")
    out.write("o surface\n")
    for x, y, z in mesh.vertices:
        out.write(f"v {_g(x)} {_g(y)} {_g(z)}\n")
    for a, b, c in mesh.triangles:
        out.write(f"f {a + 1} {b + 1} {c + 1}\n")
    if len(mesh.curve):
        out.write("o independence_curve\n")
        base = len(mesh.vertices)
        for x, y, z in mesh.curve:
            out.write(f"v {_g(x)} {_g(y)} {_g(z)}\n")
        out.write("l " + " ".join(str(base + k + 1) for k in range(len(mesh.curve))) + "\n")
    return out.getvalue()


def mesh_to_csv(mesh: ImmersionMesh) -> str:
    out = io.StringIO()
    out.write("u,v,w,in_tube\n")
    for (x, y, z), flag in zip(mesh.vertices, mesh.in_tube):
        out.write(f"{_g(x)},{_g(y)},{_g(z)},{int(bool(flag))}\n")
    return out.getvalue()


def write_text(path, text: str) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
