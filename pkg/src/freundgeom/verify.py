"""Closed form versus oracle sweep behind the ``verify`` command.

Every check records the largest error it saw and the tolerance it was held
to.  Grid points and checks run in a fixed order, and the report contains only
numbers derived from the inputs, so repeated runs are byte-identical.
"""

from __future__ import annotations

import io
import itertools
from fractions import Fraction
from dataclasses import dataclass

import numpy as np

from . import geometry, oracle, stochastic, submanifolds as sm, tensors
from .params import FreundParams

GRIDS = {
    "coarse": {"values": (0.5, 2.0), "alphas": (-1.0, 0.0, 1.0)},
    "full": {"values": (0.25, 1.0, 4.0), "alphas": (-1.0, -0.5, 0.0, 0.5, 1.0)},
}
ZERO_FLOOR = 1e-12
DEFAULT_TOLERANCES = {
    "metric_quadrature": 1e-6,
    "metric_quadrature_offdiag": 1e-6,
    "score_mean": 1e-6,
    "connection_quadrature": 1e-5,
    "connection_quadrature_zero": 1e-5,
    "connection_raising": 1e-12,
    "curvature_differences": 1e-5,
    "curvature_differences_zero": 1e-6,
    "scalar_pipeline": 1e-10,
    "duality": 0.0,
    "metric_compatibility": 1e-6,
    "ricci_eigenpairs": 1e-10,
    "flatness_alpha_pm1": 1e-12,
    "submanifold_metric_quadrature": 1e-6,
    "submanifold_flatness": 1e-8,
    "logexp_isometry": 1e-5,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    points: int

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)


@dataclass(frozen=True)
class VerificationReport:
    grid: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        out = io.StringIO()
        out.write(f"grid={self.grid}\n")
        for c in self.checks:
            out.write(
                f"check={c.name} points={c.points} max_error={c.max_error:.17g} "
                f"tolerance={c.tolerance:.17g} status={'PASS' if c.passed else 'FAIL'}\n"
            )
        out.write(f"overall={'PASS' if self.passed else 'FAIL'}\n")
        return out.getvalue()

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("check,points,max_error,tolerance,status\n")
        for c in self.checks:
            out.write(
                f"{c.name},{c.points},{c.max_error:.17g},{c.tolerance:.17g},"
                f"{'PASS' if c.passed else 'FAIL'}\n"
            )
        return out.getvalue()

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "points": c.points,
                    "max_error": c.max_error,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }


def _rel_split(actual, expected):
    """(relative error on nonzero entries, absolute error on zero entries)."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    mask = np.abs(expected) > ZERO_FLOOR
    rel = tensors.relative_max_error(actual, expected, ZERO_FLOOR)
    absz = float(np.max(np.abs(actual[~mask]))) if (~mask).any() else 0.0
    return rel, absz


def exact_duality_defect(p: FreundParams, alpha: float) -> float:
    """``max |Gamma^(a) + Gamma^(-a) - 2 Gamma^(0)|`` in exact rational arithmetic.

    Binary floats convert to fractions without loss, so a zero here means the
    closed forms satisfy the identity exactly at that point.
    """
    x = [Fraction(v) for v in p.as_array()]
    al = Fraction(alpha)
    plus = geometry.christoffel_lower_components(*x, al)
    minus = geometry.christoffel_lower_components(*x, -al)
    zero = geometry.christoffel_lower_components(*x, Fraction(0))
    return float(max(abs(plus[k] + minus[k] - 2 * zero[k]) for k in zero))


def run_verification(grid: str = "coarse", tolerances: dict | None = None) -> VerificationReport:
    """Run every check on the named grid.

    ``tolerances`` overrides individual entries of :data:`DEFAULT_TOLERANCES`.
    """
    tol = dict(DEFAULT_TOLERANCES)
    for key, value in (tolerances or {}).items():
        if key not in tol:
            raise ValueError(f"unknown check {key!r}")
        tol[key] = float(value)
    if grid not in GRIDS:
        raise ValueError(f"unknown grid {grid!r}; choose from {sorted(GRIDS)}")
    grid_spec = GRIDS[grid]
    points = [FreundParams(*v) for v in itertools.product(grid_spec["values"], repeat=4)]
    alphas = grid_spec["alphas"]
    worst = dict.fromkeys(
        [
            "metric_quadrature",
            "metric_quadrature_offdiag",
            "score_mean",
            "connection_quadrature",
            "connection_quadrature_zero",
            "connection_raising",
            "curvature_differences",
            "curvature_differences_zero",
            "scalar_pipeline",
            "duality",
            "metric_compatibility",
            "ricci_eigenpairs",
            "flatness_alpha_pm1",
        ],
        0.0,
    )
    counts = dict.fromkeys(worst, 0)

    def bump(key, err):
        worst[key] = max(worst[key], float(err))
        counts[key] += 1

    fd = tensors.FiniteDiffConfig()
    for p in points:
        g = geometry.fisher_metric(p)
        rel, absz = _rel_split(oracle.fisher_metric_numeric(p), g)
        bump("metric_quadrature", rel)
        bump("metric_quadrature_offdiag", absz)
        bump("score_mean", np.max(np.abs(oracle.score_mean_numeric(p))))
        dg = tensors.partial_derivatives(geometry.fisher_metric, p.as_array(), fd)
        g0 = geometry.christoffel_lower(p, 0.0)
        compat = g0.transpose(0, 1, 2) + g0.transpose(0, 2, 1)  # [k, i, j]
        bump("metric_compatibility", max(_rel_split(compat, dg)))
        for a in alphas:
            low = geometry.christoffel_lower(p, a)
            rel, absz = _rel_split(oracle.christoffel_lower_numeric(p, a), low)
            bump("connection_quadrature", rel)
            bump("connection_quadrature_zero", absz / max(1.0, np.max(np.abs(low))))
            up = geometry.christoffel_upper(p, a)
            bump("connection_raising", np.max(np.abs(tensors.lower_christoffel(up, g) - low)))
            R = geometry.curvature_tensor(p, a)
            rel, absz = _rel_split(oracle.curvature_numeric(p, a, fd), R)
            bump("curvature_differences", rel)
            bump("curvature_differences_zero", absz)
            ric = tensors.ricci_from_curvature(R, geometry.fisher_metric_inverse(p))
            scal = tensors.scalar_from_ricci(ric, geometry.fisher_metric_inverse(p))
            bump("scalar_pipeline", abs(scal - geometry.scalar_curvature(p, a)))
            bump("duality", exact_duality_defect(p, a))
            vals, vecs = geometry.ricci_eigensystem_closed_form(p, a)
            mat = geometry.ricci_matrix(p, a)
            scale = max(np.max(np.abs(mat)), ZERO_FLOOR)
            for lam, v in zip(vals, vecs):
                bump("ricci_eigenpairs", np.max(np.abs(mat @ v - lam * v)) / (scale * np.max(np.abs(v))))
        for a in (-1.0, 1.0):
            flat = max(
                np.max(np.abs(geometry.curvature_tensor(p, a))),
                np.max(np.abs(geometry.ricci_matrix(p, a))),
                abs(geometry.scalar_curvature(p, a)),
            )
            bump("flatness_alpha_pm1", flat)

    checks = [CheckResult(k, worst[k], tol[k], counts[k]) for k in worst]
    checks.extend(_submanifold_checks(alphas, tol))
    checks.append(_isometry_check(grid_spec["values"], tol))
    return VerificationReport(grid, tuple(checks))


def _submanifold_checks(alphas, tol) -> list[CheckResult]:
    pts2 = [(1.0, 1.0), (0.5, 2.0), (3.0, 0.7)]
    pts3 = [(1.0, 1.0, 1.0), (0.5, 2.0, 1.5), (3.0, 0.2, 0.7)]
    metric_err, flat_err, n_metric, n_flat = 0.0, 0.0, 0, 0
    for q in pts2:
        pairs = [
            (sm.F1_FAMILY, sm.f1_metric(sm.F1Point(*q))),
            (sm.F2_FAMILY, sm.f2_metric(sm.F2Point(*q))),
            (sm.F3_FAMILY, sm.f3_metric(sm.F3Point(*q))),
            (sm.ACBED_SYMMETRIC_FAMILY, sm.acbed_symmetric_family(*q).metric),
        ]
        for fam, g in pairs:
            rel = tensors.relative_max_error(oracle.family_fisher_metric(fam, q), g, ZERO_FLOOR)
            metric_err = max(metric_err, rel)
            n_metric += 1
        for a in alphas:
            for R in (
                sm.f1_curvature(sm.F1Point(*q), a),
                sm.f3_curvature(sm.F3Point(*q), a),
                sm.acbed_symmetric_curvature(*q, a),
            ):
                flat_err = max(flat_err, float(np.max(np.abs(R))))
                n_flat += 1
    for q in pts3:
        g = sm.acbed_metric(sm.ACBEDPoint(*q))
        rel = tensors.relative_max_error(oracle.family_fisher_metric(sm.ACBED_FAMILY, q), g, ZERO_FLOOR)
        metric_err = max(metric_err, rel)
        n_metric += 1
    return [
        CheckResult("submanifold_metric_quadrature", metric_err, tol["submanifold_metric_quadrature"], n_metric),
        CheckResult("submanifold_flatness", flat_err, tol["submanifold_flatness"], n_flat),
    ]


def _isometry_check(values, tol) -> CheckResult:
    worst, count = 0.0, 0
    for v in itertools.product(values[:2] if len(values) > 2 else values, repeat=4):
        g = geometry.fisher_metric(v)
        rel, absz = _rel_split(stochastic.logexp_fisher_metric(v), g)
        worst = max(worst, rel, absz / float(np.min(np.diag(g))))
        count += 1
    return CheckResult("logexp_isometry", worst, tol["logexp_isometry"], count)
