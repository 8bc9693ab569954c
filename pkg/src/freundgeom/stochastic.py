"""Sampling the Freund construction and the log-exponential transformed family.

Stream contract for :func:`sample`: draws are generated in fixed chunks of
:data:`CHUNK_SIZE` pairs; chunk ``c`` uses
``Generator(Philox(SeedSequence(seed, spawn_key=(c,))))``.  A batch is
therefore a pure function of ``(params, n, seed)`` however the chunks are
scheduled, and a prefix of a longer batch equals the shorter batch.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from . import distribution
from .oracle import QuadratureConfig, QuadratureError
from .params import DomainError, FreundParams, as_params, check_positive, nearly_equal
from .quadrature import unit_interval_log_rule

CHUNK_SIZE = 65536


@dataclass(frozen=True)
class SampleBatch:
    x: np.ndarray
    y: np.ndarray
    seed: int | None
    n: int

    def __post_init__(self) -> None:
        if self.x.shape != (self.n,) or self.y.shape != (self.n,):
            raise DomainError("x and y must both have length n")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise DomainError("samples must be finite")
        if np.any(self.x < 0) or np.any(self.y < 0):
            raise DomainError("samples must be non-negative")

    @property
    def pairs(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample(p: FreundParams, n: int, seed: int) -> SampleBatch:
    """Draw ``n`` pairs by the two-stage failure construction.

    The first failure happens at ``T ~ Exp(alpha1 + alpha2)``; it is
    component A with probability ``alpha1 / (alpha1 + alpha2)``, after which
    the survivor runs at its switched rate.
    """
    p = as_params(p)
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    n, seed = int(n), int(seed)
    if seed < 0:
        raise DomainError("seed must be non-negative")
    s = p.total_rate
    xs, ys = [], []
    for c, start in enumerate(range(0, n, CHUNK_SIZE)):
        m = min(CHUNK_SIZE, n - start)
        rng = _chunk_rng(seed, c)
        # always draw whole chunks so that batches are prefixes of longer ones
        t = rng.standard_exponential(CHUNK_SIZE)[:m] / s
        a_first = rng.random(CHUNK_SIZE)[:m] < p.alpha1 / s
        extra = rng.standard_exponential(CHUNK_SIZE)[:m]
        xs.append(t + np.where(a_first, 0.0, extra / p.beta1))
        ys.append(t + np.where(a_first, extra / p.beta2, 0.0))
    return SampleBatch(np.concatenate(xs), np.concatenate(ys), seed, n)


@dataclass(frozen=True)
class EmpiricalMoments:
    mean_x: float
    mean_y: float
    cov: float
    corr: float
    se_mean_x: float
    se_mean_y: float
    se_cov: float
    se_corr: float


def empirical_moments(b: SampleBatch) -> EmpiricalMoments:
    """Unbiased moments with large-sample standard errors from influence functions.

    ``corr`` is NaN when either coordinate is constant.
    """
    if b.n < 2:
        raise DomainError("at least two samples are needed")
    n = b.n
    x, y = b.x, b.y
    mx, my = float(np.mean(x)), float(np.mean(y))
    dx, dy = x - mx, y - my
    vx = float(dx @ dx) / (n - 1)
    vy = float(dy @ dy) / (n - 1)
    prod = dx * dy
    cov = float(prod.sum()) / (n - 1)
    se_cov = float(np.std(prod, ddof=1) / np.sqrt(n))
    if vx > 0.0 and vy > 0.0:
        corr = cov / np.sqrt(vx * vy)
        zx, zy = dx / np.sqrt(vx), dy / np.sqrt(vy)
        infl = zx * zy - 0.5 * corr * (zx**2 + zy**2)
        se_corr = float(np.std(infl, ddof=1) / np.sqrt(n))
    else:
        corr, se_corr = float("nan"), float("nan")
    return EmpiricalMoments(
        mean_x=mx,
        mean_y=my,
        cov=cov,
        corr=float(corr),
        se_mean_x=float(np.sqrt(vx / n)),
        se_mean_y=float(np.sqrt(vy / n)),
        se_cov=se_cov,
        se_corr=se_corr,
    )


@dataclass(frozen=True)
class KSResult:
    statistic: float
    pvalue: float
    critical_value: float
    level: float

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical_value


def ks_test_marginal_x(b: SampleBatch, p: FreundParams, level: float = 0.01) -> KSResult:
    """One-sample Kolmogorov-Smirnov test of the X sample against the closed-form CDF."""
    p = as_params(p)
    res = stats.kstest(b.x, lambda t: distribution.marginal_x_cdf(p, t))
    crit = float(stats.kstwo.ppf(1.0 - level, b.n))
    return KSResult(float(res.statistic), float(res.pvalue), crit, level)


def ks_test_marginal_y(b: SampleBatch, p: FreundParams, level: float = 0.01) -> KSResult:
    p = as_params(p)
    res = stats.kstest(b.y, lambda t: distribution.marginal_y_cdf(p, t))
    crit = float(stats.kstwo.ppf(1.0 - level, b.n))
    return KSResult(float(res.statistic), float(res.pvalue), crit, level)


def _g17(v: float) -> str:
    return format(float(v), ".17g")


def batch_to_csv(b: SampleBatch) -> str:
    out = io.StringIO()
    out.write("x,y\n")
    for xv, yv in zip(b.x, b.y):
        out.write(f"{_g17(xv)},{_g17(yv)}\n")
    return out.getvalue()


def write_batch_csv(b: SampleBatch, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(batch_to_csv(b))
    return path


def read_batch_csv(path, seed: int | None = None) -> SampleBatch:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,y":
            raise DomainError(f"unexpected CSV header {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.size == 0:
        data = np.empty((0, 2))
    return SampleBatch(data[:, 0].copy(), data[:, 1].copy(), seed, data.shape[0])


# --------------------------------------------------------- log-exponential


@dataclass(frozen=True)
class LogExpParams:
    """Parameters of the law of ``(N, M) = (exp(-X), exp(-Y))`` on the unit square."""

    alpha1: float
    beta1: float
    alpha2: float
    beta2: float

    def __post_init__(self) -> None:
        for name in ("alpha1", "beta1", "alpha2", "beta2"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @classmethod
    def from_sequence(cls, values) -> "LogExpParams":
        values = [float(v) for v in values]
        if len(values) != 4:
            raise DomainError(f"expected 4 parameters, got {len(values)}")
        return cls(*values)

    def as_freund(self) -> FreundParams:
        return FreundParams(self.alpha1, self.beta1, self.alpha2, self.beta2)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.beta1, self.alpha2, self.beta2])


def _as_logexp(q) -> LogExpParams:
    if isinstance(q, LogExpParams):
        return q
    if isinstance(q, FreundParams):
        return LogExpParams(q.alpha1, q.beta1, q.alpha2, q.beta2)
    return LogExpParams.from_sequence(q)


def _open_unit(name, v):
    v = np.asarray(v, dtype=float)
    if np.any(~(v > 0.0)) or np.any(~(v < 1.0)):
        raise DomainError(f"{name} must lie in the open interval (0, 1)")
    return v


def logexp_density(q: LogExpParams, n, m):
    """Density of ``(N, M)``; the diagonal ``n == m`` belongs to the ``n < m`` branch."""
    q = _as_logexp(q)
    n = _open_unit("n", n)
    m = _open_unit("m", m)
    s = q.alpha1 + q.alpha2
    lower = q.alpha1 * q.beta2 * m ** (q.beta2 - 1) * n ** (s - q.beta2 - 1)
    upper = q.alpha2 * q.beta1 * n ** (q.beta1 - 1) * m ** (s - q.beta1 - 1)
    out = np.where(m < n, lower, upper)
    return float(out) if out.ndim == 0 else out


def logexp_marginal_n(q: LogExpParams, n):
    q = _as_logexp(q)
    n = _open_unit("n", n)
    a1, b1, a2 = q.alpha1, q.beta1, q.alpha2
    s = a1 + a2
    if nearly_equal(s, b1):
        out = (a1 - a2 * s * np.log(n)) * n ** (s - 1)
    else:
        d = s - b1
        out = a2 / d * b1 * n ** (b1 - 1) + (a1 - b1) / d * s * n ** (s - 1)
    return float(out) if out.ndim == 0 else out


def logexp_marginal_m(q: LogExpParams, m):
    q = _as_logexp(q)
    m = _open_unit("m", m)
    a1, a2, b2 = q.alpha1, q.alpha2, q.beta2
    s = a1 + a2
    if nearly_equal(s, b2):
        out = (a2 - a1 * s * np.log(m)) * m ** (s - 1)
    else:
        d = s - b2
        out = a1 / d * b2 * m ** (b2 - 1) + (a2 - b2) / d * s * m ** (s - 1)
    return float(out) if out.ndim == 0 else out


def _square_nodes(q: LogExpParams, config: QuadratureConfig, k: int):
    """Nodes ``(n, m)``, weights (density included) and scores on both triangles.

    On ``m < n`` substitute ``m = n w``; on ``n < m`` substitute ``n = m w``.
    The outer variable then carries ``r^(s-1)`` and the inner ``w^(beta-1)``,
    both removed by power grading.
    """
    a1, b1, a2, b2 = q.alpha1, q.beta1, q.alpha2, q.beta2
    s = a1 + a2
    parts = []
    for lower, inner_rate in ((True, b2), (False, b1)):
        lr, lwr = unit_interval_log_rule(s, config, k)
        lz, lwz = unit_interval_log_rule(inner_rate, config, k)
        LR, LZ = (a.ravel() for a in np.meshgrid(lr, lz, indexing="ij"))
        LW = np.add.outer(lwr, lwz).ravel()
        if lower:
            ln_n, ln_m = LR, LR + LZ
            # log g = log a1 + log b2 + (b2 - 1) log m + (s - b2 - 1) log n
            logg = np.log(a1 * b2) + (b2 - 1) * ln_m + (s - b2 - 1) * ln_n
            score = np.stack([1 / a1 + ln_n, np.zeros_like(ln_n), ln_n, 1 / b2 + ln_m - ln_n])
        else:
            ln_n, ln_m = LR + LZ, LR
            logg = np.log(a2 * b1) + (b1 - 1) * ln_n + (s - b1 - 1) * ln_m
            score = np.stack([ln_m, 1 / b1 + ln_n - ln_m, 1 / a2 + ln_m, np.zeros_like(ln_m)])
        weight = np.exp(LW + logg + LR)  # LR: log of the Duffy Jacobian
        parts.append((np.exp(ln_n), np.exp(ln_m), weight, score))
    return (
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        np.concatenate([p[2] for p in parts]),
        np.concatenate([p[3] for p in parts], axis=1),
    )


def _square_integral(q, fn, config, return_error):
    q = _as_logexp(q)
    k = config.nodes_per_axis
    fine, mass = fn(*_square_nodes(q, config, k))
    coarse, _ = fn(*_square_nodes(q, config, k // 2))
    err = float(np.max(np.abs(fine - coarse) / np.maximum(mass, np.finfo(float).tiny)))
    if err > config.max_rel_error:
        raise QuadratureError(
            f"unit-square quadrature error estimate {err:.3e} exceeds {config.max_rel_error:.1e}"
        )
    return (fine, err) if return_error else fine


def logexp_fisher_metric(
    q: LogExpParams, quad: QuadratureConfig = QuadratureConfig(), return_error: bool = False
):
    """``E[score score^T]`` for the log-exponential density over the unit square."""

    def fn(nn, mm, w, S):
        return (
            np.einsum("in,jn,n->ij", S, S, w),
            np.einsum("in,jn,n->ij", np.abs(S), np.abs(S), w),
        )

    return _square_integral(q, fn, quad, return_error)


def logexp_expectation(q: LogExpParams, fn, quad: QuadratureConfig = QuadratureConfig()):
    """``E[fn(N, M)]`` by unit-square quadrature."""

    def wrapped(nn, mm, w, S):
        vals = np.asarray(fn(nn, mm), dtype=float)
        return vals @ w, np.abs(vals) @ w

    return _square_integral(q, wrapped, quad, False)


def logexp_covariance(q: LogExpParams) -> float:
    """Closed-form ``Cov(N, M)``.

    Equivalent to ``E[e^{-X-Y}] - E[e^{-X}] E[e^{-Y}]`` for the Freund pair.
    """
    q = _as_logexp(q)
    a1, b1, a2, b2 = q.alpha1, q.beta1, q.alpha2, q.beta2
    s = a1 + a2
    num = a2 * (-(a1 * (2 + s)) + b1) + (a1 + s * b1) * b2
    den = (1 + s) ** 2 * (2 + s) * (1 + b1) * (1 + b2)
    return float(num / den)


def logexp_covariance_numeric(q: LogExpParams, quad: QuadratureConfig = QuadratureConfig()) -> float:
    e_nm = logexp_expectation(q, lambda n, m: n * m, quad)
    e_n = logexp_expectation(q, lambda n, m: n, quad)
    e_m = logexp_expectation(q, lambda n, m: m, quad)
    return float(e_nm - e_n * e_m)


def transform_batch(b: SampleBatch) -> tuple[np.ndarray, np.ndarray]:
    """``(exp(-X), exp(-Y))`` for a Freund sample."""
    return np.exp(-b.x), np.exp(-b.y)

