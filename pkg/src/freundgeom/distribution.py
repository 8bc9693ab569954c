"""Density, marginals and moments of the Freund bivariate exponential."""

from __future__ import annotations

import numpy as np

from .params import DomainError, FreundParams, as_params


def _nonneg(name, v):
    v = np.asarray(v, dtype=float)
    if np.any(~np.isfinite(v)) or np.any(v < 0):
        raise DomainError(f"{name} must be finite and non-negative")
    return v


def joint_density(p: FreundParams, x, y):
    """Joint density; the boundary ``x == y`` belongs to the second branch."""
    p = as_params(p)
    x = _nonneg("x", x)
    y = _nonneg("y", y)
    s = p.total_rate
    x, y = np.broadcast_arrays(x, y)
    lo = x < y
    out = np.empty(x.shape)
    # each branch only on its own wedge, so the unused one cannot overflow
    out[lo] = p.alpha1 * p.beta2 * np.exp(-p.beta2 * y[lo] - (s - p.beta2) * x[lo])
    up = ~lo
    out[up] = p.alpha2 * p.beta1 * np.exp(-p.beta1 * x[up] - (s - p.beta1) * y[up])
    return float(out) if out.ndim == 0 else out


def _mixture_weights(own_rate: float, other_alpha: float, same_alpha: float, s: float):
    """Weights of ``own_rate * e^{-own_rate t}`` and ``s * e^{-s t}``."""
    d = s - own_rate
    return other_alpha / d, (same_alpha - own_rate) / d


def marginal_x(p: FreundParams, x):
    """Marginal density of X; switches to the limit form when ``alpha1 + alpha2 == beta1``."""
    p = as_params(p)
    x = _nonneg("x", x)
    s = p.total_rate
    if p.marginal_x_defined:
        w1, w2 = _mixture_weights(p.beta1, p.alpha2, p.alpha1, s)
        out = w1 * p.beta1 * np.exp(-p.beta1 * x) + w2 * s * np.exp(-s * x)
    else:
        out = (p.alpha1 + p.alpha2 * s * x) * np.exp(-s * x)
    return float(out) if out.ndim == 0 else out


def marginal_y(p: FreundParams, y):
    p = as_params(p)
    y = _nonneg("y", y)
    s = p.total_rate
    if p.marginal_y_defined:
        w1, w2 = _mixture_weights(p.beta2, p.alpha1, p.alpha2, s)
        out = w1 * p.beta2 * np.exp(-p.beta2 * y) + w2 * s * np.exp(-s * y)
    else:
        out = (p.alpha2 + p.alpha1 * s * y) * np.exp(-s * y)
    return float(out) if out.ndim == 0 else out


def marginal_x_cdf(p: FreundParams, x):
    """CDF of X, integrated term by term from the marginal mixture.

    Non-degenerate: ``1 - w1 e^{-beta1 x} - w2 e^{-s x}`` with ``s = alpha1 + alpha2``.
    Limit ``beta1 = s``: X is Exp(s) with probability alpha1/s and Gamma(2, s)
    otherwise, giving ``1 - e^{-s x} (1 + alpha2 x)``.
    """
    p = as_params(p)
    x = _nonneg("x", x)
    s = p.total_rate
    if p.marginal_x_defined:
        w1, w2 = _mixture_weights(p.beta1, p.alpha2, p.alpha1, s)
        out = 1.0 - w1 * np.exp(-p.beta1 * x) - w2 * np.exp(-s * x)
    else:
        out = 1.0 - np.exp(-s * x) * (1.0 + p.alpha2 * x)
    return float(out) if out.ndim == 0 else out


def marginal_y_cdf(p: FreundParams, y):
    p = as_params(p)
    y = _nonneg("y", y)
    s = p.total_rate
    if p.marginal_y_defined:
        w1, w2 = _mixture_weights(p.beta2, p.alpha1, p.alpha2, s)
        out = 1.0 - w1 * np.exp(-p.beta2 * y) - w2 * np.exp(-s * y)
    else:
        out = 1.0 - np.exp(-s * y) * (1.0 + p.alpha1 * y)
    return float(out) if out.ndim == 0 else out


def mean_x(p: FreundParams) -> float:
    p = as_params(p)
    s = p.total_rate
    return 1.0 / s + p.alpha2 / (s * p.beta1)


def mean_y(p: FreundParams) -> float:
    p = as_params(p)
    s = p.total_rate
    return 1.0 / s + p.alpha1 / (s * p.beta2)


def variance_x(p: FreundParams) -> float:
    p = as_params(p)
    s = p.total_rate
    return (p.alpha2**2 + 2 * p.alpha1 * p.alpha2 + p.beta1**2) / (s**2 * p.beta1**2)


def variance_y(p: FreundParams) -> float:
    p = as_params(p)
    s = p.total_rate
    return (p.alpha1**2 + 2 * p.alpha1 * p.alpha2 + p.beta2**2) / (s**2 * p.beta2**2)


def covariance(p: FreundParams) -> float:
    p = as_params(p)
    bb = p.beta1 * p.beta2
    return (bb - p.alpha1 * p.alpha2) / (bb * p.total_rate**2)


def correlation(p: FreundParams) -> float:
    """Correlation coefficient; always in (-1/3, 1)."""
    p = as_params(p)
    a1, b1, a2, b2 = p.alpha1, p.beta1, p.alpha2, p.beta2
    num = b1 * b2 - a1 * a2
    return float(num / (np.sqrt(a2**2 + 2 * a1 * a2 + b1**2) * np.sqrt(a1**2 + 2 * a1 * a2 + b2**2)))
