import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freundgeom import geometry, tensors
from freundgeom.params import DomainError, FreundParams

ONES = FreundParams(1.0, 1.0, 1.0, 1.0)

positive = st.floats(0.1, 10.0, allow_nan=False)
points = st.builds(FreundParams, positive, positive, positive, positive)
alphas = st.floats(-3.0, 3.0, allow_nan=False)


# ------------------------------------------------------------ metric


def test_metric_examples():
    np.testing.assert_array_equal(geometry.fisher_metric(ONES), 0.5 * np.eye(4))
    assert geometry.fisher_metric(FreundParams(2, 1, 2, 1))[0, 0] == pytest.approx(1 / 8)
    np.testing.assert_array_equal(geometry.fisher_metric_inverse(ONES), 2.0 * np.eye(4))
    assert geometry.fisher_metric_inverse(FreundParams(2, 1, 2, 1))[0, 0] == pytest.approx(8.0)


@settings(max_examples=60, deadline=None)
@given(points)
def test_metric_is_diagonal_and_inverse(p):
    g = geometry.fisher_metric(p)
    np.testing.assert_array_equal(g, np.diag(np.diag(g)))
    assert np.all(np.diag(g) > 0)
    np.testing.assert_allclose(g @ geometry.fisher_metric_inverse(p), np.eye(4), atol=1e-14)


# -------------------------------------------------------- connection


def test_connection_examples():
    assert geometry.christoffel_lower(ONES, 1.0)[0, 1, 1] == 0.0
    assert geometry.christoffel_lower(ONES, 0.0)[0, 0, 0] == pytest.approx(-3 / 8)
    assert geometry.christoffel_upper(ONES, 0.0)[0, 0, 0] == pytest.approx(-3 / 4)
    p = FreundParams(0.3, 2.0, 5.0, 0.8)
    assert geometry.christoffel_upper(p, 1.0)[3, 3, 3] == 0.0
    assert geometry.christoffel_upper(p, 0.5)[3, 3, 3] == pytest.approx(-0.5 / 0.8)


@settings(max_examples=60, deadline=None)
@given(points, alphas)
def test_connection_symmetry_and_lowering(p, a):
    low = geometry.christoffel_lower(p, a)
    up = geometry.christoffel_upper(p, a)
    np.testing.assert_array_equal(low, low.transpose(1, 0, 2))
    np.testing.assert_array_equal(up, up.transpose(1, 0, 2))
    err = np.max(np.abs(tensors.lower_christoffel(up, geometry.fisher_metric(p)) - low))
    assert err <= 1e-12 * max(1.0, np.max(np.abs(low)))


@settings(max_examples=60, deadline=None)
@given(points, alphas, alphas)
def test_connection_is_affine_in_alpha(p, a, b):
    # Gamma^(a) is affine in a, so mixing two alphas reproduces their midpoint.
    lhs = geometry.christoffel_lower(p, a) + geometry.christoffel_lower(p, b)
    rhs = 2.0 * geometry.christoffel_lower(p, (a + b) / 2.0)
    scale = max(1.0, np.max(np.abs(lhs)))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * scale)


def test_components_accept_exact_arithmetic():
    from fractions import Fraction

    comps = geometry.christoffel_lower_components(*(Fraction(1),) * 4, Fraction(0))
    assert comps[(0, 0, 0)] == Fraction(-3, 8)


# --------------------------------------------------------- curvature


def test_curvature_examples():
    R = geometry.curvature_tensor(ONES, 0.0)
    assert R[0, 1, 0, 1] == pytest.approx(-1 / 32)
    assert R[0, 2, 0, 2] == 0.0
    for a in (-1.0, 1.0):
        np.testing.assert_array_equal(geometry.curvature_tensor(ONES, a), 0.0)


@settings(max_examples=40, deadline=None)
@given(points, alphas)
def test_curvature_symmetries_and_bianchi(p, a):
    R = geometry.curvature_tensor(p, a)
    np.testing.assert_array_equal(R, -R.transpose(1, 0, 2, 3))
    np.testing.assert_array_equal(R, -R.transpose(0, 1, 3, 2))
    np.testing.assert_array_equal(R, R.transpose(2, 3, 0, 1))
    scale = max(1.0, np.max(np.abs(R)))
    np.testing.assert_allclose(tensors.bianchi_residual(R), 0.0, atol=1e-13 * scale)


def test_curvature_matches_connection_derivatives():
    p = FreundParams(0.7, 1.9, 2.4, 0.35)
    for a in (-0.5, 0.0, 2.0):
        R_fd = tensors.curvature_by_differences(
            lambda x: geometry.christoffel_upper(x, a), geometry.fisher_metric, p.as_array()
        )
        R = geometry.curvature_tensor(p, a)
        np.testing.assert_allclose(R_fd, R, rtol=1e-7, atol=1e-9 * np.max(np.abs(R)))


# ------------------------------------------------------------- Ricci


def test_ricci_examples():
    ric = geometry.ricci_tensor(ONES, 0.0)
    assert ric.matrix[0, 2] == pytest.approx(-1 / 8)
    for a in (-1.0, 1.0):
        flat = geometry.ricci_tensor(ONES, a)
        np.testing.assert_array_equal(flat.matrix, 0.0)
        np.testing.assert_array_equal(flat.eigenvalues, 0.0)


@settings(max_examples=60, deadline=None)
@given(points, alphas)
def test_ricci_contraction_and_eigensystem(p, a):
    R = geometry.curvature_tensor(p, a)
    ric = tensors.ricci_from_curvature(R, geometry.fisher_metric_inverse(p))
    mat = geometry.ricci_matrix(p, a)
    scale = max(1e-300, np.max(np.abs(mat)))
    np.testing.assert_allclose(ric, mat, atol=1e-12 * scale)

    v0 = np.array([p.alpha1 / p.alpha2, 0.0, 1.0, 0.0])
    np.testing.assert_allclose(mat @ v0, 0.0, atol=1e-12 * scale * np.max(np.abs(v0)))

    res = geometry.ricci_tensor(p, a)
    assert np.all(np.diff(res.eigenvalues) >= -1e-12 * scale)
    for lam, v in zip(res.eigenvalues, res.eigenvectors):
        assert np.linalg.norm(v) == pytest.approx(1.0)
        np.testing.assert_allclose(mat @ v, lam * v, atol=1e-12 * scale)
    np.testing.assert_allclose(np.sort(geometry.ricci_eigensystem_closed_form(p, a)[0]), res.eigenvalues,
                               atol=1e-12 * scale)


def test_ricci_tensor_is_deterministic_with_ties():
    first = geometry.ricci_tensor(ONES, 0.0)
    second = geometry.ricci_tensor(ONES, 0.0)
    np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)
    for v in first.eigenvectors:
        assert v[np.flatnonzero(np.abs(v) > 1e-12)[0]] > 0


# ------------------------------------------------- scalar and sectional


def test_scalar_examples():
    assert geometry.scalar_curvature(ONES, 0.0) == 1.5
    assert geometry.scalar_curvature(ONES, 1.0) == 0.0
    p = FreundParams(3.0, 0.5, 7.0, 2.0)
    g_inv = geometry.fisher_metric_inverse(p)
    ric = tensors.ricci_from_curvature(geometry.curvature_tensor(p, 0.0), g_inv)
    assert tensors.scalar_from_ricci(ric, g_inv) == pytest.approx(1.5, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(points, alphas)
def test_scalar_pipeline_is_constant(p, a):
    g_inv = geometry.fisher_metric_inverse(p)
    ric = tensors.ricci_from_curvature(geometry.curvature_tensor(p, a), g_inv)
    expected = -1.5 * (a * a - 1.0)
    assert tensors.scalar_from_ricci(ric, g_inv) == pytest.approx(expected, abs=1e-10 * max(1.0, abs(expected)))


def test_sectional_examples():
    sec = geometry.sectional_curvatures(ONES, 0.0)
    assert sec[(1, 2)] == pytest.approx(1 / 8)
    assert sec[(2, 4)] == pytest.approx(1 / 4)
    assert sec[(1, 3)] == 0.0
    p = FreundParams(0.2, 3.0, 1.4, 0.9)
    for a in (0.0, 0.5):
        sec = geometry.sectional_curvatures(p, a)
        assert sec[(2, 4)] == pytest.approx((1 - a * a) / 4)
        assert sec[(1, 3)] == 0.0


def test_mean_curvature_examples():
    mean = geometry.mean_curvatures(ONES, 0.0)
    assert mean[1] == pytest.approx(1 / 12)
    p = FreundParams(0.2, 3.0, 1.4, 0.9)
    mean = geometry.mean_curvatures(p, 0.0)
    assert mean[2] == pytest.approx(1 / 6)
    assert mean[4] == pytest.approx(1 / 6)
    assert all(v == 0.0 for v in geometry.mean_curvatures(p, 1.0).values())


@settings(max_examples=40, deadline=None)
@given(points, alphas)
def test_sectional_curvatures_sum_to_half_scalar(p, a):
    # the scalar curvature of a diagonal metric is twice the sum of the plane curvatures
    total = sum(geometry.sectional_curvatures(p, a).values())
    assert 2.0 * total == pytest.approx(geometry.scalar_curvature(p, a), abs=1e-10 * max(1.0, a * a))


# ---------------------------------------------------------- validation


@pytest.mark.parametrize("bad", [(0, 1, 1, 1), (1, -1, 1, 1), (1, 1, float("nan"), 1), (1, 1, 1, float("inf"))])
def test_invalid_params(bad):
    with pytest.raises(DomainError):
        FreundParams(*bad)


def test_invalid_alpha():
    with pytest.raises(DomainError):
        geometry.christoffel_lower(ONES, float("nan"))


def test_degeneracy_flags():
    assert not FreundParams(1.0, 2.0, 1.0, 3.0).marginal_x_defined
    assert FreundParams(1.0, 2.0, 1.0, 3.0).marginal_y_defined
    assert not FreundParams(1.0, 2.0 * (1 + 1e-12), 1.0, 2.0).marginal_y_defined


def test_sequences_are_coerced():
    np.testing.assert_array_equal(geometry.fisher_metric([1, 1, 1, 1]), 0.5 * np.eye(4))
    with pytest.raises(DomainError):
        FreundParams.from_sequence([1, 2, 3])
