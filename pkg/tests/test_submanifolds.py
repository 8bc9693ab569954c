import numpy as np
import pytest
from scipy import integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from freundgeom import distribution, oracle, tensors
from freundgeom import submanifolds as sm
from freundgeom.params import DomainError

POINTS2 = [(1.0, 1.0), (0.4, 2.5), (3.0, 0.7)]
POINTS3 = [(1.0, 1.0, 1.0), (0.5, 2.0, 1.5), (3.0, 0.2, 0.7)]
ALPHAS = (-1.0, -0.5, 0.0, 0.5, 1.0, 2.0)

positive = st.floats(0.1, 10.0, allow_nan=False)


def _induced(emb, q, a):
    return sm.induced_geometry(emb, q, a)


# ----------------------------------------------------------------- F1


def test_f1_examples():
    np.testing.assert_array_equal(sm.f1_metric(sm.F1Point(1, 1)), np.eye(2))
    np.testing.assert_allclose(sm.f1_metric(sm.F1Point(2, 3)), np.diag([1 / 4, 1 / 9]))
    low, up = sm.f1_connection(sm.F1Point(2, 3), 1.0)
    np.testing.assert_array_equal(low, 0.0)
    np.testing.assert_array_equal(up, 0.0)
    low, up = sm.f1_connection(sm.F1Point(2, 3), 0.0)
    assert up[0, 0, 0] == -0.5
    assert low[0, 0, 1] == 0.0


@pytest.mark.parametrize("q", POINTS2)
@pytest.mark.parametrize("a", ALPHAS)
def test_f1_matches_pullback_and_is_flat(q, a):
    ind = _induced(sm.F1_EMBEDDING, q, a)
    low, up = sm.f1_connection(sm.F1Point(*q), a)
    np.testing.assert_allclose(ind.metric, sm.f1_metric(sm.F1Point(*q)), rtol=1e-14)
    np.testing.assert_allclose(ind.christoffel_lower, low, atol=1e-13)
    np.testing.assert_allclose(ind.christoffel_upper, up, atol=1e-13)
    assert np.max(np.abs(sm.f1_curvature(sm.F1Point(*q), a))) <= 1e-8


# ----------------------------------------------------------------- F2


def test_f2_examples():
    np.testing.assert_array_equal(sm.f2_metric(sm.F2Point(1, 1)), np.eye(2))
    np.testing.assert_allclose(sm.f2_metric(sm.F2Point(2, 5)), np.diag([1 / 4, 1 / 25]))
    pot = sm.f2_potential(sm.F2Point(1, 1))
    assert pot.value == 0.0
    assert sm.f2_dual_potential(sm.F2Point(1, 1)) == -2.0
    d = sm.f2_to_dual(sm.F2Point(2, 4))
    assert (d.eta1, d.eta2) == (-0.5, -0.25)


@settings(max_examples=60, deadline=None)
@given(positive, positive)
def test_f2_potential_dual_and_isometry(a, b):
    p = sm.F2Point(a, b)
    pot = sm.f2_potential(p)
    d = sm.f2_to_dual(p)
    np.testing.assert_array_equal(pot.gradient, d.as_array())
    np.testing.assert_array_equal(pot.hessian, sm.f2_metric(p))
    np.testing.assert_array_equal(sm.f2_metric(p), sm.f1_metric(sm.F1Point(a, b)))
    back = sm.f2_from_dual(d)
    assert back.alpha1 == pytest.approx(a, rel=1e-15) and back.beta1 == pytest.approx(b, rel=1e-15)
    assert pot.value + sm.f2_dual_potential(p) == pytest.approx(p.as_array() @ d.as_array(), abs=1e-14)


def test_f2_metric_is_hessian_by_differences():
    for q in POINTS2:
        hess = tensors.partial_derivatives(lambda x: sm.f2_potential(sm.F2Point(*x)).gradient, np.array(q))
        np.testing.assert_allclose(hess, sm.f2_metric(sm.F2Point(*q)), rtol=1e-7, atol=1e-12)


def test_f2_mixed_metric_is_positive_definite_pullback():
    a1, b1 = 1.3, 0.6
    eta2 = -1.0 / b1
    g = sm.f2_mixed_metric(a1, eta2)
    np.testing.assert_allclose(g, np.diag([1 / a1**2, 1 / eta2**2]), rtol=1e-14)
    assert np.all(np.linalg.eigvalsh(g) > 0)
    with pytest.raises(DomainError):
        sm.f2_mixed_metric(a1, 0.5)


@pytest.mark.parametrize("q", POINTS2)
def test_f2_dual_flatness(q):
    p = sm.F2Point(*q)
    np.testing.assert_array_equal(sm.f2_connection(p, 1.0)[1], 0.0)
    np.testing.assert_allclose(sm.f2_connection_dual(sm.f2_to_dual(p), -1.0), 0.0, atol=1e-12)
    assert np.max(np.abs(sm.f2_connection_dual(sm.f2_to_dual(p), 0.0))) > 0.1 / max(q)


@pytest.mark.parametrize("q", POINTS2)
@pytest.mark.parametrize("a", ALPHAS)
def test_f2_matches_pullback(q, a):
    ind = _induced(sm.F2_EMBEDDING, q, a)
    low, up = sm.f2_connection(sm.F2Point(*q), a)
    np.testing.assert_allclose(ind.metric, sm.f2_metric(sm.F2Point(*q)), rtol=1e-14)
    np.testing.assert_allclose(ind.christoffel_lower, low, atol=1e-13)
    np.testing.assert_allclose(ind.christoffel_upper, up, atol=1e-13)


def test_f2_moments():
    p = sm.F2Point(2.0, 2.0)
    assert sm.f2_covariance(p) == 0.0 and sm.f2_correlation(p) == 0.0
    assert sm.f2_correlation(sm.F2Point(1, 2)) == pytest.approx(3 / 7)
    q = sm.F2Point(2, 1)
    assert sm.f2_covariance(q) == pytest.approx(-3 / 16)
    e = lambda fn: oracle.expectation(sm.F2_FAMILY, q.as_array(), fn)
    ex, ey = e(lambda x, y: x), e(lambda x, y: y)
    assert e(lambda x, y: (x - ex) * (y - ey)) == pytest.approx(-3 / 16, rel=1e-9)
    for r in POINTS2:
        assert sm.f2_correlation(sm.F2Point(*r)) == pytest.approx(distribution.correlation(sm.F2Point(*r).embed()))


# ----------------------------------------------------------------- F3


def test_f3_examples():
    np.testing.assert_allclose(sm.f3_metric(sm.F3Point(1, 1)), [[0.75, 0.25], [0.25, 0.75]])
    assert sm.f3_connection(sm.F3Point(1, 1), 0.0)[1, 1, 0] == pytest.approx(0.25)
    # the tabulated formula at alpha = 1 evaluates to -1/2; the pulled-back connection agrees
    assert sm.f3_connection(sm.F3Point(1, 1), 1.0)[0, 0, 0] == pytest.approx(-0.5)


@pytest.mark.parametrize("q", POINTS2)
@pytest.mark.parametrize("a", ALPHAS)
def test_f3_matches_pullback_and_is_flat(q, a):
    p = sm.F3Point(*q)
    ind = _induced(sm.F3_EMBEDDING, q, a)
    np.testing.assert_allclose(ind.metric, sm.f3_metric(p), rtol=1e-13)
    np.testing.assert_allclose(ind.christoffel_upper, sm.f3_connection(p, a), atol=1e-12)
    np.testing.assert_allclose(ind.christoffel_lower, sm.f3_christoffel_lower(p, a), atol=1e-12)
    assert np.max(np.abs(sm.f3_curvature(p, a))) <= 1e-8


@settings(max_examples=30, deadline=None)
@given(positive, positive)
def test_f3_moments_match_ambient(a, b):
    p = sm.F3Point(a, b)
    assert sm.f3_covariance(p) == pytest.approx(distribution.covariance(p.embed()), rel=1e-12)
    assert sm.f3_correlation(p) == pytest.approx(distribution.correlation(p.embed()), rel=1e-12)


# -------------------------------------------------------------- ACBED


def test_acbed_reparametrization_examples():
    np.testing.assert_allclose(sm.ACBED_EMBEDDING.embed(np.array([1.0, 0.0, 1.0])), [1, 1, 1, 1])
    f = sm.acbed_to_freund(sm.ACBEDPoint(1, 1, 1))
    assert f.alpha1 == 1.5 and f.beta1 == 2.0
    with pytest.raises(DomainError):
        sm.ACBEDPoint(1.0, 0.0, 1.0)


@pytest.mark.parametrize("q", POINTS3)
def test_acbed_density_matches_composed_freund(q):
    p = sm.ACBEDPoint(*q)
    xs, ys = np.meshgrid(np.linspace(0, 3, 17), np.linspace(0, 3, 13))
    np.testing.assert_allclose(
        sm.acbed_density(p, xs, ys), distribution.joint_density(sm.acbed_to_freund(p), xs, ys), rtol=1e-12
    )


def test_acbed_jacobian_and_hessian_by_differences():
    for q in POINTS3:
        q = np.array(q)
        np.testing.assert_allclose(
            tensors.partial_derivatives(sm.ACBED_EMBEDDING.embed, q).T, sm.ACBED_EMBEDDING.jacobian(q), atol=1e-9
        )
        hess = tensors.partial_derivatives(sm.ACBED_EMBEDDING.jacobian, q)  # [b, i, a]
        np.testing.assert_allclose(hess.transpose(1, 2, 0), sm.ACBED_EMBEDDING.hessian(q), atol=1e-9)


def test_acbed_metric_examples():
    g = sm.acbed_metric(sm.ACBEDPoint(1, 1, 1))
    np.testing.assert_array_equal(g, g.T)
    assert g[0, 2] == pytest.approx(-5 / 36)


@pytest.mark.parametrize("q", POINTS3)
def test_acbed_metric_matches_pullback_and_quadrature(q):
    g = sm.acbed_metric(sm.ACBEDPoint(*q))
    np.testing.assert_allclose(_induced(sm.ACBED_EMBEDDING, q, 0.0).metric, g, rtol=1e-12)
    np.testing.assert_allclose(oracle.family_fisher_metric(sm.ACBED_FAMILY, q), g, rtol=1e-6)
    assert np.all(np.linalg.eigvalsh(g) > 0)


@pytest.mark.parametrize("q", POINTS3)
@pytest.mark.parametrize("a", (-1.0, 0.0, 0.5))
def test_acbed_connection_matches_quadrature(q, a):
    ind = sm.acbed_connection(sm.ACBEDPoint(*q), a)
    num = oracle.family_christoffel_lower(sm.ACBED_FAMILY, q, a)
    np.testing.assert_allclose(num, ind.christoffel_lower, atol=1e-9 * np.max(np.abs(ind.christoffel_lower)))


def test_acbed_general_family_is_curved():
    R = sm.acbed_curvature(sm.ACBEDPoint(1, 1, 1), 0.0)
    assert np.max(np.abs(R)) > 1e-3
    np.testing.assert_allclose(tensors.bianchi_residual(R), 0.0, atol=1e-8)


def test_acbed_moments():
    p = sm.ACBEDPoint(1, 1, 1)
    assert sm.acbed_covariance(p) == pytest.approx(7 / 144)
    assert abs(sm.acbed_covariance(sm.ACBEDPoint(0.7, 1e-200, 2.0))) <= 1e-15
    for q in POINTS3:
        r = sm.ACBEDPoint(*q)
        f = sm.acbed_to_freund(r)
        assert sm.acbed_covariance(r) == pytest.approx(distribution.covariance(f), rel=1e-12)
        assert sm.acbed_correlation(r) == pytest.approx(distribution.correlation(f), rel=1e-12)
        assert sm.acbed_correlation(r) > 0
        t = np.linspace(0, 4, 9)
        fx, fy = sm.acbed_marginals(r, t)
        np.testing.assert_allclose(fx, distribution.marginal_x(f, t), rtol=1e-12)
        np.testing.assert_allclose(fy, distribution.marginal_y(f, t), rtol=1e-12)
        total, _ = integrate.quad(lambda u: sm.acbed_marginals(r, u)[0], 0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-8)


# ----------------------------------------------------- symmetric ACBED


def test_symmetric_acbed_examples():
    fam = sm.acbed_symmetric_family(1.0, 1.0)
    assert fam.metric[0, 0] == pytest.approx(25 / 36)
    np.testing.assert_array_equal(sm.acbed_symmetric_family(1.0, 1.0, 1.0).christoffel_lower, 0.0)


@pytest.mark.parametrize("q", POINTS2)
@pytest.mark.parametrize("a", ALPHAS)
def test_symmetric_acbed_consistency(q, a):
    fam = sm.acbed_symmetric_family(*q, a)
    ind = _induced(sm.ACBED_SYMMETRIC_EMBEDDING, q, a)
    np.testing.assert_allclose(ind.metric, fam.metric, rtol=1e-13)
    np.testing.assert_allclose(ind.christoffel_lower, fam.christoffel_lower, atol=1e-12)
    np.testing.assert_allclose(ind.christoffel_upper, fam.christoffel_upper, atol=1e-12)
    np.testing.assert_allclose(
        tensors.lower_christoffel(fam.christoffel_upper, fam.metric), fam.christoffel_lower, atol=1e-12
    )
    assert np.max(np.abs(sm.acbed_symmetric_curvature(*q, a))) <= 1e-8


@pytest.mark.parametrize("q", POINTS2)
def test_symmetric_acbed_potential(q):
    fam = sm.acbed_symmetric_family(*q)
    psi = lambda x: sm.acbed_symmetric_family(*x).potential.value
    grad = tensors.partial_derivatives(psi, np.array(q))
    np.testing.assert_allclose(grad, fam.dual_coords, rtol=1e-9)
    hess = tensors.partial_derivatives(lambda x: sm.acbed_symmetric_family(*x).dual_coords, np.array(q))
    np.testing.assert_allclose(hess, fam.metric, rtol=1e-7)
    theta = np.array(q)
    assert fam.potential.value + fam.dual_potential == pytest.approx(theta @ fam.dual_coords, abs=1e-13)
    np.testing.assert_allclose(oracle.family_fisher_metric(sm.ACBED_SYMMETRIC_FAMILY, q), fam.metric, rtol=1e-6)


# ------------------------------------------------ quadrature on submodels


@pytest.mark.parametrize(
    "family,metric,point",
    [
        (sm.F1_FAMILY, lambda q: sm.f1_metric(sm.F1Point(*q)), sm.F1Point),
        (sm.F2_FAMILY, lambda q: sm.f2_metric(sm.F2Point(*q)), sm.F2Point),
        (sm.F3_FAMILY, lambda q: sm.f3_metric(sm.F3Point(*q)), sm.F3Point),
    ],
)
def test_submanifold_metrics_match_quadrature(family, metric, point):
    for q in POINTS2:
        np.testing.assert_allclose(oracle.family_fisher_metric(family, q), metric(q), rtol=1e-6, atol=1e-12)


@pytest.mark.parametrize("a", (-1.0, 0.0, 1.0))
def test_submanifold_connections_match_quadrature(a):
    for q in POINTS2:
        for fam, low in (
            (sm.F1_FAMILY, sm.f1_connection(sm.F1Point(*q), a)[0]),
            (sm.F2_FAMILY, sm.f2_connection(sm.F2Point(*q), a)[0]),
            (sm.F3_FAMILY, sm.f3_christoffel_lower(sm.F3Point(*q), a)),
        ):
            num = oracle.family_christoffel_lower(fam, q, a)
            np.testing.assert_allclose(num, low, atol=1e-9 * max(1.0, np.max(np.abs(low))))


def test_points_validate():
    for cls in (sm.F1Point, sm.F2Point, sm.F3Point):
        with pytest.raises(DomainError):
            cls(1.0, -2.0)
    with pytest.raises(DomainError):
        sm.F2DualPoint(-1.0, 0.0)
    assert sm.ACBEDPoint(1, 2, 3).lam == 6
