import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from xlq.errors import ConvergenceError
from xlq.polycore import (
    ModelParams,
    RealPoly,
    conjugate_pairing_defect,
    exceptional_poly,
    laguerre,
    poly_roots,
    xi,
    xi_x,
    xl_ode_residual,
)

coeff = st.floats(-5, 5, allow_nan=False)
polys = st.lists(coeff, min_size=1, max_size=7).map(RealPoly)


def laguerre_series(n, alpha, y):
    """Explicit sum: L_n^a(y) = sum_k (-1)^k C(n+a, n-k) y^k / k!."""
    return sum(
        (-1) ** k * special.binom(n + alpha, n - k) * y**k / math.factorial(k)
        for k in range(n + 1)
    )


@given(st.integers(0, 9), st.floats(-0.9, 6), st.floats(-4, 4))
def test_laguerre_matches_explicit_sum(n, alpha, y):
    assert laguerre(n, alpha)(y) == pytest.approx(laguerre_series(n, alpha, y), rel=1e-10, abs=1e-10)


@given(st.integers(0, 9), st.floats(-0.9, 6), st.floats(0, 8))
def test_laguerre_matches_scipy(n, alpha, y):
    ref = special.eval_genlaguerre(n, alpha, y)
    assert laguerre(n, alpha)(y) == pytest.approx(ref, rel=1e-9, abs=1e-9)


def test_laguerre_low_orders_by_hand():
    assert list(laguerre(1, 0.5).coeffs) == [1.5, -1.0]
    # L_2^a(y) = ((a+1)(a+2) - 2(a+2) y + y^2) / 2
    np.testing.assert_allclose(laguerre(2, 1.0).coeffs, [3.0, -3.0, 0.5])


@given(polys, polys, st.floats(-3, 3))
def test_polynomial_ring_evaluation(p, q, x):
    assert (p * q)(x) == pytest.approx(p(x) * q(x), rel=1e-9, abs=1e-9)
    assert (p + q)(x) == pytest.approx(p(x) + q(x), rel=1e-9, abs=1e-9)


@given(polys, st.floats(-2, 2))
def test_derivative_product_rule(p, x):
    q = RealPoly([1.0, -2.0, 0.5])
    lhs = (p * q).deriv()(x)
    rhs = p.deriv()(x) * q(x) + p(x) * q.deriv()(x)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


@given(st.lists(st.floats(-3, 3).filter(lambda r: abs(r) > 0.05), min_size=1, max_size=6, unique=True))
def test_roots_of_product_form(rs):
    rs = sorted(rs)
    if min(np.diff(rs), default=1.0) < 0.05:
        return
    p = RealPoly([1.0])
    for r in rs:
        p = p * RealPoly([-r, 1.0])
    found = poly_roots(p)
    np.testing.assert_allclose(np.sort(found.roots.real), rs, atol=1e-8)
    assert found.residual_bound <= 1e-10


def test_root_multiplicity_and_conjugates():
    p = RealPoly([1.0, 0.0, 1.0]) * RealPoly([-1.0, 1.0]) ** 2
    r = poly_roots(p)
    assert sorted(r.multiplicity.tolist()) == [1, 1, 2]
    assert conjugate_pairing_defect(r.roots) < 1e-12
    assert r.off_axis().size == 2


def test_even_polynomial_solved_in_u():
    p = RealPoly([4.0, 0.0, -5.0, 0.0, 1.0])  # (x^2-1)(x^2-4)
    np.testing.assert_allclose(np.sort(poly_roots(p).roots.real), [-2, -1, 1, 2], atol=1e-13)


def test_constant_has_no_roots():
    with pytest.raises(ValueError):
        poly_roots(RealPoly([3.0]))


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0.0, 1)
    with pytest.raises(ValueError):
        ModelParams(1.0, -1)
    with pytest.raises(ValueError):
        ModelParams(1.0, 1.5)
    assert ModelParams(2.0, 3).a == 5.0


@given(st.floats(0.6, 5), st.integers(1, 4))
def test_xi_zeros_purely_imaginary(g, ell):
    roots = poly_roots(xi_x(ModelParams(g, ell))).roots
    assert roots.size == 2 * ell
    assert np.max(np.abs(roots.real)) <= 1e-8


def test_xi_ell1_by_hand():
    # L_1^a(-u) = 1 + a + u with a = g - 1/2
    np.testing.assert_allclose(xi(ModelParams(2.0, 1)).coeffs, [2.5, 1.0])
    np.testing.assert_allclose(xi(ModelParams(2.0, 1), 1).coeffs, [3.5, 1.0])


@given(st.floats(0.6, 4.5), st.integers(0, 3), st.integers(0, 4))
def test_exceptional_poly_solves_ode(g, ell, n):
    p = ModelParams(g, ell)
    poly = exceptional_poly(n, p)
    assert poly.degree == 2 * (n + ell)
    assert poly.is_even()
    assert xl_ode_residual(n, p, poly) <= 1e-9


@given(st.floats(0.6, 4.5), st.integers(1, 3), st.integers(0, 4))
def test_exceptional_poly_root_census(g, ell, n):
    r = poly_roots(exceptional_poly(n, ModelParams(g, ell)))
    real = r.real()
    assert np.count_nonzero(real > 0) == n
    assert r.off_axis().size == 2 * ell


def test_ground_state_poly_is_shifted_xi():
    p = ModelParams(1.7, 2)
    a = exceptional_poly(0, p)
    b = xi_x(p, 1).monic()
    np.testing.assert_allclose(a.coeffs, b.coeffs, rtol=1e-11, atol=1e-12)


def test_ell_zero_reduces_to_laguerre():
    # hat P_{0,n}(x^2) ∝ L_n^(g - 1/2)(x^2)
    p = ModelParams(1.3, 0)
    got = exceptional_poly(3, p)
    ref = laguerre(3, 0.8).coeffs
    ref_x = np.zeros(7)
    ref_x[::2] = ref / ref[-1]
    np.testing.assert_allclose(got.coeffs, ref_x, rtol=1e-11)


def test_flipped_ode_has_no_polynomial_solution():
    p = ModelParams(1.0, 1)
    poly = exceptional_poly(1, p)
    assert xl_ode_residual(2, p, poly) > 1e-3


def test_root_residual_guard(monkeypatch):
    import xlq.polycore as pc

    monkeypatch.setattr(pc, "ROOT_RESIDUAL_TOL", -1.0)
    with pytest.raises(ConvergenceError):
        pc.poly_roots(RealPoly([-1.0, 0.0, 0.0, 1.0]))
