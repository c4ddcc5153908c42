import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrkit import families as fam
from bohrkit import series as ps
from bohrkit.exceptions import DomainError, FormatError, PreconditionError
from bohrkit.series import EXACT, TailBound, TruncatedSeries

cplx = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
small_poly = st.lists(cplx, min_size=1, max_size=7)


def brute_tail_sum(c, rho, start, k, r, terms=20000):
    n = np.arange(start, start + terms, dtype=float)
    logb = sum(np.log1p(n / i) for i in range(1, k + 1)) if k else 0.0
    return float(np.sum(c * np.exp(logb + n * np.log(rho * r))))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("rho,r,start", [(0.9, 0.5, 3), (0.5, 0.9, 10), (1.0, 0.3, 0), (0.7, 0.7, 25)])
def test_tail_bound_matches_direct_summation(k, rho, r, start):
    t = TailBound(1.7, rho, start, k)
    assert t.bound(r) == pytest.approx(brute_tail_sum(1.7, rho, start, k, r), rel=1e-10)


def test_tail_bound_edge_cases():
    assert EXACT.bound(0.9) == 0.0
    assert TailBound(1.0, 1.0, 5).bound(1.0) == math.inf
    assert TailBound(2.0, 0.5, 0).bound(0.0) == 2.0  # the n = 0 term
    with pytest.raises(DomainError):
        TailBound(1.0, 1.5, 0)
    with pytest.raises(DomainError):
        TailBound(-1.0, 0.5, 0)
    with pytest.raises(DomainError):
        TailBound(1.0, 0.5, 3).coeff_bound(2)


def test_polynomial_pads_and_truncates():
    f = ps.polynomial([1, 2, 3], 5)
    assert f.order == 5 and f.tail.is_exact
    np.testing.assert_array_equal(f.coeffs, [1, 2, 3, 0, 0, 0])
    g = ps.polynomial([1, 2, 3, 4], 1)
    assert g.order == 1
    m = ps.majorant_eval(g, 0.5)
    assert m.lower == pytest.approx(2.0)
    assert m.upper >= 1 + 2 * 0.5 + 3 * 0.25 + 4 * 0.125 - 1e-15


def test_majorant_eval_examples():
    assert ps.majorant_eval(ps.zero(4), 0.5) == ps.MajorantValue(0.0, 0.0)
    m = ps.majorant_eval(fam.xi(0.5, 200), 0.5)
    assert m.lower == pytest.approx(0.5, abs=1e-12)
    assert m.upper == pytest.approx(0.5, abs=1e-12)
    loose = ps.majorant_eval(ps.TruncatedSeries([1, 2, 3]), 0.5)
    assert not loose.certified and loose.lower == loose.upper == 2.75
    for bad in (-0.1, 1.0, 2.0):
        with pytest.raises(DomainError):
            ps.majorant_eval(ps.one(3), bad)


def test_majorant_geometric_closed_form():
    f = fam.geometric(2.0, 0.5, 1, 40)
    for r in (0.1, 0.5, 0.9):
        m = ps.majorant_eval(f, r)
        exact = 2 * r / (1 - 0.5 * r)
        assert m.lower <= exact + 1e-15 <= m.upper + 2e-15
        assert m.upper - m.lower < 1e-9


@settings(max_examples=60, deadline=None)
@given(small_poly, small_poly)
def test_mul_matches_polynomial_product(a, b):
    n = len(a) + len(b)
    prod = ps.mul(ps.polynomial(a, n), ps.polynomial(b, n))
    expected = np.convolve(np.array(a, complex), np.array(b, complex))
    np.testing.assert_allclose(prod.coeffs[: len(expected)], expected, atol=1e-12)
    assert prod.tail.is_exact


@settings(max_examples=60, deadline=None)
@given(small_poly, small_poly.map(lambda p: [0j] + p[:4]))
def test_compose_matches_expansion(f, phi):
    n = 30
    got = ps.compose(ps.polynomial(f, n), ps.polynomial(phi, n))
    expected = np.zeros(1, complex)
    for c in reversed(f):
        expected = np.convolve(expected, np.array(phi, complex))
        expected[0] += c
    m = min(len(expected), n + 1)
    np.testing.assert_allclose(got.coeffs[:m], expected[:m], atol=1e-10 * max(1, np.abs(expected).max()))


def test_compose_requires_phi_zero_at_origin():
    with pytest.raises(PreconditionError):
        ps.compose(ps.identity(5), ps.polynomial([0.1, 1.0], 5))


@settings(max_examples=40, deadline=None)
@given(small_poly, small_poly, st.floats(0.0, 0.95))
def test_majorant_subadditive_and_submultiplicative(a, b, r):
    f, g = ps.polynomial(a, 20), ps.polynomial(b, 20)
    mf, mg = ps.majorant_eval(f, r).upper, ps.majorant_eval(g, r).upper
    assert ps.majorant_eval(ps.add(f, g), r).lower <= mf + mg + 1e-12
    assert ps.majorant_eval(ps.mul(f, g), r).lower <= mf * mg * (1 + 1e-12) + 1e-12


def _envelope_holds(series, reference):
    """``reference`` holds more coefficients of the same function."""
    t = series.tail
    for n in range(t.start, reference.order + 1):
        assert abs(reference.coeffs[n]) <= t.coeff_bound(n) * (1 + 1e-9) + 1e-15


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(0.0, 0.9), st.integers(0, 3), st.integers(5, 20))
def test_mul_tail_is_valid(p, q, shift, n):
    f = fam.geometric(1.0, p, shift, n)
    g = fam.geometric(0.5, -q, 0, n, const=1.0)
    big = ps.mul(fam.geometric(1.0, p, shift, 200), fam.geometric(0.5, -q, 0, 200, const=1.0))
    _envelope_holds(ps.mul(f, g), big)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.95), st.integers(1, 3), st.integers(6, 20))
def test_compose_with_monomial_tail_is_valid(a, p, n):
    f = fam.geometric(1.0, a, 1, n)
    h = ps.compose(f, ps.monomial(p, n))
    big = ps.compose(fam.geometric(1.0, a, 1, 300), ps.monomial(p, 300))
    _envelope_holds(h, big)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 0.95), st.integers(3, 20))
def test_derivative_and_shift_tails_are_valid(a, n):
    f = fam.xi(a, n)
    big = fam.xi(a, 300)
    _envelope_holds(ps.derivative(f), ps.derivative(big))
    _envelope_holds(ps.derivative(ps.derivative(f)), ps.derivative(ps.derivative(big)))
    _envelope_holds(ps.shift_div_z(f), ps.shift_div_z(big))


def test_composition_with_self_map_uses_sup_tail():
    w = fam.sample_schwarz(3, 4, 30)
    g = ps.compose(ps.polynomial([1, 2, 3], 30), w)
    assert g.tail is not None and g.tail.rho == 1.0
    big = ps.compose(ps.polynomial([1, 2, 3], 400), fam.sample_schwarz(3, 4, 400))
    _envelope_holds(g, big)


def test_derivative_and_shift():
    f = ps.polynomial([1, 2, 3, 4])
    np.testing.assert_array_equal(ps.derivative(f).coeffs, [2, 6, 12])
    assert ps.derivative(ps.constant(3.0, 0)).coeffs.tolist() == [0]
    np.testing.assert_array_equal(ps.shift_div_z(ps.polynomial([0, 5, 6])).coeffs, [5, 6])
    with pytest.raises(PreconditionError):
        ps.shift_div_z(ps.polynomial([1, 5]))


@settings(max_examples=30, deadline=None)
@given(small_poly, cplx.filter(lambda z: abs(z) < 0.9))
def test_odd_even_parts(a, z):
    f = ps.polynomial(a, 10)
    o, e = ps.odd_part(f), ps.even_part(f)
    assert np.allclose((o + e).coeffs, f.coeffs)
    assert o(z) == pytest.approx((f(z) - f(-z)) / 2, abs=1e-10)
    assert e(z) == pytest.approx((f(z) + f(-z)) / 2, abs=1e-10)


def test_reciprocal_and_power():
    f = ps.polynomial([2.0, 1.0, 0.5], 20)
    inv = ps.reciprocal(f)
    prod = ps.kernels.cauchy_product(f.coeffs, inv.coeffs, 20)
    np.testing.assert_allclose(prod, np.r_[1, np.zeros(20)], atol=1e-14)
    with pytest.raises(PreconditionError):
        ps.reciprocal(ps.identity(3))
    np.testing.assert_allclose(ps.power(ps.polynomial([1, 1], 4), 3).coeffs, [1, 3, 3, 1, 0])


def test_rational_series_matches_geometric():
    f = ps.rational([0, 2.0], [1, -0.5], 30, sup_bound=4.0)
    np.testing.assert_allclose(f.coeffs, fam.geometric(2.0, 0.5, 1, 30).coeffs, atol=1e-15)
    assert f.tail == TailBound(4.0, 1.0, 31)
    g = ps.rational([1, 2], [2], 4)
    assert g.tail.is_exact and np.allclose(g.coeffs, [0.5, 1, 0, 0, 0])
    with pytest.raises(PreconditionError):
        ps.rational([1], [0, 1], 5)


def test_evaluation_and_error_bound():
    f = fam.k_convex(0.5, 60)
    z = 0.4 * np.exp(1j * np.linspace(0, 6, 7))
    exact = z / (1 - 0.5 * z)
    assert np.max(np.abs(f(z) - exact)) <= ps.evaluation_error(f, 0.4) + 1e-15
    assert ps.evaluation_error(ps.TruncatedSeries([1.0]), 0.3) == math.inf


def test_json_round_trip(tmp_path):
    f = fam.g_family(0.3, 12)
    path = tmp_path / "g.json"
    ps.save(f, path)
    h = ps.load(path)
    np.testing.assert_array_equal(h.coeffs, f.coeffs)
    assert h.tail == f.tail and h.sup_bound == f.sup_bound
    d = json.loads(ps.dumps(ps.derivative(f)))
    assert d["tail"]["k"] == 1
    plain = ps.loads('{"coeffs": [1, [0, 2]], "tail": null}')
    np.testing.assert_array_equal(plain.coeffs, [1, 2j])
    assert plain.tail is None


@pytest.mark.parametrize(
    "text",
    [
        "{oops",
        "[]",
        '{"coeffs": []}',
        '{"coeffs": ["a"]}',
        '{"coeffs": [1], "tail": {"c": 1}}',
        '{"coeffs": [1], "tail": {"c": 1, "rho": 2, "start": 1}}',
        '{"coeffs": [1, 2], "tail": {"c": 1, "rho": 0.5, "start": 9}}',
    ],
)
def test_malformed_documents_raise_format_error(text):
    with pytest.raises(FormatError):
        ps.loads(text)


def test_operators():
    f = ps.polynomial([1, 1], 3)
    g = ps.polynomial([0, 2], 3)
    np.testing.assert_array_equal((f + g).coeffs, [1, 3, 0, 0])
    np.testing.assert_array_equal((f - g).coeffs, [1, -1, 0, 0])
    np.testing.assert_array_equal((f * g).coeffs, [0, 2, 2, 0])
    np.testing.assert_array_equal((2 * f).coeffs, [2, 2, 0, 0])
    assert f(0.5) == pytest.approx(1.5)
    assert ps.truncate(f, 0).tail.c > 0
    assert isinstance(repr(f), str)
    with pytest.raises(DomainError):
        TruncatedSeries([])
    with pytest.raises(DomainError):
        TruncatedSeries([np.nan])


def test_tail_bound_survives_underflow_of_rho_power():
    # c is huge and rho**n underflows, yet c * rho**n is representable
    t = TailBound(7.237005575144066e75, 1.175494351e-38, 2)
    assert t.coeff_bound(9) == pytest.approx(7.237005575144066e75 * 1.175494351e-38**7 * 1.175494351e-38**2, rel=1e-12)
    assert t.coeff_bound(9) > 0
    assert t.bound(0.5) == pytest.approx(7.237005575144066e75 * (1.175494351e-38 * 0.5) ** 2, rel=1e-12)
