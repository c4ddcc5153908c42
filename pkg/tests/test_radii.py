import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrkit import families as fam
from bohrkit import radii
from bohrkit.exceptions import BracketError, DomainError, VerificationError
from bohrkit.radii import RadiusSetting

# oracles computed independently of the package (numpy.roots, direct sums)
A_TILDE_ORACLE = float(
    [x.real for x in np.roots([1, 0, 2, 2, -1]) if abs(x.imag) < 1e-12 and 0 < x.real < 1][0]
)


def _odd_derivative_oracle():
    # 2 sum_{k>=1} (2k+1) r^(2k) = 1, summed directly to k = 10^4
    k = np.arange(1, 10001)

    def h(r):
        return 2 * np.sum((2 * k + 1) * r ** (2 * k)) - 1

    lo, hi = 0.0, 0.9
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if h(mid) < 0 else (lo, mid)
    return lo


@pytest.mark.parametrize(
    "sid,params,expected",
    [
        ("classical", {}, 1 / 3),
        ("lemma_B", {}, 1 / 3),
        ("derivative", {}, 0.18350341907227397),
        ("odd_majorization", {}, 0.5773502691896258),
        ("odd_derivative", {}, _odd_derivative_oracle()),
        ("a_tilde", {}, A_TILDE_ORACLE),
        ("r_a0", {"a0": 0.5}, (math.sqrt(2.5) - 1.5) / 0.25),
        ("spherical_rs", {"alpha": math.sqrt(3) / 2}, 0.5),
        ("convex_rc", {"R2": 4 / 3, "delta": 2 / 3}, 0.5),
        ("bombieri_radius", {"a0": 0.6}, 0.6),
    ],
)
def test_closed_form_and_bisection_agree(sid, params, expected):
    res = radii.compute(RadiusSetting(sid, params))
    assert res.closed_form == pytest.approx(expected, abs=1e-12)
    assert res.discrepancy <= 1e-9
    assert res.bisected == pytest.approx(expected, abs=1e-9)


def test_named_decimals():
    assert radii.closed_form(RadiusSetting("derivative")) == pytest.approx(0.1835034, abs=1e-7)
    assert radii.closed_form(RadiusSetting("odd_derivative")) == pytest.approx(0.3626057, abs=1e-7)
    assert radii.closed_form(RadiusSetting("r_a0", {"a0": 0.5})) == pytest.approx(0.3245553, abs=1e-7)
    assert radii.A_TILDE == pytest.approx(0.361103, abs=1e-6)
    assert radii.psi1(radii.A_TILDE) == pytest.approx(0.0, abs=1e-14)


def test_convex_rc_rounded_input():
    v = radii.convex_rc(1.3333333, 0.6666667)
    assert v == pytest.approx(0.5, abs=1e-6)


def test_bisect_root_examples():
    r0 = radii.bisect_root(lambda r: 2 * (1 / (1 - r) ** 2 - 1) <= 1, 0.0, 0.9, 1e-12)
    assert r0 == pytest.approx(1 - math.sqrt(2 / 3), abs=1e-12)
    r1 = radii.bisect_root(lambda r: 3 * r**4 - 8 * r * r + 1 >= 0, 0.0, 0.9, 1e-12)
    assert r1 == pytest.approx(_odd_derivative_oracle(), abs=1e-11)
    x = radii.bisect_root(lambda x: radii.psi1(x) <= 0, 0.0, 1.0, 1e-12)
    assert x == pytest.approx(A_TILDE_ORACLE, abs=1e-12)
    with pytest.raises(BracketError):
        radii.bisect_root(lambda r: False, 0.0, 1.0)
    with pytest.raises(BracketError):
        radii.bisect_root(lambda r: True, 0.0, 1.0)


def test_bisection_iteration_count():
    res = radii.compute(RadiusSetting("derivative"))
    assert res.iterations <= math.ceil(math.log2((radii.BISECT_HI - 0.0) / radii.BISECT_TOL))


def test_psi1_at_upper_estimate():
    x = 2 * math.sqrt(3) - 3
    assert radii.psi1(x) == pytest.approx(908 - 524 * math.sqrt(3), abs=1e-12)
    assert radii.psi1(x) > 0 and radii.A_TILDE < x


@pytest.mark.parametrize(
    "which,a,expected",
    [
        ("derivative", 0.0, 0.5),
        ("lemma_B", 0.5, 0.5),
        ("classical", 0.25, 2 / 3),
        ("odd_majorization", 0.5, 1 / math.sqrt(2)),
        ("intro_mobius", 0.6, 0.6 / 1.8),
    ],
)
def test_family_threshold_examples(which, a, expected):
    assert radii.family_threshold(a, which) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("which", ["classical", "odd_majorization", "intro_mobius"])
@pytest.mark.parametrize("a", [0.05, 0.3, 0.6, 0.9, 0.99])
def test_threshold_bisection_matches_closed_form(which, a):
    assert radii.family_threshold_bisected(a, which) == pytest.approx(
        radii.family_threshold_closed(a, which), abs=1e-10
    )


@pytest.mark.parametrize("which", ["classical", "lemma_B", "derivative", "odd_majorization", "odd_derivative"])
def test_thresholds_decrease_toward_limit(which):
    ths = [radii.family_threshold(a, which) for a in fam.DEFAULT_A_GRID]
    assert all(b < a for a, b in zip(ths, ths[1:]))
    limit = radii.closed_form(RadiusSetting(which))
    assert ths[-1] > limit and ths[-1] - limit < 2e-2


def test_derivative_majorant_monotone_in_a_and_r():
    a = np.linspace(0, 0.99, 50)[:, None]
    r = np.linspace(0.01, 0.99, 50)[None, :]
    m = (1 + a) * (r / (1 - a * r) + r / (1 - a * r) ** 2) - 1
    assert np.all(np.diff(m, axis=0) > 0)
    assert np.all(np.diff(m, axis=1) > 0)


@pytest.mark.parametrize("which", ["derivative", "lemma_B", "odd_derivative"])
def test_infimum_over_family(which):
    res = radii.infimum_over_family(which, [0, 0.5, 0.9, 0.999])
    assert res.argmin == 0.999
    assert 0 < res.gap < 1e-2


def test_infimum_rejects_non_monotone_grid(monkeypatch):
    with pytest.raises(DomainError):
        radii.infimum_over_family("intro_mobius", [0.1])
    with pytest.raises(DomainError):
        radii.infimum_over_family("derivative", [])
    # grid minimum not at the largest a is reported, not hidden
    res = radii.infimum_over_family("derivative", [0.999, 0.5])
    assert res.argmin == 0.999
    monkeypatch.setattr(radii, "family_threshold", lambda a, which: 0.4 + 0.1 * a)
    with pytest.raises(VerificationError, match="not at the largest"):
        radii.infimum_over_family("derivative", [0.5, 0.999, 0.2])
    monkeypatch.setattr(radii, "family_threshold", lambda a, which: 0.1)
    with pytest.raises(VerificationError, match="does not exceed"):
        radii.infimum_over_family("derivative", [0.5])


def test_coefficient_ratio_radius_examples():
    assert radii.lemma1_radius(fam.mobius(0.4, 300).coeffs) == pytest.approx(0.4, abs=1e-12)
    assert radii.lemma1_radius(fam.geometric(2.0, 0.3, 1, 300).coeffs, m=1) == pytest.approx(0.3, abs=1e-12)
    al = 0.6
    assert radii.lemma1_radius(fam.k_alpha(al, 300).coeffs, m=1) == pytest.approx(0.8, abs=1e-12)
    r, n, interior = radii.lemma1_argmin([1, 1, 0.5, 0.1, 0.09], m=0)
    assert r == pytest.approx(0.2) and n == 2 and interior
    with pytest.raises(DomainError):
        radii.lemma1_radius([1, 1, 0, 1])
    res = radii.compute(RadiusSetting("lemma1_ratio", {"coeffs": list(fam.mobius(0.3, 300).coeffs)}))
    assert res.discrepancy <= 1e-9


def test_bombieri_bound_examples():
    assert radii.bombieri_bound(0.5, 0.3) == pytest.approx(0.225 / 0.85)
    assert radii.bombieri_bound(0.5, 0.0) == 0.0
    assert radii.bombieri_bound(0.5, 0.5) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        radii.bombieri_bound(0.5, 0.6)


@pytest.mark.parametrize(
    "sid,params,needle",
    [
        ("convex_rc", {"R2": 1.0, "delta": 0.9}, "R2 >= 2*delta"),
        ("spherical_rs", {"alpha": 0.9}, "sqrt(3)/2"),
        ("r_a0", {"a0": 0.2}, "a_tilde"),
        ("convex_rc", {"R2": 1.0}, "R2 and delta"),
        ("nope", {}, "unknown"),
    ],
)
def test_hypothesis_violations_are_named(sid, params, needle):
    with pytest.raises(DomainError, match=needle.replace("(", r"\(").replace(")", r"\)").replace("*", r"\*")):
        RadiusSetting(sid, params)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 4.0), st.floats(0.05, 3.0))
def test_convex_rc_below_a_iff_hypothesis(r2, delta):
    if delta >= r2 or abs(r2 - 2 * delta) < 1e-9:
        return
    big_a, big_b = radii.convex_subordinator(r2, delta)
    rc = r2 / (3 * r2 - 2 * delta)
    assert (rc <= big_a + 1e-15) == (r2 >= 2 * delta)
    if r2 >= 2 * delta:
        # B r / (1 - A r) = delta at r_c
        assert big_b * rc / (1 - big_a * rc) == pytest.approx(delta, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 0.9999))
def test_spherical_rs_below_beta_iff_alpha_small(alpha):
    if abs(alpha - radii.SQRT3_2) < 1e-9:
        return
    beta = math.sqrt(1 - alpha * alpha)
    rs = 1 / (1 + 2 * beta)
    assert (rs <= beta) == (alpha <= radii.SQRT3_2)


@settings(max_examples=100, deadline=None)
@given(st.floats(4 / 3, 6.0), st.floats(0.0, 1.0))
def test_delta_free_lower_bound(r2, t):
    dmin = r2 - math.sqrt(r2 * r2 - r2)
    delta = dmin + t * (r2 / 2 - dmin)
    lower = r2 / (r2 + 2 * math.sqrt(r2 * r2 - r2))
    assert lower <= r2 / (3 * r2 - 2 * delta) + 1e-15


@settings(max_examples=100, deadline=None)
@given(st.floats(0.5000001, 2 / 3))
def test_small_delta_variant_implies_hypothesis(delta):
    assert delta * delta / (2 * delta - 1) >= 2 * delta - 1e-15


def test_extremal_k_a_parameters():
    # k_a has delta = 1/(1+a) and R2 = 1/(1-a^2); its subordinator is itself
    for a in (0.5, 0.7, 0.9):
        delta, r2 = 1 / (1 + a), 1 / (1 - a * a)
        big_a, big_b = radii.convex_subordinator(r2, delta)
        assert big_a == pytest.approx(a) and big_b == pytest.approx(1.0)
        assert radii.convex_rc(r2, delta) == pytest.approx(1 / (1 + 2 * a))


def test_result_to_dict():
    d = radii.compute(RadiusSetting("classical")).to_dict()
    assert set(d) == {"setting", "closed_form", "bisected", "discrepancy", "iterations"}
