"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import io
import math
from fractions import Fraction

import numpy as np
import pytest

from bohrkit import families as fam
from bohrkit import harness, radii
from bohrkit import series as ps
from bohrkit.cli import main
from bohrkit.radii import RadiusSetting


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return _report


def test_1_radius_agreement(report):
    worst = 0.0
    for sid in ("classical", "derivative", "odd_majorization", "odd_derivative", "a_tilde"):
        worst = max(worst, radii.compute(RadiusSetting(sid)).discrepancy)
    expected = {
        "classical": 1 / 3,
        "derivative": 1 - math.sqrt(2 / 3),
        "odd_majorization": 1 / math.sqrt(3),
        "odd_derivative": math.sqrt((4 - math.sqrt(13)) / 3),
    }
    worst_cf = max(abs(radii.closed_form(RadiusSetting(k)) - v) for k, v in expected.items())
    at = radii.compute(RadiusSetting("a_tilde"))
    ok = worst <= 1e-9 and worst_cf <= 1e-15 and abs(at.closed_form - 0.361103) <= 1e-6
    report(1, "closed form vs bisection within 1e-9, a_tilde ~ 0.361103", ok,
           f"max discrepancy {worst:.2e}, a_tilde {at.closed_form:.9f}")


def test_2_verification_suites(report):
    out = io.StringIO()
    code = main(["verify", "--suite", "all", "--seed", "42", "--order", "256", "--samples", "100"], out)
    base = harness.run_all(seed=42, order=256, samples=100)
    min_margin = min(r.min_margin() for r in base)
    verdicts = {o: [r.verdict for r in harness.run_all(seed=42, order=o, samples=100)] for o in (64, 1024)}
    ref = [r.verdict for r in base]
    ok = code == 0 and min_margin >= -1e-9 and all(v == ref for v in verdicts.values())
    report(2, "verify --suite all exits 0, margins >= -1e-9, same verdicts at order 64/1024", ok,
           f"exit {code}, min margin {min_margin:.3e}, verdicts {sorted(set(ref))}")


def test_3_sharpness_convergence(report):
    details = []
    ok = True
    for which in ("classical", "lemma_B", "derivative", "odd_majorization", "odd_derivative"):
        ths = [radii.family_threshold(a, which) for a in fam.DEFAULT_A_GRID]
        limit = radii.closed_form(RadiusSetting(which))
        decreasing = all(b < a for a, b in zip(ths, ths[1:]))
        gap = ths[-1] - limit
        ok = ok and decreasing and 0 < gap < 2e-2
        details.append(f"{which} gap {gap:.2e}")
    for suite in ("derivative", "odd-derivative", "lemma-B", "odd-majorization"):
        rep = harness.run_suite(suite, seed=42, order=256, samples=1)
        exhibits = [c for c in rep.negative if f"a={harness.VIOLATION_A}" in c.description]
        ok = ok and len(exhibits) == 1 and exhibits[0].passed
        ok = ok and math.isclose(exhibits[0].r, rep.radius + 0.01)
    report(3, "thresholds decrease to the radii, violation exhibits fail at radius + 0.01", ok, "; ".join(details))


def test_4_counterexamples(report):
    ce = harness.counterexample("remark-f0", rs=(0.1, 0.3))
    rows_ok = all(row["difference"] > 0 and abs(row["difference"] - 2 * row["r"]) <= 1e-12 for row in ce.values["rows"])
    lu = harness.counterexample("local-univalence", alpha1=0.5)
    v = lu.values
    lu_ok = (
        lu.confirmed
        and v["forced_g_prime_at_alpha1"] == 0.0
        and v["actual_g_prime_at_alpha1"] != 0.0
        and 0.5 not in v["solutions_of_g_prime_eq_0_in_[0,1]"]
        and set(v["solutions_of_g_prime_eq_0_in_[0,1]"]) == {0.0, 1.0}
    )
    report(4, "remark-f0 difference = 2r > 0; local-univalence forces g'(0.5) = 0 but g'(0.5) != 0",
           ce.confirmed and rows_ok and lu_ok, f"g'(0.5) = {v['actual_g_prime_at_alpha1']}")


def test_5_bombieri_bound(report):
    rng = np.random.default_rng(42)
    worst = -math.inf
    count = 0
    for a in (0.4, 0.6, 0.8):
        for _ in range(50):
            c0 = a * np.exp(2j * np.pi * rng.random())
            fmap = harness.sample_schwarz(rng).shifted(c0)
            f = harness.expand(fmap, 256, a)
            for r in np.linspace(a / 16, a, 16):
                m = ps.majorant_eval(f, r)
                worst = max(worst, m.upper - a - radii.bombieri_bound(a, r))
            count += 1
    report(5, "M_f(r) - |a0| <= r(1-|a0|^2)/(1-|a0|r) + 1e-9 for 150 sampled self-maps", worst <= 1e-9 and count == 150,
           f"largest excess {worst:.2e}")


def test_6_applications(report):
    alpha = math.sqrt(3) / 2
    beta = math.sqrt(1 - alpha * alpha)
    delta_s = alpha / (1 + beta)
    rs = radii.spherical_rs(alpha)
    m_s = ps.majorant_eval(fam.k_alpha(alpha, 256), rs)
    sph_ok = abs(rs - 0.5) <= 1e-12 and abs(m_s.upper - delta_s) <= 1e-9 and abs(m_s.lower - delta_s) <= 1e-9
    m_c = ps.majorant_eval(fam.k_convex(0.5, 256), 0.5)
    conv_ok = abs(radii.convex_rc(4 / 3, 2 / 3) - 0.5) <= 1e-12 and abs(m_c.upper - 2 / 3) <= 1e-9 and abs(m_c.lower - 2 / 3) <= 1e-9
    equiv_ok = True
    for al in np.linspace(0.01, 0.999, 200):
        if abs(al - radii.SQRT3_2) < 1e-9:
            continue
        b = math.sqrt(1 - al * al)
        equiv_ok &= (1 / (1 + 2 * b) <= b) == (al <= radii.SQRT3_2)
    for r2 in np.linspace(0.2, 5.0, 40):
        for d in np.linspace(0.05, 3.0, 40):
            if d >= r2 or abs(r2 - 2 * d) < 1e-9:
                continue
            equiv_ok &= (r2 / (3 * r2 - 2 * d) <= (r2 - d) / r2) == (r2 >= 2 * d)
    report(6, "k_alpha and k_a attain the delta bound at r_s = r_c = 1/2; hypothesis equivalences hold",
           sph_ok and conv_ok and bool(equiv_ok), f"M_k_alpha(1/2) = {m_s.upper:.15f}, M_k_a(1/2) = {m_c.upper:.15f}")


def _exact(z):
    return (Fraction(z.real), Fraction(z.imag))


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _pmul_exact(p, q):
    out = [(Fraction(0), Fraction(0))] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            xy = _cmul(x, y)
            out[i + j] = (out[i + j][0] + xy[0], out[i + j][1] + xy[1])
    return out


def _compose_exact(f, phi):
    out = [(Fraction(0), Fraction(0))]
    for c in reversed(f):
        out = _pmul_exact(out, phi)
        out[0] = (out[0][0] + c[0], out[0][1] + c[1])
    return out


def _to_complex(p):
    return np.array([complex(float(x), float(y)) for x, y in p])


def test_7_oracle_equivalences(report):
    # exact rational arithmetic on the (binary) float inputs is the oracle
    rng = np.random.default_rng(2024)

    def disk(k):
        return np.sqrt(rng.random(k)) * np.exp(2j * np.pi * rng.random(k))

    worst = 0.0
    n = 40
    for _ in range(200):
        da, db = rng.integers(0, 7, size=2)
        a, b = disk(da + 1), disk(db + 1)
        phi = np.r_[0.0, disk(max(db, 1))]
        ea, eb, ephi = ([_exact(z) for z in v] for v in (a, b, phi))
        prod = ps.mul(ps.polynomial(a, n), ps.polynomial(b, n)).coeffs
        ref = _to_complex(_pmul_exact(ea, eb))
        worst = max(worst, float(np.abs(prod[: len(ref)] - ref).max()), float(np.abs(prod[len(ref):]).max(initial=0)))
        comp = ps.compose(ps.polynomial(a, n), ps.polynomial(phi, n)).coeffs
        ref = _to_complex(_compose_exact(ea, ephi))[: n + 1]
        worst = max(worst, float(np.abs(comp[: len(ref)] - ref).max()))
    fam_ok = True
    kinds = {
        "mobius_fa": "a", "xi_a": "a", "g_a": "a", "k_a_convex": "a",
        "k_alpha": "alpha", "intro_square": "alpha1", "remark_product": None,
    }
    for kind, key in kinds.items():
        for _ in range(20):
            params = {key: float(0.02 + 0.96 * rng.random())} if key else {}
            spec = fam.FamilySpec(kind, params)
            r = float(0.95 * rng.random())
            for which in ("function", "derivative"):
                f = fam.generate(spec, 64)
                if which == "derivative":
                    f = ps.derivative(f)
                direct = float(np.sum(np.abs(f.coeffs) * r ** np.arange(f.order + 1)))
                closed = fam.closed_majorant(spec, which)(r)
                fam_ok &= -1e-12 <= closed - direct <= f.tail.bound(r) + 1e-12 * max(1.0, closed)
    report(7, "mul/compose match exact expansion to 1e-12; closed majorants within the tail bound",
           worst <= 1e-12 and bool(fam_ok), f"max coefficient error {worst:.2e}")
