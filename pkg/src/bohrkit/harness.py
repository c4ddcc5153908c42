"""Verification suites for the Bohr-type inequalities.

Every suite draws seeded witnesses, evaluates certified majorant enclosures
at the claimed radius and on a grid below it, scans the extremal family
towards the limiting parameter, and exhibits violations just above the
radius. A positive check compares the upper value of the left side against
the lower value of the right side; a negative check needs the lower value of
the left side to exceed the upper value of the right side.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from bohrkit import families as fam
from bohrkit import radii
from bohrkit import series as ps
from bohrkit.exceptions import DomainError
from bohrkit.families import RationalMap

SUITES = (
    "classical",
    "lemma-B",
    "derivative",
    "derivative-compare",
    "odd-majorization",
    "odd-derivative",
    "lemma-1",
    "bombieri",
    "spherical",
    "bounded-convex",
)

TOL = 1e-9
VIOLATION_OFFSET = 0.01
VIOLATION_A = 0.999
MIN_ORDER = 32
SUBGRID = (0.25, 0.5, 0.75, 1.0)
CIRCLE_POINTS = 720
PARTIAL_SUM_TERMS = 64
BOMBIERI_MODULI = (0.4, 0.6, 0.8)
TAIL_TARGET = 1e-15
MAX_EXPANSION = 8192
CSV_SCHEMA = "# bohrkit report csv v1: suite,kind,description,r,lhs,rhs,margin,passed"


def fmt(x) -> str:
    """Locale-free decimal with 15 significant digits."""
    return f"{float(x):.15g}"


def _round15(x):
    if isinstance(x, float):
        return float(fmt(x)) if math.isfinite(x) else str(x)
    if isinstance(x, dict):
        return {k: _round15(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round15(v) for v in x]
    if isinstance(x, (np.floating,)):
        return _round15(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


# ------------------------------------------------------------------- reports


@dataclass(frozen=True)
class Check:
    """One inequality instance ``lhs <= rhs`` (positive) or ``lhs > rhs`` (negative).

    For positive checks ``lhs`` is an upper and ``rhs`` a lower bound; for
    negative checks the roles swap.
    """

    description: str
    r: float
    lhs: float
    rhs: float
    kind: str = "positive"

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        if self.kind == "positive":
            return self.margin >= -TOL
        return self.lhs > self.rhs

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "kind": self.kind,
            "r": self.r,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class Counterexample:
    name: str
    description: str
    values: dict
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "values": self.values,
            "confirmed": self.confirmed,
        }


@dataclass
class TheoremReport:
    suite_id: str
    radius: float
    seed: int
    order: int
    samples: int
    checks: List[Check] = field(default_factory=list)
    sharpness_table: List[tuple] = field(default_factory=list)
    sharpness_monotone: Optional[bool] = None
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        ok = all(c.passed for c in self.checks)
        ok = ok and all(c.confirmed for c in self.counterexamples)
        ok = ok and self.sharpness_monotone is not False
        return "pass" if ok else "fail"

    @property
    def positive(self) -> List[Check]:
        return [c for c in self.checks if c.kind == "positive"]

    @property
    def negative(self) -> List[Check]:
        return [c for c in self.checks if c.kind == "negative"]

    def min_margin(self) -> float:
        return min((c.margin for c in self.positive), default=math.inf)

    def failures(self) -> List[str]:
        out = [f"{c.kind} check failed: {c.description} at r={fmt(c.r)}" for c in self.checks if not c.passed]
        out += [f"counterexample not confirmed: {c.name}" for c in self.counterexamples if not c.confirmed]
        if self.sharpness_monotone is False:
            out.append("sharpness table is not strictly decreasing above the radius")
        return out

    def to_dict(self) -> dict:
        return _round15(
            {
                "suite": self.suite_id,
                "verdict": self.verdict,
                "radius": self.radius,
                "seed": self.seed,
                "order": self.order,
                "samples": self.samples,
                "min_margin": self.min_margin(),
                "checks": [c.to_dict() for c in self.checks],
                "sharpness_table": [list(row) for row in self.sharpness_table],
                "sharpness_monotone": self.sharpness_monotone,
                "counterexamples": [c.to_dict() for c in self.counterexamples],
                "failures": self.failures(),
            }
        )

    def summary(self) -> str:
        return (
            f"{self.suite_id:<20s} {self.verdict:<4s} checks={len(self.checks):<5d} "
            f"min_margin={fmt(self.min_margin())}"
        )


def reports_to_json(reports: Sequence[TheoremReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_to_csv(reports: Sequence[TheoremReport]) -> str:
    buf = io.StringIO()
    buf.write(CSV_SCHEMA + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "kind", "description", "r", "lhs", "rhs", "margin", "passed"])
    for rep in reports:
        for c in rep.checks:
            w.writerow([rep.suite_id, c.kind, c.description, fmt(c.r), fmt(c.lhs), fmt(c.rhs), fmt(c.margin), int(c.passed)])
    return buf.getvalue()


# ------------------------------------------------------------------ sampling


def _disk_point(rng, max_mod: float = fam.MAX_ZERO_MODULUS) -> complex:
    return complex(max_mod * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random()))


def _unimodular(rng) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def _zeros(rng):
    d = int(rng.integers(0, fam.MAX_WITNESS_DEGREE + 1))
    return [_disk_point(rng) for _ in range(d)]


def sample_self_map(rng) -> RationalMap:
    """A self-map ``(B + c0) / (1 + conj(c0) B)`` with ``B`` a sampled Blaschke product.

    Every third draw keeps ``c0 = 0``, so finite Blaschke products themselves
    (including unimodular constants) are represented.
    """
    zeros = _zeros(rng)
    u = _unimodular(rng)
    c0 = _disk_point(rng) if rng.random() < 2 / 3 else 0j
    return fam.blaschke_map(zeros, with_z=False, unimodular=u).shifted(c0)


def sample_schwarz(rng) -> RationalMap:
    """``w(z) = z * phi(z)`` with ``phi`` a sampled self-map."""
    return sample_self_map(rng).times_z()


def sample_polynomial(rng, vanish_at_zero: bool = False, odd: bool = False) -> np.ndarray:
    d = int(rng.integers(1, fam.MAX_WITNESS_DEGREE + 1))
    a = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    if vanish_at_zero:
        a[0] = 0
    if odd:
        # z * h(z^2) with deg h = d
        out = np.zeros(2 * d + 2, dtype=np.complex128)
        out[1::2] = a
        return out
    return a


def _poly_map(a) -> RationalMap:
    return RationalMap(a, [1.0], float(np.abs(a).sum()))


# ------------------------------------------------------------------- helpers


def expand(fmap: RationalMap, order: int, rmax: float) -> ps.TruncatedSeries:
    """Taylor expansion of a rational witness, long enough for its tail at ``rmax``.

    Witness tails come from the sup-norm envelope ``|a_n| <= sup``, which is
    loose close to the unit circle. The expansion runs past ``order`` until
    that envelope is below ``TAIL_TARGET`` at ``rmax``, so verdicts do not
    depend on the working order.
    """
    n = order
    S = fmap.sup
    if math.isfinite(S) and S > 0 and 0 < rmax < 1:
        need = math.log(TAIL_TARGET * (1 - rmax) / S) / math.log(rmax)
        n = max(order, min(MAX_EXPANSION, int(math.ceil(need)) + 32))
    return fmap.series(n)


def _grid(radius: float):
    return [min(radius * k, 0.999) for k in SUBGRID]


def _M(f: ps.TruncatedSeries, r: float) -> ps.MajorantValue:
    return ps.majorant_eval(f, r)


def _le(desc: str, r: float, lhs: ps.MajorantValue, rhs) -> Check:
    """Positive check ``lhs <= rhs`` from enclosures (``rhs`` may be a float)."""
    rl = rhs.lower if isinstance(rhs, ps.MajorantValue) else float(rhs)
    return Check(desc, r, lhs.upper, rl)


def _gt(desc: str, r: float, lhs: ps.MajorantValue, rhs) -> Check:
    """Negative check: ``lhs > rhs`` is exhibited."""
    ru = rhs.upper if isinstance(rhs, ps.MajorantValue) else float(rhs)
    return Check(desc, r, lhs.lower, ru, kind="negative")


def _strictly_decreasing_above(table, radius: float) -> bool:
    th = [t for _, t in table]
    return all(b < a for a, b in zip(th, th[1:])) and all(t > radius for t in th)


class _Ctx:
    def __init__(self, suite_index, seed, order, samples, offset):
        self.rng = np.random.default_rng([seed, suite_index])
        self.order = order
        self.samples = samples
        self.offset = offset


def _family_sharpness(rep: TheoremReport, which: str, radius: float):
    table = [(a, radii.family_threshold(a, which)) for a in fam.DEFAULT_A_GRID]
    rep.sharpness_table = table
    rep.sharpness_monotone = _strictly_decreasing_above(table, radius)


# ------------------------------------------------------------------- suites


def _suite_classical(ctx: _Ctx, rep: TheoremReport):
    R = 1 / 3
    Ra = R + ctx.offset
    for i in range(ctx.samples):
        f = expand(sample_self_map(ctx.rng), ctx.order, Ra)
        for r in _grid(Ra):
            rep.checks.append(_le(f"self-map #{i}: M_f <= 1", r, _M(f, r), 1.0))
    for a in fam.DEFAULT_A_GRID:
        f = fam.mobius(a, ctx.order)
        rep.checks.append(_le(f"mobius a={a}: M_f <= 1", Ra, _M(f, Ra), 1.0))
    _family_sharpness(rep, "classical", R)
    r = R + VIOLATION_OFFSET
    rep.checks.append(_gt(f"mobius a={VIOLATION_A}: M_f > 1", r, _M(fam.mobius(VIOLATION_A, ctx.order), r), 1.0))


def _suite_lemma_b(ctx: _Ctx, rep: TheoremReport):
    R = 1 / 3
    Ra = R + ctx.offset
    n = ctx.order
    for i in range(ctx.samples):
        w = sample_schwarz(ctx.rng)
        if i % 2 == 0:
            a = sample_polynomial(ctx.rng)
            f = ps.polynomial(a, n)
            g = expand(w.into_polynomial(a), n, Ra)
            label = "polynomial"
        else:
            c0 = _disk_point(ctx.rng)
            f = fam.mobius(c0, n)
            g = expand(w.shifted(c0), n, Ra)
            label = "mobius"
        for r in _grid(Ra):
            rep.checks.append(_le(f"{label} #{i}: M_(f o w) <= M_f", r, _M(g, r), _M(f, r)))
    # f = z, g = xi_a is a subordinate pair
    for a in fam.DEFAULT_A_GRID:
        rep.checks.append(_le(f"xi a={a} vs z: M_g <= r", Ra, _M(fam.xi(a, n), Ra), Ra))
    _family_sharpness(rep, "lemma_B", R)
    r = R + VIOLATION_OFFSET
    rep.checks.append(_gt(f"xi a={VIOLATION_A} vs z: M_g > r", r, _M(fam.xi(VIOLATION_A, n), r), r))


def _suite_derivative(ctx: _Ctx, rep: TheoremReport):
    R = radii.closed_form(radii.RadiusSetting("derivative"))
    Ra = R + ctx.offset
    n = ctx.order
    for i in range(ctx.samples):
        dw = ps.derivative(expand(sample_schwarz(ctx.rng), n, Ra))
        for r in _grid(Ra):
            rep.checks.append(_le(f"schwarz #{i}: M_w' <= 1", r, _M(dw, r), 1.0))
    for a in fam.DEFAULT_A_GRID:
        rep.checks.append(_le(f"xi a={a}: M_xi' <= 1", Ra, _M(ps.derivative(fam.xi(a, n)), Ra), 1.0))
    _family_sharpness(rep, "derivative", R)
    r = R + VIOLATION_OFFSET
    d = ps.derivative(fam.xi(VIOLATION_A, n))
    rep.checks.append(_gt(f"xi a={VIOLATION_A}: M_xi' > 1", r, _M(d, r), 1.0))
    rep.counterexamples.append(intro_derivative())


def _suite_derivative_compare(ctx: _Ctx, rep: TheoremReport):
    R = radii.closed_form(radii.RadiusSetting("derivative"))
    Ra = R + ctx.offset
    n = ctx.order
    for i in range(ctx.samples):
        # (i) subordination g = f o w
        a = sample_polynomial(ctx.rng)
        w = sample_schwarz(ctx.rng)
        df = ps.derivative(ps.polynomial(a, n))
        dg = ps.derivative(expand(w.into_polynomial(a), n, Ra))
        for r in _grid(Ra):
            rep.checks.append(_le(f"subordinate #{i}: M_g' <= M_f'", r, _M(dg, r), _M(df, r)))
        # (ii) majorization g = phi f with f(0) = 0
        b = sample_polynomial(ctx.rng, vanish_at_zero=True)
        phi = sample_self_map(ctx.rng)
        df = ps.derivative(ps.polynomial(b, n))
        dg = ps.derivative(expand(_poly_map(b).times(phi), n, Ra))
        for r in _grid(Ra):
            rep.checks.append(_le(f"majorized #{i}: M_g' <= M_f'", r, _M(dg, r), _M(df, r)))
    for a in fam.DEFAULT_A_GRID:
        rep.checks.append(_le(f"xi a={a} vs z: M_g' <= 1", Ra, _M(ps.derivative(fam.xi(a, n)), Ra), 1.0))
    _family_sharpness(rep, "derivative", R)
    r = R + VIOLATION_OFFSET
    d = ps.derivative(fam.xi(VIOLATION_A, n))
    rep.checks.append(_gt(f"xi a={VIOLATION_A} vs z: M_g' > 1", r, _M(d, r), 1.0))
    # without f(0) = 0 the comparison fails at every r > 0
    f = fam.generate(fam.FamilySpec("remark_product"), n)
    dg = ps.derivative(f)
    df = ps.derivative(ps.polynomial([1.0, 1.0], n))
    rep.checks.append(_gt("g = z(z+1), f = z+1: M_g' > M_f'", R, _M(dg, R), _M(df, R)))
    rep.counterexamples.append(remark_f0((0.1, 0.3, R)))
    rep.counterexamples.append(local_univalence())


def _odd_pairs(ctx: _Ctx, i: int):
    """Odd majorized pair (g = psi(z^2) f) and odd subordinate pair (g = f(z psi(z^2)))."""
    a = sample_polynomial(ctx.rng, odd=True)
    psi = sample_self_map(ctx.rng)
    even = psi.of_square()
    g_maj = _poly_map(a).times(even)
    g_sub = even.times_z().into_polynomial(a)
    return a, g_maj, g_sub


def _suite_odd(ctx: _Ctx, rep: TheoremReport, use_derivative: bool):
    if use_derivative:
        R = radii.closed_form(radii.RadiusSetting("odd_derivative"))
        which, tag = "odd_derivative", "'"
    else:
        R = radii.closed_form(radii.RadiusSetting("odd_majorization"))
        which, tag = "odd_majorization", ""
    Ra = R + ctx.offset
    n = ctx.order
    op = ps.derivative if use_derivative else (lambda s: s)
    for i in range(ctx.samples):
        a, g_maj, g_sub = _odd_pairs(ctx, i)
        f = ps.polynomial(a, n)
        gm = expand(g_maj, n, Ra)
        gs = expand(g_sub, n, Ra)
        scale = float(np.abs(a).sum())
        for label, g in (("majorized", gm), ("subordinate", gs)):
            even = float(np.abs(g.coeffs[0::2]).max())
            # parity: even coefficients vanish up to rounding relative to the scale
            rep.checks.append(Check(f"{label} #{i}: g is odd", 0.0, even / max(scale, 1.0), 0.0))
            df, dg = op(f), op(g)
            for r in _grid(Ra):
                rep.checks.append(_le(f"{label} #{i}: M_g{tag} <= M_f{tag}", r, _M(dg, r), _M(df, r)))
    # f = z, g = g_a (odd, |g_a| <= |z|)
    rhs = (lambda r: 1.0) if use_derivative else (lambda r: r)
    for a in fam.DEFAULT_A_GRID:
        g = op(fam.g_family(a, n))
        rep.checks.append(_le(f"g_a a={a} vs z: M_g{tag} <= M_z{tag}", Ra, _M(g, Ra), rhs(Ra)))
    _family_sharpness(rep, which, R)
    r = R + VIOLATION_OFFSET
    g = op(fam.g_family(VIOLATION_A, n))
    rep.checks.append(_gt(f"g_a a={VIOLATION_A} vs z: M_g{tag} > M_z{tag}", r, _M(g, r), rhs(r)))


def _lemma1_witness(rng, kind: int, n: int):
    """``(f, map, m)`` for the three coefficient shapes covered by the coefficient-ratio radius."""
    if kind == 0:
        a0 = (0.2 + 0.5 * rng.random()) * _unimodular(rng)
        return fam.mobius(a0, n), RationalMap([a0, 1.0], [1.0, a0.conjugate()], 1.0), 0
    if kind == 1:
        A = 0.1 + 0.6 * rng.random()
        B = 0.5 + 1.5 * rng.random()
        return fam.geometric(B, A, 1, n), RationalMap([0.0, B], [1.0, -A], B / (1 - A)), 1
    m = int(rng.integers(0, 3))
    q = 0.2 + 0.6 * rng.random()
    p = rng.normal(size=3) + 1j * rng.normal(size=3)
    num = np.r_[np.zeros(m), p]
    rm = RationalMap(num, [1.0, -q], float(np.abs(p).sum()) / (1 - q))
    return rm.series(n), rm, m


def _suite_lemma1(ctx: _Ctx, rep: TheoremReport):
    n = ctx.order
    for i in range(ctx.samples):
        f, fmap, m = _lemma1_witness(ctx.rng, i % 3, n)
        R = radii.lemma1_radius(f.coeffs, m, min(radii.LEMMA1_HORIZON, n))
        Ra = min(R + ctx.offset, 0.999)
        g = expand(fmap.after(sample_schwarz(ctx.rng)), n, Ra)
        for r in _grid(Ra):
            rep.checks.append(_le(f"shape {i % 3} #{i} (m={m}): M_g <= M_f", r, _M(g, r), _M(f, r)))
    # Mobius coefficients have constant ratio |a0| from n = 1 on
    rep.sharpness_table = [
        (a, radii.lemma1_radius(fam.mobius(a, n).coeffs, 0, min(radii.LEMMA1_HORIZON, n)))
        for a in (0.2, 0.3, 0.4, 0.5, 0.6, 0.7)
    ]
    for a, rad in rep.sharpness_table:
        rep.checks.append(Check(f"mobius a={a}: ratio radius = |a0|", a, abs(rad - a), 0.0))
    # partial sums for nondecreasing coefficient moduli
    T = min(n, PARTIAL_SUM_TERMS)
    rgrid = np.arange(1, 10) / 10
    for i in range(ctx.samples):
        m = int(ctx.rng.integers(0, 3))
        mags = np.r_[np.zeros(m), np.cumsum(ctx.rng.random(T + 1 - m))]
        a = mags * np.exp(2j * np.pi * ctx.rng.random(T + 1))
        w = sample_schwarz(ctx.rng).series(T)
        b = ps.kernels.compose_horner(a, w.coeffs)
        for r in rgrid:
            pw = r ** np.arange(T + 1)
            lhs = np.cumsum(np.abs(b[m:]) * pw[m:])
            rhs = np.cumsum(np.abs(a[m:]) * pw[m:])
            j = int(np.argmin(rhs - lhs))
            rep.checks.append(
                Check(f"monotone #{i} (m={m}): partial sum to t={m + j}", float(r), float(lhs[j]), float(rhs[j]))
            )


def circle_sup_bound(func: Callable, r: float, curvature: float, points: int = CIRCLE_POINTS, tol: float = 1e-13, max_depth: int = 40) -> float:
    """Certified upper bound for ``max |func|`` on ``|z| = r``.

    ``curvature`` must bound ``|d^2/dtheta^2 |func(r e^{i theta})|^2|``. On an
    arc of length ``L`` the function exceeds the larger endpoint value by at
    most ``curvature * L^2 / 8``; arcs whose bound is not within ``tol`` of the
    best sampled value are bisected.
    """
    th = 2 * np.pi * np.arange(points + 1) / points
    h = np.abs(func(r * np.exp(1j * th))) ** 2
    best = float(h.max())
    lo, hi = th[:-1], th[1:]
    hlo, hhi = h[:-1], h[1:]
    L = 2 * np.pi / points
    for _ in range(max_depth):
        ub = np.maximum(hlo, hhi) + curvature * L * L / 8
        keep = ub > best + tol
        if not np.any(keep):
            # every dropped arc was within tol of a sampled value
            return math.sqrt(best + tol)
        lo, hi, hlo, hhi = lo[keep], hi[keep], hlo[keep], hhi[keep]
        mid = 0.5 * (lo + hi)
        hm = np.abs(func(r * np.exp(1j * mid))) ** 2
        best = max(best, float(hm.max()))
        lo, hi = np.r_[lo, mid], np.r_[mid, hi]
        hlo, hhi = np.r_[hlo, hm], np.r_[hm, hhi]
        L /= 2
    ub = np.maximum(hlo, hhi) + curvature * L * L / 8
    return math.sqrt(max(best + tol, float(ub.max())))


def _curvature(f: ps.TruncatedSeries, r: float) -> float:
    """Bound for ``|d^2/dtheta^2 |f(r e^{i theta})|^2|`` from derivative majorants."""
    d1 = ps.derivative(f)
    d2 = ps.derivative(d1)
    m0, m1, m2 = _M(f, r).upper, _M(d1, r).upper, _M(d2, r).upper
    return 2 * m0 * (r * r * m2 + r * m1) + 2 * r * r * m1 * m1


def _bombieri_rhs(a: float, r: float) -> float:
    if r <= a:
        return radii.bombieri_bound(a, r)
    return r * (1 - a * a) / (1 - a * r)


def _suite_bombieri(ctx: _Ctx, rep: TheoremReport):
    n = ctx.order
    for a in BOMBIERI_MODULI:
        ra = radii.r_a0(a) + ctx.offset
        top = min(a + ctx.offset, 0.999)
        rgrid = [top * k / 8 for k in range(1, 9)]
        # the rotated Mobius map is the equality case
        identity = RationalMap([0.0, 1.0], [1.0], 1.0)
        witnesses = [(f"rotated mobius |a0|={a}", identity.shifted(a * _unimodular(ctx.rng)))]
        for i in range(ctx.samples):
            c0 = a * _unimodular(ctx.rng)
            witnesses.append((f"T(w) |a0|={a} #{i}", sample_schwarz(ctx.rng).shifted(c0)))
        for label, fmap in witnesses:
            f = expand(fmap, n, max(top, ra))
            for r in rgrid:
                lhs = _M(f, r)
                rep.checks.append(
                    Check(f"{label}: M_f - |a0| <= bombieri bound", r, lhs.upper - a, _bombieri_rhs(a, r))
                )
            sup = circle_sup_bound(fmap, ra, _curvature(f, ra))
            rep.checks.append(Check(f"{label}: |f| + M_f - |a0| <= 1", ra, sup + _M(f, ra).upper - a, 1.0))
    # r_x <= x exactly when x >= a_tilde
    at = radii.A_TILDE
    for x in np.linspace(0.05, 0.995, 96):
        if abs(x - at) < 1e-6:
            continue
        rx = radii.r_a0(x) if x >= at else (math.sqrt((1 + x) ** 2 + x * x) - (1 + x)) / (x * x)
        if x >= at:
            rep.checks.append(Check(f"x={fmt(x)} >= a_tilde: r_x <= x", float(x), rx, float(x)))
        else:
            rep.checks.append(Check(f"x={fmt(x)} < a_tilde: r_x > x", float(x), float(x), rx - 1e-15))
    grid = (0.37, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, VIOLATION_A)
    rep.sharpness_table = [(x, radii.r_a0(x)) for x in grid]
    r = radii.r_a0(VIOLATION_A) + VIOLATION_OFFSET
    f = fam.mobius(VIOLATION_A, n)
    val = abs(ps.evaluate(f, r)) - ps.evaluation_error(f, r) + _M(f, r).lower - VIOLATION_A
    rep.checks.append(Check(f"mobius a={VIOLATION_A}: |f| + M_f - |a0| > 1", r, val, 1.0, kind="negative"))


def _suite_spherical(ctx: _Ctx, rep: TheoremReport):
    n = ctx.order
    top = radii.SQRT3_2
    for i in range(ctx.samples):
        alpha = 0.2 + (top - 0.2) * ctx.rng.random()
        beta = math.sqrt(1 - alpha * alpha)
        delta = alpha / (1 + beta)
        rs = radii.spherical_rs(alpha) + ctx.offset
        f = expand(sample_self_map(ctx.rng).into_spherical(alpha), n, rs)
        for r in _grid(rs):
            rep.checks.append(_le(f"alpha={fmt(alpha)} #{i}: M_f <= delta", r, _M(f, r), delta))
    table = []
    for alpha in (0.2, 0.4, 0.6, 0.8, top):
        beta = math.sqrt(1 - alpha * alpha)
        delta = alpha / (1 + beta)
        rs = radii.spherical_rs(alpha)
        table.append((alpha, rs))
        k = fam.k_alpha(alpha, n)
        rep.checks.append(_le(f"k_alpha alpha={fmt(alpha)}: M <= delta", rs + ctx.offset, _M(k, rs + ctx.offset), delta))
        r = rs + VIOLATION_OFFSET
        rep.checks.append(_gt(f"k_alpha alpha={fmt(alpha)}: M > delta", r, _M(k, r), delta))
    rep.sharpness_table = table
    # r_s <= sqrt(1 - alpha^2) exactly when alpha <= sqrt(3)/2
    for alpha in np.linspace(0.01, 0.999, 100):
        if abs(alpha - top) < 1e-9:
            continue
        beta = math.sqrt(1 - alpha * alpha)
        rs = 1 / (1 + 2 * beta)
        if alpha <= top:
            rep.checks.append(Check(f"alpha={fmt(alpha)} <= sqrt(3)/2: r_s <= beta", float(alpha), rs, beta))
        else:
            rep.checks.append(Check(f"alpha={fmt(alpha)} > sqrt(3)/2: r_s > beta", float(alpha), beta, rs - 1e-15))


def _suite_bounded_convex(ctx: _Ctx, rep: TheoremReport):
    n = ctx.order
    for i in range(ctx.samples):
        delta = 0.5 + 0.4 * ctx.rng.random()
        R2 = 2 * delta * (1 + 2 * ctx.rng.random())
        A, B = radii.convex_subordinator(R2, delta)
        rc = radii.convex_rc(R2, delta) + ctx.offset
        F = RationalMap([0.0, B], [1.0, -A], B / (1 - A))
        g = expand(F.after(sample_schwarz(ctx.rng)), n, rc)
        for r in _grid(rc):
            rep.checks.append(_le(f"R2={fmt(R2)} delta={fmt(delta)} #{i}: M_g <= delta", r, _M(g, r), delta))
    table = []
    for a in (0.5, 0.6, 0.7, 0.8, 0.9, 0.99, VIOLATION_A):
        delta, R2 = 1 / (1 + a), 1 / (1 - a * a)
        rc = radii.convex_rc(R2, delta)
        table.append((a, rc))
        k = fam.k_convex(a, n)
        rep.checks.append(_le(f"k_a a={a}: M <= delta", rc + ctx.offset, _M(k, rc + ctx.offset), delta))
        r = rc + VIOLATION_OFFSET
        rep.checks.append(_gt(f"k_a a={a}: M > delta", r, _M(k, r), delta))
    rep.sharpness_table = table
    rep.sharpness_monotone = _strictly_decreasing_above(table, 1 / 3)
    # r_c <= A exactly when R2 >= 2 delta
    for R2 in np.linspace(0.6, 4.0, 18):
        for delta in np.linspace(0.3, 1.9, 17):
            if delta >= R2 or abs(R2 - 2 * delta) < 1e-9:
                continue
            A = (R2 - delta) / R2
            rc = R2 / (3 * R2 - 2 * delta)
            d = f"R2={fmt(R2)} delta={fmt(delta)}"
            if R2 >= 2 * delta:
                rep.checks.append(Check(f"{d}: r_c <= A", float(R2), rc, A))
            else:
                rep.checks.append(Check(f"{d}: r_c > A", float(R2), A, rc - 1e-15))
    # delta-free lower bound for delta >= R2 - sqrt(R2^2 - R2)
    # the range for delta is nonempty once R2 >= 4/3
    for R2 in np.linspace(4 / 3, 5.0, 12):
        dmin = R2 - math.sqrt(R2 * R2 - R2)
        lower = R2 / (R2 + 2 * math.sqrt(R2 * R2 - R2))
        for delta in np.linspace(dmin, R2 / 2, 6):
            rc = R2 / (3 * R2 - 2 * delta)
            rep.checks.append(Check(f"R2={fmt(R2)} delta={fmt(delta)}: delta-free bound <= r_c", float(R2), lower, rc))
    # delta in (1/2, 2/3] forces R2 >= delta^2/(2 delta - 1) >= 2 delta
    for delta in np.linspace(0.51, 2 / 3, 12):
        rep.checks.append(
            Check(f"delta={fmt(delta)}: 2 delta <= delta^2/(2 delta - 1)", float(delta), 2 * delta, delta * delta / (2 * delta - 1))
        )


_RUNNERS = {
    "classical": (_suite_classical, 1 / 3),
    "lemma-B": (_suite_lemma_b, 1 / 3),
    "derivative": (_suite_derivative, 1 - math.sqrt(2 / 3)),
    "derivative-compare": (_suite_derivative_compare, 1 - math.sqrt(2 / 3)),
    "odd-majorization": (lambda c, r: _suite_odd(c, r, False), 1 / math.sqrt(3)),
    "odd-derivative": (lambda c, r: _suite_odd(c, r, True), math.sqrt((4 - math.sqrt(13)) / 3)),
    "lemma-1": (_suite_lemma1, math.nan),
    "bombieri": (_suite_bombieri, math.nan),
    "spherical": (_suite_spherical, math.nan),
    "bounded-convex": (_suite_bounded_convex, math.nan),
}


def run_suite(suite_id: str, seed: int = 42, order: int = 256, samples: int = 100, radius_offset: float = 0.0) -> TheoremReport:
    """Run one verification suite.

    ``radius_offset`` shifts every claimed radius (a fault-injection hook:
    a positive offset must make the sharp suites fail).
    """
    if suite_id not in _RUNNERS:
        raise DomainError(f"unknown suite {suite_id!r}; expected one of {SUITES}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if order < MIN_ORDER:
        raise DomainError(f"order must be >= {MIN_ORDER}, got {order}")
    fn, radius = _RUNNERS[suite_id]
    rep = TheoremReport(suite_id, radius, seed, order, samples)
    ctx = _Ctx(SUITES.index(suite_id), seed, order, samples, radius_offset)
    fn(ctx, rep)
    return rep


def run_all(seed: int = 42, order: int = 256, samples: int = 100, radius_offset: float = 0.0) -> List[TheoremReport]:
    return [run_suite(s, seed, order, samples, radius_offset) for s in SUITES]


# ------------------------------------------------------------ counterexamples

COUNTEREXAMPLES = ("remark-f0", "local-univalence", "intro-derivative")


def remark_f0(rs: Sequence[float] = (0.1, 0.3)) -> Counterexample:
    """``f = z + 1``, ``g = z f``: ``|g| <= |f|`` but ``M_g' - M_f' = 2r`` without ``f(0) = 0``."""
    f = ps.polynomial([1.0, 1.0])
    g = ps.polynomial([0.0, 1.0, 1.0])
    df, dg = ps.derivative(f), ps.derivative(g)
    rows = []
    ok = True
    for r in rs:
        mg, mf = _M(dg, r).upper, _M(df, r).upper
        diff = mg - mf
        rows.append({"r": r, "M_g_prime": mg, "M_f_prime": mf, "difference": diff, "two_r": 2 * r})
        ok = ok and diff > 0 and abs(diff - 2 * r) <= 1e-12
    return Counterexample(
        "remark-f0",
        "f(z) = z + 1, g(z) = z(z + 1); |g| <= |f| on the disk but f(0) != 0",
        _round15({"rows": rows}),
        ok,
    )


def local_univalence(alpha1: float = 0.5, points: int = 200) -> Counterexample:
    """``f = (z - a)^2`` and its subordinate ``g = (z^2 - a)^2``.

    ``f'(a) = 0``, so a pointwise bound ``|g'| <= |f'|`` near ``a`` would force
    ``g'(a) = 0``; but ``g'(a) = 4a(a^2 - a)`` vanishes only for ``a`` in {0, 1}.
    The majorized variant ``g = z^3 - 2a z^2``, ``f = z^2 - 2a z`` behaves the same.
    """
    a = float(alpha1)
    if not (0.0 < a < 1.0):
        raise DomainError(f"local-univalence needs alpha1 in (0, 1), got {a}")
    fp = lambda z: 2 * (z - a)
    gp = lambda z: 4 * z * (z * z - a)
    forced = abs(fp(a))
    actual = gp(a)
    # |g'| <= |f'| fails somewhere on |z| <= a (near z = a)
    rr = np.linspace(0, a, points)
    th = 2 * np.pi * np.arange(points) / points
    zz = (rr[:, None] * np.exp(1j * th[None, :])).ravel()
    excess = float(np.max(np.abs(gp(zz)) - np.abs(fp(zz))))
    fmp = 2 * a - 2 * a
    gmp = 3 * a * a - 4 * a * a
    # g'(a) = 4a^3 - 4a^2 as a polynomial in a
    roots = sorted(set(float(round(x.real, 12)) + 0.0 for x in np.roots([4.0, -4.0, 0.0, 0.0])))
    values = {
        "alpha1": a,
        "f_prime_at_alpha1": float(forced),
        "forced_g_prime_at_alpha1": 0.0,
        "actual_g_prime_at_alpha1": float(actual),
        "solutions_of_g_prime_eq_0_in_[0,1]": roots,
        "max_excess_of_abs_g_prime_over_abs_f_prime": excess,
        "majorized_variant_f_prime_at_alpha1": fmp,
        "majorized_variant_g_prime_at_alpha1": gmp,
    }
    confirmed = forced == 0.0 and actual != 0.0 and a not in roots and gmp != 0.0
    return Counterexample(
        "local-univalence",
        "f(z) = (z - alpha1)^2, g(z) = (z^2 - alpha1)^2: a pointwise derivative bound forces g'(alpha1) = 0",
        _round15(values),
        confirmed,
    )


def intro_derivative(a: float = 0.6, r: float = 0.34, order: int = 256) -> Counterexample:
    """Mobius ``f_a``: ``M_f'(r) <= 1`` exactly up to ``a / (1 + sqrt(1 - a^2))``."""
    th = radii.family_threshold_closed(a, "intro_mobius")
    th_b = radii.family_threshold(a, "intro_mobius")
    d = ps.derivative(fam.mobius(a, order))
    m = _M(d, r)
    values = {
        "a": a,
        "threshold_closed": th,
        "threshold_bisected": th_b,
        "r": r,
        "M_f_prime_lower": m.lower,
        "M_f_prime_upper": m.upper,
    }
    confirmed = abs(th - th_b) <= 1e-9 and r > th and m.lower > 1.0
    return Counterexample(
        "intro-derivative",
        f"f(z) = (z + a)/(1 + a z) with a = {a}: derivative majorant exceeds 1 just above the threshold",
        _round15(values),
        confirmed,
    )


def counterexample(name: str, **params) -> Counterexample:
    if name == "remark-f0":
        return remark_f0(**params)
    if name == "local-univalence":
        return local_univalence(**params)
    if name == "intro-derivative":
        return intro_derivative(**params)
    raise DomainError(f"unknown counterexample {name!r}; expected one of {COUNTEREXAMPLES}")
