"""Extremal function families and sampled self-maps of the unit disk.

Every rational family comes with exact coefficients, an exact geometric tail
and a closed-form majorant. Blaschke products supply the random witnesses
(Schwarz functions ``w(0) = 0`` and general self-maps) used by the harness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from bohrkit import series as ps
from bohrkit.exceptions import DomainError, UnsupportedFamilyError
from bohrkit.series import EXACT, TailBound, TruncatedSeries

KINDS = (
    "mobius_fa",
    "xi_a",
    "g_a",
    "k_alpha",
    "k_a_convex",
    "blaschke_witness",
    "intro_square",
    "remark_product",
)

MAX_ZERO_MODULUS = 0.9
MAX_WITNESS_DEGREE = 6

# sharpness scan grid
DEFAULT_A_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999)

_PARAM_A_KINDS = {"mobius_fa", "xi_a", "g_a", "k_a_convex"}


@dataclass(frozen=True)
class FamilySpec:
    """A named family member, e.g. ``FamilySpec("xi_a", {"a": 0.5})``."""

    kind: str
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        p = dict(self.params)
        object.__setattr__(self, "params", p)
        if self.kind in _PARAM_A_KINDS:
            a = p.setdefault("a", 0.0)
            if not (0.0 <= a < 1.0):
                raise DomainError(f"{self.kind} requires a in [0, 1), got {a}")
        elif self.kind == "k_alpha":
            alpha = p.setdefault("alpha", 1.0)
            if not (0.0 < alpha <= 1.0):
                raise DomainError(f"k_alpha requires alpha in (0, 1], got {alpha}")
        elif self.kind == "intro_square":
            a1 = p.setdefault("alpha1", 0.5)
            if not (0.0 < a1 < 1.0):
                raise DomainError(f"intro_square requires alpha1 in (0, 1), got {a1}")
        elif self.kind == "blaschke_witness":
            zeros = p.get("zeros")
            if zeros is None:
                p.setdefault("seed", 0)
                p.setdefault("degree", 1)
                zeros = schwarz_zeros(int(p["seed"]), int(p["degree"]))
            _check_zeros(zeros)

    def __getitem__(self, name):
        return self.params[name]

    @classmethod
    def parse(cls, kind: str, assignments: Sequence[str]) -> "FamilySpec":
        """Build from ``key=value`` strings as given on the command line."""
        params = {}
        for item in assignments:
            key, sep, value = item.partition("=")
            if not sep:
                raise DomainError(f"parameter {item!r} is not of the form key=value")
            key = key.strip()
            if key in ("seed", "degree"):
                params[key] = int(value)
            elif key == "zeros":
                params[key] = [complex(v.replace(" ", "")) for v in value.split(",") if v]
            else:
                params[key] = float(value)
        return cls(kind, params)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for k, v in self.params.items():
            if k == "zeros":
                out[k] = [[float(complex(z).real), float(complex(z).imag)] for z in v]
            else:
                out[k] = v
        return out


@dataclass(frozen=True)
class ClosedMajorant:
    """Closed-form majorant ``r -> M(r)`` valid for ``r`` in ``valid_for`` (half-open)."""

    eval: Callable[[float], float]
    valid_for: tuple = (0.0, 1.0)

    def __call__(self, r: float) -> float:
        lo, hi = self.valid_for
        if not (lo <= r < hi):
            raise DomainError(f"r={r} outside the validity range [{lo}, {hi})")
        return self.eval(r)


def _check_zeros(zeros):
    if len(zeros) > MAX_WITNESS_DEGREE:
        raise DomainError(f"witness degree is capped at {MAX_WITNESS_DEGREE}")
    for z in zeros:
        if abs(complex(z)) > MAX_ZERO_MODULUS:
            raise DomainError(f"Blaschke zeros need modulus <= {MAX_ZERO_MODULUS}, got {z}")


# ------------------------------------------------------------------ builders


def _geometric_tail(mag_at_start: float, q: float, start: int) -> TailBound:
    """Envelope ``|a_n| <= mag_at_start * q**(n - start)`` for ``n >= start``."""
    if q == 0.0:
        return EXACT.shifted(start) if mag_at_start == 0.0 else TailBound(mag_at_start, 1.0, start)
    # a subnormal ratio would overflow c = mag / q^start; q <= 1 makes a flat bound valid
    mag = max(mag_at_start, 1e-300)
    with np.errstate(over="ignore"):
        c = mag / q**start if start * math.log(q) > -700 else math.inf
    if not math.isfinite(c):
        return TailBound(mag, 1.0, start)
    return TailBound(c, q, start)


def geometric(lead: complex, ratio: complex, shift: int, order: int, const: complex = 0.0) -> TruncatedSeries:
    """``const + lead * z**shift / (1 - ratio z)`` with an exact tail."""
    a = np.zeros(order + 1, dtype=np.complex128)
    a[0] = const
    if shift <= order:
        powers = np.ones(order + 1 - shift, dtype=np.complex128)
        powers[1:] = ratio
        a[shift:] += lead * np.cumprod(powers)
    q = abs(ratio)
    start = order + 1
    if lead == 0 or (q == 0 and shift <= order):
        tail = EXACT.shifted(start)
    elif q == 0:
        tail = TailBound(abs(lead), 1.0, start)
    else:
        # |a_n| = |lead| q^(n - shift)
        tail = _geometric_tail(abs(lead) * q ** max(start - shift, 0), q, start)
    return TruncatedSeries(a, tail)


def mobius(a0: complex, order: int) -> TruncatedSeries:
    """Disk automorphism ``(z + a0) / (1 + conj(a0) z)``."""
    a0 = complex(a0)
    s = abs(a0)
    f = geometric(1 - s * s, -a0.conjugate(), 1, order, const=a0)
    return ps.with_tail(f, f.tail, 1.0)


def xi(a: float, order: int) -> TruncatedSeries:
    """``z (z - a) / (1 - a z)``: ``-a z + (1 - a^2) sum a^(n-2) z^n``."""
    a_ = np.zeros(order + 1, dtype=np.complex128)
    if order >= 1:
        a_[1] = -a
    if order >= 2:
        a_[2:] = (1 - a * a) * a ** np.arange(order - 1)
    start = order + 1
    if a == 0:
        tail = EXACT.shifted(start) if order >= 2 else TailBound(1.0, 1.0, start)
    else:
        tail = _geometric_tail((1 - a * a) * a ** max(start - 2, 0), a, max(start, 2))
        tail = tail.shifted(start) if start >= 2 else TailBound(max(a, 1 - a * a), 1.0, start)
    return TruncatedSeries(a_, tail, 1.0)


def g_family(a: float, order: int) -> TruncatedSeries:
    """``xi_a(z^2) / z = -a z + (1 - a^2) sum a^(n-2) z^(2n-1)``."""
    c = np.zeros(order + 1, dtype=np.complex128)
    if order >= 1:
        c[1] = -a
    idx = np.arange(3, order + 1, 2)
    c[idx] = (1 - a * a) * a ** ((idx + 1) // 2 - 2)
    start = order + 1
    if a == 0:
        tail = EXACT.shifted(start) if order >= 3 else TailBound(1.0, 1.0, start)
    elif start >= 3:
        # |c_m| = (1 - a^2) a^((m+1)/2 - 2) = (1 - a^2) (sqrt a)^(m - 3)
        tail = _geometric_tail((1 - a * a) * math.sqrt(a) ** (start - 3), math.sqrt(a), start)
    else:
        tail = TailBound(max(a, 1 - a * a), 1.0, start)
    return TruncatedSeries(c, tail, 1.0)


def k_alpha(alpha: float, order: int) -> TruncatedSeries:
    """``alpha z / (1 - sqrt(1 - alpha^2) z)``."""
    beta = math.sqrt(max(0.0, 1 - alpha * alpha))
    f = geometric(alpha, beta, 1, order)
    return ps.with_tail(f, f.tail, alpha / (1 - beta))


def k_convex(a: float, order: int) -> TruncatedSeries:
    """``z / (1 - a z)``."""
    f = geometric(1.0, a, 1, order)
    return ps.with_tail(f, f.tail, 1 / (1 - a))


def blaschke_factor(zk: complex, order: int) -> TruncatedSeries:
    """``(z - zk) / (1 - conj(zk) z)``."""
    zk = complex(zk)
    s = abs(zk)
    f = geometric(1 - s * s, zk.conjugate(), 1, order, const=-zk)
    return ps.with_tail(f, f.tail, 1.0)


def blaschke(zeros: Sequence[complex], order: int, with_z: bool = True, unimodular: complex = 1.0) -> TruncatedSeries:
    """``u * z**with_z * prod (z - zk)/(1 - conj(zk) z)`` (a self-map, sup <= 1)."""
    return blaschke_map(zeros, with_z, unimodular).series(order)


def schwarz_zeros(seed: int, degree: int) -> np.ndarray:
    """Deterministic zeros, uniform in the disk of radius 0.9."""
    if not (0 <= degree <= MAX_WITNESS_DEGREE):
        raise DomainError(f"witness degree must lie in [0, {MAX_WITNESS_DEGREE}], got {degree}")
    rng = np.random.default_rng(seed)
    mod = MAX_ZERO_MODULUS * np.sqrt(rng.random(degree))
    arg = 2 * np.pi * rng.random(degree)
    return mod * np.exp(1j * arg)


def sample_schwarz(seed: int, degree: int, order: int) -> TruncatedSeries:
    """Schwarz function ``w(z) = z * prod (z - zk)/(1 - conj(zk) z)`` with seeded zeros."""
    return blaschke(schwarz_zeros(seed, degree), order, with_z=True)


def self_map(c0: complex, b: TruncatedSeries) -> TruncatedSeries:
    """``(b + c0) / (1 + conj(c0) b)`` for a self-map ``b`` with ``b(0) = 0``.

    The result is a self-map with value ``c0`` at the origin.
    """
    c0 = complex(c0)
    if abs(c0) >= 1:
        raise DomainError(f"self_map needs |c0| < 1, got {c0}")
    if b.coeffs[0] != 0:
        raise DomainError("self_map expects b(0) = 0")
    n = b.order
    den = ps.reciprocal(ps.add(ps.one(n), ps.scale(b, c0.conjugate())))
    num = ps.add(b, ps.constant(c0, n))
    coeffs = ps.kernels.cauchy_product(num.coeffs, den.coeffs, n)
    tail, _ = ps.composition_bounds(mobius(c0, n), b, n)
    return TruncatedSeries(coeffs, tail, 1.0)


def geometric_compose(lead: complex, ratio: float, w: TruncatedSeries) -> TruncatedSeries:
    """``F(w(z))`` for ``F(z) = lead z / (1 - ratio z)``, ``0 <= ratio < 1``."""
    n = w.order
    den = ps.reciprocal(ps.add(ps.one(n), ps.scale(w, -ratio)))
    coeffs = ps.kernels.cauchy_product(w.coeffs * lead, den.coeffs, n)
    tail, sup = ps.composition_bounds(geometric(lead, ratio, 1, n), w, n)
    return TruncatedSeries(coeffs, tail, sup)


def spherical_member(alpha: float, phi: TruncatedSeries) -> TruncatedSeries:
    """``alpha z / (1 + sqrt(1 - alpha^2) z phi(z))`` for ``sup |phi| <= 1``.

    Every member of the normalized spherically convex class with
    ``f'(0) = alpha < 1`` has this form.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"spherical_member requires alpha in (0, 1), got {alpha}")
    if phi.sup_bound is None or phi.sup_bound > 1.0:
        raise DomainError("phi must carry a sup bound <= 1")
    n = phi.order
    beta = math.sqrt(1 - alpha * alpha)
    sup = alpha / (1 - beta)
    if phi.tail is not None and phi.tail.is_exact and not np.any(phi.coeffs[1:]):
        # constant phi = u gives the geometric member alpha z / (1 + beta u z)
        f = geometric(alpha, -beta * complex(phi.coeffs[0]), 1, n)
        return ps.with_tail(f, f.tail, sup)
    zphi = ps.mul(ps.identity(n), phi)
    den = ps.reciprocal(ps.add(ps.one(n), ps.scale(zphi, beta)))
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[1:] = alpha * den.coeffs[:n]
    return TruncatedSeries(coeffs, TailBound(sup, 1.0, n + 1), sup)


# ------------------------------------------------------------ rational maps


def _pmul(p, q):
    return np.convolve(p, q)


def _padd(p, q):
    out = np.zeros(max(len(p), len(q)), dtype=np.complex128)
    out[: len(p)] += p
    out[: len(q)] += q
    return out


@dataclass(frozen=True, eq=False)
class RationalMap:
    """``num(z) / den(z)`` with polynomial coefficient arrays (ascending).

    ``sup`` is a certified bound for ``sup |num/den|`` on the disk. Sampled
    witnesses stay rational under every construction the harness needs, so
    their Taylor coefficients come from one linear recurrence.
    """

    num: np.ndarray
    den: np.ndarray
    sup: float

    def __post_init__(self):
        object.__setattr__(self, "num", np.atleast_1d(np.asarray(self.num, dtype=np.complex128)))
        object.__setattr__(self, "den", np.atleast_1d(np.asarray(self.den, dtype=np.complex128)))

    def series(self, order: int) -> TruncatedSeries:
        return ps.rational(self.num, self.den, order, self.sup)

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return np.polyval(self.num[::-1], z) / np.polyval(self.den[::-1], z)

    def times_z(self) -> "RationalMap":
        return RationalMap(np.r_[0, self.num], self.den, self.sup)

    def times(self, other: "RationalMap") -> "RationalMap":
        return RationalMap(_pmul(self.num, other.num), _pmul(self.den, other.den), self.sup * other.sup)

    def shifted(self, c0: complex) -> "RationalMap":
        """``(b + c0) / (1 + conj(c0) b)``; a self-map when this one is."""
        c0 = complex(c0)
        if abs(c0) >= 1:
            raise DomainError(f"shift needs |c0| < 1, got {c0}")
        num = _padd(self.num, c0 * self.den)
        den = _padd(self.den, c0.conjugate() * self.num)
        return RationalMap(num, den, 1.0 if self.sup <= 1 else math.inf)

    def of_square(self) -> "RationalMap":
        """``z -> b(z^2)``."""
        def lift(p):
            out = np.zeros(2 * len(p) - 1, dtype=np.complex128)
            out[::2] = p
            return out

        return RationalMap(lift(self.num), lift(self.den), self.sup)

    def after(self, inner: "RationalMap") -> "RationalMap":
        """``self(inner(z))``; the sup bound carries over when ``inner`` is a self-map."""
        p = np.trim_zeros(self.num, "b")
        q = np.trim_zeros(self.den, "b")
        d = max(len(p), len(q)) - 1
        pw_n = [np.ones(1, dtype=np.complex128)]
        pw_d = [np.ones(1, dtype=np.complex128)]
        for _ in range(d):
            pw_n.append(_pmul(pw_n[-1], inner.num))
            pw_d.append(_pmul(pw_d[-1], inner.den))

        def homog(c):
            out = np.zeros(1, dtype=np.complex128)
            for j, cj in enumerate(c):
                out = _padd(out, cj * _pmul(pw_n[j], pw_d[d - j]))
            return out

        sup = self.sup if inner.sup <= 1 else math.inf
        return RationalMap(homog(p), homog(q), sup)

    def into_polynomial(self, coeffs) -> "RationalMap":
        """``f(b(z))`` for a polynomial ``f`` (valid for a self-map ``b``)."""
        a = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), "b")
        if a.size == 0:
            return RationalMap([0.0], [1.0], 0.0)
        d = a.size - 1
        num = np.zeros(1, dtype=np.complex128)
        pw_p = [np.ones(1, dtype=np.complex128)]
        pw_q = [np.ones(1, dtype=np.complex128)]
        for _ in range(d):
            pw_p.append(_pmul(pw_p[-1], self.num))
            pw_q.append(_pmul(pw_q[-1], self.den))
        for j in range(d + 1):
            num = _padd(num, a[j] * _pmul(pw_p[j], pw_q[d - j]))
        sup = float(np.abs(a).sum()) if self.sup <= 1 else math.inf
        return RationalMap(num, pw_q[d], sup)

    def into_geometric(self, lead: complex, ratio: float) -> "RationalMap":
        """``lead b / (1 - ratio b)`` for a self-map ``b`` and ``0 <= ratio < 1``."""
        sup = abs(lead) / (1 - ratio) if self.sup <= 1 else math.inf
        return RationalMap(lead * self.num, _padd(self.den, -ratio * self.num), sup)

    def into_spherical(self, alpha: float) -> "RationalMap":
        """``alpha z / (1 + sqrt(1 - alpha^2) z b(z))`` for a self-map ``b``."""
        if not (0.0 < alpha < 1.0):
            raise DomainError(f"spherical member requires alpha in (0, 1), got {alpha}")
        beta = math.sqrt(1 - alpha * alpha)
        num = alpha * np.r_[0, self.den]
        den = _padd(self.den, beta * np.r_[0, self.num])
        sup = alpha / (1 - beta) if self.sup <= 1 else math.inf
        return RationalMap(num, den, sup)


def blaschke_map(zeros: Sequence[complex], with_z: bool = True, unimodular: complex = 1.0) -> RationalMap:
    """Finite Blaschke product as a rational map (sup = 1)."""
    _check_zeros(zeros)
    num = np.array([0.0, unimodular] if with_z else [unimodular], dtype=np.complex128)
    den = np.ones(1, dtype=np.complex128)
    for zk in zeros:
        zk = complex(zk)
        num = _pmul(num, [-zk, 1.0])
        den = _pmul(den, [1.0, -zk.conjugate()])
    return RationalMap(num, den, 1.0)


# ------------------------------------------------------------------- generate


def generate(spec: FamilySpec, order: int) -> TruncatedSeries:
    """Truncated Taylor expansion of a family member with its exact tail."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    p = spec.params
    kind = spec.kind
    if kind == "mobius_fa":
        return mobius(p["a"] * np.exp(1j * p.get("theta", 0.0)), order)
    if kind == "xi_a":
        return xi(p["a"], order)
    if kind == "g_a":
        return g_family(p["a"], order)
    if kind == "k_alpha":
        return k_alpha(p["alpha"], order)
    if kind == "k_a_convex":
        return k_convex(p["a"], order)
    if kind == "intro_square":
        a1 = p["alpha1"]
        return ps.polynomial([a1 * a1, -2 * a1, 1.0], order)
    if kind == "remark_product":
        return ps.polynomial([0.0, 1.0, 1.0], order)
    # blaschke_witness
    zeros = p.get("zeros")
    if zeros is None:
        zeros = schwarz_zeros(int(p["seed"]), int(p["degree"]))
    return blaschke(zeros, order, with_z=bool(p.get("with_z", True)))


def closed_majorant(spec: FamilySpec, which: str = "function") -> ClosedMajorant:
    """Exact majorant of the member (``which="function"``) or of its derivative."""
    if which not in ("function", "derivative"):
        raise DomainError(f"which must be 'function' or 'derivative', got {which!r}")
    deriv = which == "derivative"
    p = spec.params
    kind = spec.kind
    if kind == "mobius_fa":
        a = p["a"]
        if deriv:
            return ClosedMajorant(lambda r: (1 - a * a) / (1 - a * r) ** 2)
        return ClosedMajorant(lambda r: a + (1 - a * a) * r / (1 - a * r))
    if kind == "xi_a":
        a = p["a"]
        if deriv:
            return ClosedMajorant(lambda r: a + (1 - a * a) * r * (2 - a * r) / (1 - a * r) ** 2)
        return ClosedMajorant(lambda r: a * r + (1 - a * a) * r * r / (1 - a * r))
    if kind == "g_a":
        a = p["a"]
        if deriv:
            return ClosedMajorant(
                lambda r: a + (1 - a * a) * r * r * (3 - a * r * r) / (1 - a * r * r) ** 2
            )
        return ClosedMajorant(lambda r: a * r + (1 - a * a) * r**3 / (1 - a * r * r))
    if kind == "k_alpha":
        al = p["alpha"]
        be = math.sqrt(max(0.0, 1 - al * al))
        if deriv:
            return ClosedMajorant(lambda r: al / (1 - be * r) ** 2)
        return ClosedMajorant(lambda r: al * r / (1 - be * r))
    if kind == "k_a_convex":
        a = p["a"]
        if deriv:
            return ClosedMajorant(lambda r: 1 / (1 - a * r) ** 2)
        return ClosedMajorant(lambda r: r / (1 - a * r))
    if kind == "intro_square":
        a1 = p["alpha1"]
        if deriv:
            return ClosedMajorant(lambda r: 2 * (a1 + r))
        return ClosedMajorant(lambda r: (a1 + r) ** 2)
    if kind == "remark_product":
        if deriv:
            return ClosedMajorant(lambda r: 1 + 2 * r)
        return ClosedMajorant(lambda r: r + r * r)
    raise UnsupportedFamilyError(f"no closed-form majorant for {kind!r}")


def wiener_violations(w: TruncatedSeries, atol: float = 1e-12) -> list:
    """Indices ``n >= 2`` where ``|w_n| > 1 - |w_1|^2`` (should be empty)."""
    bound = 1 - abs(w.coeffs[1]) ** 2 if w.order >= 1 else 1.0
    mags = np.abs(w.coeffs[2:])
    return [int(i) + 2 for i in np.flatnonzero(mags > bound + atol)]


def circle_max_modulus(f: TruncatedSeries, radius: float, points: int = 360) -> float:
    """Largest ``|f|`` over equispaced points of ``|z| = radius``."""
    z = radius * np.exp(2j * np.pi * np.arange(points) / points)
    return float(np.max(np.abs(ps.evaluate(f, z))))
