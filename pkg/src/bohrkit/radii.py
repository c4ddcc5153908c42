"""Closed-form Bohr-type radii and their re-derivation by bisection.

Each radius is computed twice: from its closed form, and by bisecting the
monotone inequality that defines it (for limiting radii, the ``a -> 1``
limit of the extremal family's inequality). The two routes share no code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from bohrkit.exceptions import BracketError, DomainError, VerificationError

SETTINGS = (
    "classical",
    "lemma_B",
    "derivative",
    "odd_majorization",
    "odd_derivative",
    "lemma1_ratio",
    "bombieri_radius",
    "r_a0",
    "a_tilde",
    "spherical_rs",
    "convex_rc",
)

THRESHOLD_TARGETS = ("classical", "lemma_B", "derivative", "odd_majorization", "odd_derivative", "intro_mobius")

BISECT_TOL = 1e-12
BISECT_HI = 1 - 1e-6
BISECT_MAX_ITER = 200
# admissible rounding in user-supplied hypothesis parameters
HYPOTHESIS_SLACK = 1e-6
LEMMA1_HORIZON = 256

SQRT3_2 = math.sqrt(3) / 2


def psi1(x: float) -> float:
    return x**4 + 2 * x * x + 2 * x - 1


def a_tilde_closed() -> float:
    """Root in (0, 1) of ``x^4 + 2x^2 + 2x - 1``.

    The quartic factors as ``(x + 1)(x^3 - x^2 + 3x - 1)``; Cardano on the cubic.
    """
    s = 3 * math.sqrt(57)
    return (1 + (1 + s) ** (1 / 3) - (s - 1) ** (1 / 3)) / 3


A_TILDE = a_tilde_closed()


@dataclass(frozen=True)
class RadiusSetting:
    id: str
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in SETTINGS:
            raise DomainError(f"unknown radius setting {self.id!r}; expected one of {SETTINGS}")
        p = dict(self.params)
        object.__setattr__(self, "params", p)
        if self.id in ("r_a0", "bombieri_radius"):
            if "a0" not in p:
                raise DomainError(f"{self.id} requires parameter a0")
            a0 = float(p["a0"])
            lo = A_TILDE if self.id == "r_a0" else 0.0
            if self.id == "r_a0" and not (A_TILDE - HYPOTHESIS_SLACK <= a0 <= 1.0):
                raise DomainError(f"r_a0 requires a_tilde ({A_TILDE:.6f}) <= |a0| <= 1, got {a0}")
            if self.id == "bombieri_radius" and not (lo < a0 < 1.0):
                raise DomainError(f"bombieri_radius requires 0 < |a0| < 1, got {a0}")
        elif self.id == "spherical_rs":
            if "alpha" not in p:
                raise DomainError("spherical_rs requires parameter alpha")
            al = float(p["alpha"])
            if not (0.0 < al <= SQRT3_2 + HYPOTHESIS_SLACK):
                raise DomainError(f"spherical_rs requires 0 < alpha <= sqrt(3)/2, got {al}")
        elif self.id == "convex_rc":
            if "R2" not in p or "delta" not in p:
                raise DomainError("convex_rc requires parameters R2 and delta")
            r2, d = float(p["R2"]), float(p["delta"])
            if not d > 0:
                raise DomainError(f"convex_rc requires delta > 0, got {d}")
            if r2 < 2 * d - HYPOTHESIS_SLACK * max(1.0, r2):
                raise DomainError(f"convex_rc requires R2 >= 2*delta, got R2={r2}, delta={d}")
        elif self.id == "lemma1_ratio":
            if "coeffs" not in p:
                raise DomainError("lemma1_ratio requires parameter coeffs")


@dataclass(frozen=True)
class RadiusResult:
    setting: str
    closed_form: float
    bisected: float
    discrepancy: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "closed_form": self.closed_form,
            "bisected": self.bisected,
            "discrepancy": self.discrepancy,
            "iterations": self.iterations,
        }


# ----------------------------------------------------------------- closed form


def closed_form(setting: RadiusSetting) -> float:
    """Exact value of the radius in double precision."""
    p = setting.params
    sid = setting.id
    if sid in ("classical", "lemma_B"):
        return 1 / 3
    if sid == "derivative":
        return 1 - math.sqrt(2 / 3)
    if sid == "odd_majorization":
        return 1 / math.sqrt(3)
    if sid == "odd_derivative":
        return math.sqrt((4 - math.sqrt(13)) / 3)
    if sid == "a_tilde":
        return A_TILDE
    if sid == "r_a0":
        x = float(p["a0"])
        return (math.sqrt((1 + x) ** 2 + x * x) - (1 + x)) / (x * x)
    if sid == "bombieri_radius":
        return float(p["a0"])
    if sid == "spherical_rs":
        al = min(float(p["alpha"]), 1.0)
        return 1 / (1 + 2 * math.sqrt(1 - al * al))
    if sid == "convex_rc":
        r2, d = float(p["R2"]), float(p["delta"])
        return r2 / (3 * r2 - 2 * d)
    # lemma1_ratio
    return lemma1_radius(p["coeffs"], int(p.get("m", 0)), int(p.get("horizon", LEMMA1_HORIZON)))


# ------------------------------------------------------------------ bisection


def _bisect(pred: Callable[[float], bool], lo: float, hi: float, tol: float, max_iter: int):
    if not pred(lo):
        raise BracketError(f"predicate fails at the lower end {lo}")
    if pred(hi):
        raise BracketError(f"predicate holds at the upper end {hi}")
    it = 0
    while hi - lo > 2 * tol and it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi), it


def bisect_root(
    pred: Callable[[float], bool],
    lo: float = 0.0,
    hi: float = BISECT_HI,
    tol: float = BISECT_TOL,
    max_iter: int = BISECT_MAX_ITER,
) -> float:
    """Threshold of a monotone predicate that holds at ``lo`` and fails at ``hi``.

    The result is within ``tol`` of the switching point and uses at most
    ``ceil(log2((hi - lo) / tol))`` predicate evaluations after the bracket check.
    """
    return _bisect(pred, lo, hi, tol, max_iter)[0]


def _limit_predicate(setting: RadiusSetting):
    """Defining inequality of each radius, independent of its closed form."""
    p = setting.params
    sid = setting.id
    if sid in ("classical", "lemma_B"):
        # a -> 1 limit of (1+a) r / (1 - a r) <= 1
        return lambda r: 2 * r / (1 - r) <= 1, 0.0, BISECT_HI
    if sid == "derivative":
        return lambda r: 2 * (1 / (1 - r) ** 2 - 1) <= 1, 0.0, BISECT_HI
    if sid == "odd_majorization":
        # 2 sum_{n>=1} r^(2n) <= 1
        return lambda r: 2 * r * r / (1 - r * r) <= 1, 0.0, BISECT_HI
    if sid == "odd_derivative":
        # 2 sum_{k>=1} (2k+1) x^k <= 1 with x = r^2, sum = (1+x)/(1-x)^2 - 1
        def pred(r):
            x = r * r
            return 2 * ((1 + x) / (1 - x) ** 2 - 1) <= 1

        return pred, 0.0, BISECT_HI
    if sid == "a_tilde":
        return lambda x: psi1(x) <= 0, 0.0, 1.0
    if sid == "r_a0":
        a = float(p["a0"])

        def pred(r):
            # |f(r)| + M_f(r) - a for the Mobius extremal
            return (r + a) / (1 + a * r) + (1 - a * a) * r / (1 - a * r) <= 1

        return pred, 0.0, BISECT_HI
    if sid == "bombieri_radius":
        from bohrkit.families import mobius

        coeffs = mobius(float(p["a0"]), LEMMA1_HORIZON + 1).coeffs
        return _monotone_ratio_predicate(coeffs, 0, LEMMA1_HORIZON), 0.0, BISECT_HI
    if sid == "spherical_rs":
        al = float(p["alpha"])
        be = math.sqrt(max(0.0, 1 - al * al))
        return lambda r: al * r / (1 - be * r) <= al / (1 + be), 0.0, BISECT_HI
    if sid == "convex_rc":
        r2, d = float(p["R2"]), float(p["delta"])
        big_a = (r2 - d) / r2
        big_b = (2 * r2 - d) * d / r2
        return lambda r: big_b * r / (1 - big_a * r) <= d, 0.0, BISECT_HI
    # lemma1_ratio
    pred = _monotone_ratio_predicate(
        np.asarray(p["coeffs"], dtype=complex), int(p.get("m", 0)), int(p.get("horizon", LEMMA1_HORIZON))
    )
    return pred, 0.0, BISECT_HI


def compute(setting: RadiusSetting) -> RadiusResult:
    """Closed form and bisected value of a radius, with their discrepancy."""
    cf = closed_form(setting)
    pred, lo, hi = _limit_predicate(setting)
    if pred(hi):
        # threshold at or beyond the bracket end (e.g. lemma1 ratio >= 1)
        bis, it = hi, 0
    else:
        bis, it = _bisect(pred, lo, hi, BISECT_TOL, BISECT_MAX_ITER)
    return RadiusResult(setting.id, cf, bis, abs(cf - bis), it)


# ------------------------------------------------------------ family sweeps


def _family_predicate(a: float, which: str):
    if which in ("classical", "lemma_B"):
        return lambda r: (1 + a) * r / (1 - a * r) <= 1
    if which == "derivative":
        # M(a, r) <= 0 for xi_a
        return lambda r: (1 + a) * (r / (1 - a * r) + r / (1 - a * r) ** 2) - 1 <= 0
    if which == "odd_majorization":
        return lambda r: (1 + a) * r * r / (1 - a * r * r) <= 1
    if which == "odd_derivative":
        def pred(r):
            x = r * r
            return (1 + a) * x * (3 - a * x) / (1 - a * x) ** 2 <= 1

        return pred
    if which == "intro_mobius":
        return lambda r: (1 - a * a) / (1 - a * r) ** 2 <= 1
    raise DomainError(f"unknown threshold target {which!r}; expected one of {THRESHOLD_TARGETS}")


def family_threshold(a: float, which: str) -> float:
    """Largest ``r`` where the extremal family member with parameter ``a`` satisfies the inequality.

    Found by bisection on the closed majorant, except where the threshold has
    an exact expression (``1/(1+2a)`` for ``classical`` and ``lemma_B``,
    ``1/sqrt(1+2a)`` for ``odd_majorization``). Bisection saturates at the
    bracket end ``1 - 1e-6`` when the inequality holds on the whole bracket.
    """
    if not (0.0 <= a < 1.0):
        raise DomainError(f"family parameter a must lie in [0, 1), got {a}")
    if which in ("classical", "lemma_B", "odd_majorization"):
        return family_threshold_closed(a, which)
    return family_threshold_bisected(a, which)


def family_threshold_bisected(a: float, which: str) -> float:
    pred = _family_predicate(a, which)
    if pred(BISECT_HI):
        return BISECT_HI
    return bisect_root(pred)


def family_threshold_closed(a: float, which: str) -> float:
    """Closed forms where they exist, for cross-checking :func:`family_threshold`."""
    if which in ("classical", "lemma_B"):
        return 1 / (1 + 2 * a)
    if which == "odd_majorization":
        return 1 / math.sqrt(1 + 2 * a)
    if which == "intro_mobius":
        return a / (1 + math.sqrt(1 - a * a))
    raise DomainError(f"no closed-form threshold for {which!r}")


@dataclass(frozen=True)
class InfimumResult:
    which: str
    grid: tuple
    thresholds: tuple
    minimum: float
    argmin: float
    limit: float

    @property
    def gap(self) -> float:
        return self.minimum - self.limit


def infimum_over_family(which: str, grid: Sequence[float]) -> InfimumResult:
    """Grid minimum of the family thresholds and the certified ``a -> 1`` limit.

    Raises VerificationError unless the minimum sits at the largest ``a`` and
    stays strictly above the limit.
    """
    if which == "intro_mobius" or which not in THRESHOLD_TARGETS:
        raise DomainError(f"{which!r} is not an infimum family")
    grid = tuple(float(a) for a in grid)
    if not grid:
        raise DomainError("grid must be nonempty")
    ths = tuple(family_threshold(a, which) for a in grid)
    i = int(np.argmin(ths))
    limit = closed_form(RadiusSetting(which))
    res = InfimumResult(which, grid, ths, ths[i], grid[i], limit)
    if grid[i] != max(grid):
        raise VerificationError(f"{which}: grid minimum at a={grid[i]}, not at the largest a")
    if not res.minimum > limit:
        raise VerificationError(f"{which}: grid minimum {res.minimum} does not exceed the limit {limit}")
    return res


# --------------------------------------------------------- coefficient ratios


def _ratio_range(coeffs, m: int, horizon: int):
    a = np.asarray(coeffs, dtype=complex)
    first = 1 if m == 0 else m
    last = min(horizon, len(a) - 1)
    if last <= first:
        raise DomainError(f"need coefficients beyond index {first} (have {len(a)})")
    seg = np.abs(a[first : last + 1])
    if np.any(seg == 0):
        bad = first + int(np.flatnonzero(seg == 0)[0])
        raise DomainError(f"the coefficient-ratio radius needs a_n != 0 for n >= {first}; a_{bad} = 0")
    return first, seg


def lemma1_radius(coeffs, m: int = 0, horizon: int = LEMMA1_HORIZON) -> float:
    """``min |a_{n+1} / a_n|`` over ``first <= n < horizon`` (``first = max(m, 1)``)."""
    return lemma1_argmin(coeffs, m, horizon)[0]


def lemma1_argmin(coeffs, m: int = 0, horizon: int = LEMMA1_HORIZON):
    """``(radius, n_min, interior)``; ``interior`` is False when the minimum is at the horizon."""
    first, seg = _ratio_range(coeffs, m, horizon)
    ratios = seg[1:] / seg[:-1]
    j = int(np.argmin(ratios))
    return float(ratios[j]), first + j, first + j < first + len(ratios) - 1


def _monotone_ratio_predicate(coeffs, m: int, horizon: int):
    """``r -> (r^n / |a_n|)`` is nonincreasing for ``first <= n <= horizon``."""
    first, seg = _ratio_range(coeffs, m, horizon)
    logs = np.log(seg)
    n = np.arange(first, first + len(seg), dtype=float)

    def pred(r):
        if r <= 0:
            return True
        v = n * math.log(r) - logs
        return bool(np.all(np.diff(v) <= 0))

    return pred


def bombieri_bound(a0_mod: float, r: float) -> float:
    """``r (1 - |a0|^2) / (1 - |a0| r)``, valid for ``0 <= r <= |a0|``."""
    if not (0.0 < a0_mod < 1.0):
        raise DomainError(f"bombieri_bound requires 0 < |a0| < 1, got {a0_mod}")
    if not (0.0 <= r <= a0_mod):
        raise DomainError(f"bombieri_bound requires 0 <= r <= |a0| = {a0_mod}, got r={r}")
    return r * (1 - a0_mod * a0_mod) / (1 - a0_mod * r)


def r_a0(a0_mod: float) -> float:
    return closed_form(RadiusSetting("r_a0", {"a0": a0_mod}))


def spherical_rs(alpha: float) -> float:
    return closed_form(RadiusSetting("spherical_rs", {"alpha": alpha}))


def convex_rc(r2: float, delta: float) -> float:
    return closed_form(RadiusSetting("convex_rc", {"R2": r2, "delta": delta}))


def convex_subordinator(r2: float, delta: float):
    """``(A, B)`` with ``f ≺ B z / (1 - A z)`` for the bounded-type convex class."""
    return (r2 - delta) / r2, (2 * r2 - delta) * delta / r2
