"""Truncated power series on the unit disk with rigorous tail accounting.

A :class:`TruncatedSeries` stores the Taylor coefficients ``a_0 .. a_N`` of a
function analytic in the disk together with an optional :class:`TailBound`
certifying ``|a_n| <= c * C(n + k, k) * rho**n`` for every ``n >= start``.
With a tail present, :func:`majorant_eval` returns a two-sided enclosure of
the majorant series ``sum |a_n| r**n``; without one only the truncated sum is
known.

Arithmetic propagates tails conservatively, so a bound derived from the
``upper`` value of one side and the ``lower`` value of the other is a
certificate up to floating-point rounding.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from bohrkit._backend import kernels
from bohrkit.exceptions import DomainError, FormatError, PreconditionError

# reference radius used to pick between two valid tail candidates
_TAIL_PICK_R = 0.5


@dataclass(frozen=True)
class TailBound:
    """Coefficient envelope ``|a_n| <= c * C(n + k, k) * rho**n`` for ``n >= start``.

    ``k = 0`` is the plain geometric envelope. ``rho = 1`` is allowed and only
    encodes boundedness of the coefficients; the bound is then finite for
    ``r < 1`` only.
    """

    c: float
    rho: float
    start: int
    k: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c >= 0):
            raise DomainError(f"tail constant must be finite and >= 0, got {self.c}")
        if not (0.0 <= self.rho <= 1.0):
            raise DomainError(f"tail ratio must lie in [0, 1], got {self.rho}")
        if self.start < 0 or self.k < 0:
            raise DomainError("tail start and k must be nonnegative")

    @property
    def is_exact(self) -> bool:
        """True when the envelope forces every covered coefficient to vanish."""
        return self.c == 0.0 or (self.rho == 0.0 and self.start > 0)

    def coeff_bound(self, n: int) -> float:
        if n < self.start:
            raise DomainError(f"index {n} is below the tail start {self.start}")
        if self.c == 0.0 or self.rho == 0.0:
            return self.c * math.comb(n + self.k, self.k) * self.rho**n
        # log space: rho**n may underflow while c is huge
        return math.exp(math.log(self.c) + math.log(math.comb(n + self.k, self.k)) + n * math.log(self.rho))

    def bound(self, r: float) -> float:
        """Upper bound for ``sum_{n >= start} |a_n| r**n``."""
        if self.is_exact:
            return 0.0
        x = self.rho * r
        if x >= 1.0:
            return math.inf
        s = self.start
        if x == 0.0:
            return self.c if s == 0 else 0.0
        # T_j = sum_{n>=s} C(n+j, j) x^n satisfies
        # T_j = (T_{j-1} + C(s+j-1, j) x^s) / (1 - x),  T_0 = x^s / (1 - x);
        # the factor c x^s is applied at the end in log space
        t = 1.0 / (1.0 - x)
        for j in range(1, self.k + 1):
            t = (t + math.comb(s + j - 1, j)) / (1.0 - x)
        return math.exp(math.log(self.c) + s * math.log(x)) * t

    def shifted(self, start: int) -> "TailBound":
        return TailBound(self.c, self.rho, start, self.k)


EXACT = TailBound(0.0, 0.0, 0)


@dataclass(frozen=True)
class MajorantValue:
    lower: float
    upper: float
    certified: bool = True

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError("majorant enclosure has lower > upper")


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``a_0 .. a_N`` plus an optional tail certificate.

    ``sup_bound``, when set, is a certified bound for ``sup |f|`` over the
    open unit disk; compositions and products use it to certify tails of
    bounded functions.
    """

    coeffs: np.ndarray
    tail: Optional[TailBound] = None
    sup_bound: Optional[float] = None

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if a.size == 0:
            raise DomainError("a series needs at least one coefficient")
        if not np.all(np.isfinite(a)):
            raise DomainError("coefficients must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)
        if self.tail is not None and self.tail.start > a.size:
            raise DomainError(
                f"tail starts at {self.tail.start} but coefficients stop at {a.size - 1}"
            )

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.4g}" for c in self.coeffs[:4])
        more = ", ..." if self.order > 3 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{more}], tail={self.tail})"

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, constant(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def majorant(self, r: float) -> MajorantValue:
        return majorant_eval(self, r)

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.allclose(self.coeffs[: n + 1], other.coeffs[: n + 1], rtol=0, atol=atol))


# ---------------------------------------------------------------- builders


def polynomial(coeffs: Sequence[complex], order: Optional[int] = None) -> TruncatedSeries:
    """Exact polynomial, zero-padded (or truncated with a certified tail) to ``order``."""
    a = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if order is not None and order >= a.size:
        a = np.concatenate([a, np.zeros(order + 1 - a.size, dtype=np.complex128)])
    full = TruncatedSeries(a, EXACT.shifted(a.size), float(np.abs(a).sum()))
    if order is None:
        return full
    return truncate(full, order)


def constant(value: complex, order: int) -> TruncatedSeries:
    a = np.zeros(order + 1, dtype=np.complex128)
    a[0] = value
    return TruncatedSeries(a, EXACT.shifted(order + 1), abs(value))


def zero(order: int) -> TruncatedSeries:
    return constant(0.0, order)


def one(order: int) -> TruncatedSeries:
    return constant(1.0, order)


def monomial(n: int, order: int, coef: complex = 1.0) -> TruncatedSeries:
    a = np.zeros(max(order, n) + 1, dtype=np.complex128)
    a[n] = coef
    return truncate(TruncatedSeries(a, EXACT.shifted(a.size), abs(coef)), order)


def identity(order: int) -> TruncatedSeries:
    return monomial(1, order)


def rational(num, den, order: int, sup_bound: Optional[float] = None) -> TruncatedSeries:
    """Taylor coefficients of ``num(z) / den(z)`` up to ``order``.

    ``sup_bound`` is the caller's certified bound for ``sup |num/den|`` on the
    disk; it yields the tail ``|a_n| <= sup_bound``. A constant denominator
    gives an exact polynomial instead.
    """
    p = np.trim_zeros(np.asarray(num, dtype=np.complex128).reshape(-1), "b")
    q = np.trim_zeros(np.asarray(den, dtype=np.complex128).reshape(-1), "b")
    if q.size == 0 or q[0] == 0:
        raise PreconditionError("rational requires den(0) != 0")
    if p.size == 0:
        return zero(order)
    if q.size == 1:
        f = polynomial(p / q[0], order)
        if sup_bound is not None and sup_bound < f.sup_bound:
            f = with_tail(f, f.tail, sup_bound)
        return f
    coeffs = kernels.rational_series(p, q, order)
    return TruncatedSeries(coeffs, _sup_tail(sup_bound, order + 1), sup_bound)


# ------------------------------------------------------------ tail helpers


def _log_binom(n: np.ndarray, k: int) -> np.ndarray:
    """``log C(n + k, k)`` elementwise."""
    out = np.zeros_like(n, dtype=float)
    for i in range(1, k + 1):
        out += np.log1p(n / i)
    return out


def _cover(mags, first, tail, start_out, rho=None, k=None):
    """Envelope dominating known magnitudes ``mags`` (indices ``first ..``) and ``tail``.

    Returns a TailBound starting at ``start_out`` (caller guarantees that no
    index below ``first`` needs covering). ``rho``/``k`` force a common shape;
    when ``rho`` cannot absorb the known values the ratio falls back to 1.
    """
    if tail is None:
        return None
    rho = tail.rho if rho is None else max(rho, tail.rho)
    k = tail.k if k is None else max(k, tail.k)
    mags = np.asarray(mags, dtype=float)
    c = 0.0 if tail.is_exact else tail.c
    if mags.size == 0 or not np.any(mags > 0):
        if c == 0.0:
            return TailBound(0.0, 0.0, start_out)
        return TailBound(c, rho, start_out, k)
    idx = np.arange(first, first + mags.size, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if rho > 0:
            logr = np.log(mags) - _log_binom(idx, k) - idx * math.log(rho)
            cmax = float(np.exp(np.max(logr)))
            if math.isfinite(cmax):
                return TailBound(max(c, cmax), rho, start_out, k)
        logr = np.log(mags) - _log_binom(idx, k)
        cmax = float(np.exp(np.max(logr)))
    return TailBound(max(c, cmax), 1.0, start_out, k)


def _common_covers(parts, start_out):
    """Covers for several ``(mags, first, tail)`` parts sharing one (rho, k)."""
    if any(t is None for _, _, t in parts):
        return None
    live = [t for _, _, t in parts if not t.is_exact]
    rho = max([t.rho for t in live], default=0.0)
    k = max([t.k for t in live], default=0)
    covers = [_cover(m, f, t, start_out, rho, k) for m, f, t in parts]
    rho2 = max(cv.rho for cv in covers)
    k2 = max(cv.k for cv in covers)
    if any((cv.rho != rho2 or cv.k != k2) and not cv.is_exact for cv in covers):
        covers = [_cover(m, f, t, start_out, rho2, k2) for m, f, t in parts]
    return covers


def _pick(*candidates):
    live = [t for t in candidates if t is not None]
    if not live:
        return None
    return min(live, key=lambda t: t.bound(_TAIL_PICK_R))


def _sup_tail(sup, start):
    if sup is None or not math.isfinite(sup):
        return None
    return TailBound(float(sup), 1.0, start)


def _full_majorant_at_one(f: TruncatedSeries) -> float:
    """``sum |a_n|`` over all n, or inf when the tail does not certify it."""
    if f.tail is None:
        return math.inf
    return kernels.majorant_sum(f.coeffs, 1.0) + f.tail.bound(1.0)


def _sup_of(f: TruncatedSeries) -> Optional[float]:
    s = min(f.sup_bound if f.sup_bound is not None else math.inf, _full_majorant_at_one(f))
    return s if math.isfinite(s) else None


def _last_nonzero(a: np.ndarray) -> int:
    nz = np.flatnonzero(a)
    return int(nz[-1]) if nz.size else -1


# -------------------------------------------------------------- operations


def majorant_eval(f: TruncatedSeries, r: float) -> MajorantValue:
    """Enclosure of ``M_f(r) = sum |a_n| r**n``.

    The truncated sum is accumulated in ascending index order.
    """
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    lower = float(kernels.majorant_sum(f.coeffs, r))
    if f.tail is None:
        return MajorantValue(lower, lower, certified=False)
    t = f.tail.bound(r)
    if not math.isfinite(t):
        raise DomainError(f"tail bound diverges at r={r} (rho={f.tail.rho})")
    return MajorantValue(lower, lower + t)


def truncate(f: TruncatedSeries, order: int) -> TruncatedSeries:
    """Drop coefficients above ``order``, folding them into the tail."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    if order >= f.order:
        return f
    dropped = np.abs(f.coeffs[order + 1 :])
    tail = _cover(dropped, order + 1, f.tail, order + 1)
    return TruncatedSeries(f.coeffs[: order + 1], tail, f.sup_bound)


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum at the common order."""
    n = min(f.order, g.order)
    coeffs = f.coeffs[: n + 1] + g.coeffs[: n + 1]
    covers = _common_covers(
        [
            (np.abs(f.coeffs[n + 1 :]), n + 1, f.tail),
            (np.abs(g.coeffs[n + 1 :]), n + 1, g.tail),
        ],
        n + 1,
    )
    tail = None
    if covers is not None:
        cf, cg = covers
        if cf.is_exact and cg.is_exact:
            tail = EXACT.shifted(n + 1)
        else:
            tail = TailBound(cf.c + cg.c, max(cf.rho, cg.rho), n + 1, max(cf.k, cg.k))
    sup = None
    if f.sup_bound is not None and g.sup_bound is not None:
        sup = f.sup_bound + g.sup_bound
    if tail is None or not tail.is_exact:
        tail = _pick(tail, _sup_tail(sup, n + 1))
    return TruncatedSeries(coeffs, tail, sup)


def scale(f: TruncatedSeries, s: complex) -> TruncatedSeries:
    s = complex(s)
    tail = None if f.tail is None else TailBound(f.tail.c * abs(s), f.tail.rho, f.tail.start, f.tail.k)
    sup = None if f.sup_bound is None else f.sup_bound * abs(s)
    return TruncatedSeries(f.coeffs * s, tail, sup)


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the common order.

    Tail: both factors are dominated from index 0 by envelopes sharing a ratio
    ``rho``; the product of ``C(j+a, a)`` and ``C(n-j+b, b)`` envelopes sums to
    ``C(n+a+b+1, a+b+1) rho**n``. A sup-norm envelope is used instead when it
    is tighter.
    """
    n = min(f.order, g.order)
    coeffs = kernels.cauchy_product(f.coeffs, g.coeffs, n)
    sup = None
    if f.sup_bound is not None and g.sup_bound is not None:
        sup = f.sup_bound * g.sup_bound

    tail = None
    if f.tail is not None and g.tail is not None:
        if f.tail.is_exact and g.tail.is_exact:
            df, dg = _last_nonzero(f.coeffs), _last_nonzero(g.coeffs)
            if df < 0 or dg < 0 or df + dg <= n:
                tail = EXACT.shifted(n + 1)
            else:
                full = np.convolve(f.coeffs[: df + 1], g.coeffs[: dg + 1])
                tail = _cover(np.abs(full[n + 1 :]), n + 1, EXACT, n + 1)
        else:
            covers = _common_covers(
                [(np.abs(f.coeffs), 0, f.tail), (np.abs(g.coeffs), 0, g.tail)], 0
            )
            cf, cg = covers
            if cf.is_exact or cg.is_exact:
                tail = EXACT.shifted(n + 1)
            else:
                tail = TailBound(cf.c * cg.c, max(cf.rho, cg.rho), n + 1, cf.k + cg.k + 1)
    if tail is None or not tail.is_exact:
        tail = _pick(tail, _sup_tail(sup, n + 1))
    return TruncatedSeries(coeffs, tail, sup)


def _monomial_form(phi: TruncatedSeries):
    """``(p, u)`` when ``phi`` is exactly ``u z**p`` with ``p >= 1``, else None."""
    if phi.tail is None or not phi.tail.is_exact:
        return None
    nz = np.flatnonzero(phi.coeffs)
    if nz.size != 1 or nz[0] == 0:
        return None
    p = int(nz[0])
    return p, complex(phi.coeffs[p])


def composition_bounds(f: TruncatedSeries, phi: TruncatedSeries, n: int):
    """Tail and sup certificates for ``f(phi(z))`` truncated at order ``n``.

    Returns ``(tail, sup_bound)``, either of which may be None. Certified when
    ``phi`` is an exact monomial ``u z**p`` with ``|u| <= 1`` or carries
    ``sup_bound <= 1``.
    """
    mono = _monomial_form(phi)
    self_map = (mono is not None and abs(mono[1]) <= 1.0) or (
        phi.sup_bound is not None and phi.sup_bound <= 1.0
    )
    sup = _sup_of(f) if self_map else None

    tail = None
    if mono is not None and abs(mono[1]) <= 1.0 and f.tail is not None:
        p, _ = mono
        j0 = -(-(n + 1) // p)
        cv = _cover(np.abs(f.coeffs[j0:]), j0, f.tail, j0)
        if cv.is_exact:
            tail = EXACT.shifted(n + 1)
        else:
            # |b_{pj}| <= c C(j+k,k) rho^j <= c C(pj+k,k) (rho^(1/p))^(pj)
            tail = TailBound(cv.c, cv.rho ** (1.0 / p), n + 1, cv.k)
    elif phi.tail is not None and phi.tail.is_exact and f.tail is not None and f.tail.is_exact:
        df, dp = _last_nonzero(f.coeffs), _last_nonzero(phi.coeffs)
        if df * dp <= n:
            tail = EXACT.shifted(n + 1)
    if tail is None or not tail.is_exact:
        tail = _pick(tail, _sup_tail(sup, n + 1))
    return tail, sup


def compose(f: TruncatedSeries, phi: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``f(phi(z))`` at the common order (Horner scheme).

    Requires ``phi(0) = 0``; see :func:`composition_bounds` for when the
    result carries a tail.
    """
    if phi.coeffs[0] != 0:
        raise PreconditionError("compose requires phi(0) = 0")
    n = min(f.order, phi.order)
    coeffs = kernels.compose_horner(f.coeffs[: n + 1], phi.coeffs[: n + 1])
    tail, sup = composition_bounds(f, phi, n)
    return TruncatedSeries(coeffs, tail, sup)


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """``f'``: coefficient ``(n+1) a_{n+1}`` at index n, order ``N - 1``.

    A tail ``c C(n+k,k) rho^n`` becomes ``c (k+1) rho C(n+k+1, k+1) rho^n``.
    """
    n = max(f.order - 1, 0)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    m = f.order
    coeffs[:m] = f.coeffs[1:] * np.arange(1, m + 1)
    tail = None if f.tail is None else _derivative_tail(f.tail, m)
    return TruncatedSeries(coeffs, tail)


def _derivative_tail(t: TailBound, start: int) -> TailBound:
    if t.is_exact:
        return EXACT.shifted(start)
    return TailBound(t.c * (t.k + 1) * t.rho, t.rho, start, t.k + 1)


def shift_div_z(f: TruncatedSeries) -> TruncatedSeries:
    """``f(z) / z`` for ``f(0) = 0``."""
    if f.coeffs[0] != 0:
        raise PreconditionError("shift_div_z requires f(0) = 0")
    m = f.order
    coeffs = np.zeros(max(m, 1), dtype=np.complex128)
    coeffs[:m] = f.coeffs[1:]
    tail = None
    if f.tail is not None:
        t = f.tail
        if t.is_exact:
            tail = EXACT.shifted(m)
        else:
            # C(n+1+k, k) <= (k+1) C(n+k, k)
            tail = TailBound(t.c * t.rho * (t.k + 1), t.rho, m, t.k)
    return TruncatedSeries(coeffs, tail, f.sup_bound)


def odd_part(f: TruncatedSeries) -> TruncatedSeries:
    """``(f(z) - f(-z)) / 2``."""
    a = f.coeffs.copy()
    a[0::2] = 0
    return TruncatedSeries(a, f.tail, f.sup_bound)


def even_part(f: TruncatedSeries) -> TruncatedSeries:
    """``(f(z) + f(-z)) / 2``."""
    a = f.coeffs.copy()
    a[1::2] = 0
    return TruncatedSeries(a, f.tail, f.sup_bound)


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``1/f``; no tail is certified (callers attach one)."""
    if f.coeffs[0] == 0:
        raise PreconditionError("reciprocal requires f(0) != 0")
    return TruncatedSeries(kernels.reciprocal(f.coeffs))


def power(f: TruncatedSeries, k: int) -> TruncatedSeries:
    out = one(f.order)
    for _ in range(k):
        out = mul(out, f)
    return out


def with_tail(f: TruncatedSeries, tail: Optional[TailBound], sup_bound: Optional[float] = None) -> TruncatedSeries:
    """Same coefficients with a caller-certified tail (and sup bound)."""
    return TruncatedSeries(f.coeffs, tail, sup_bound)


def evaluate(f: TruncatedSeries, z):
    """Truncated sum at the points ``z`` (scalar or array)."""
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    vals = kernels.polyval_many(f.coeffs, zz.reshape(-1)).reshape(zz.shape)
    if np.ndim(z) == 0:
        return complex(vals[0])
    return vals


def evaluation_error(f: TruncatedSeries, r: float) -> float:
    """Bound on ``|f(z) - f_N(z)|`` for ``|z| <= r``; inf without a tail."""
    if f.tail is None:
        return math.inf
    return f.tail.bound(r)


# ------------------------------------------------------------- file format


def to_dict(f: TruncatedSeries) -> dict:
    doc = {
        "coeffs": [[float(c.real), float(c.imag)] for c in f.coeffs],
        "tail": None,
    }
    if f.tail is not None:
        t = {"c": float(f.tail.c), "rho": float(f.tail.rho), "start": int(f.tail.start)}
        if f.tail.k:
            t["k"] = int(f.tail.k)
        doc["tail"] = t
    if f.sup_bound is not None:
        doc["sup_bound"] = float(f.sup_bound)
    return doc


def from_dict(doc) -> TruncatedSeries:
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise FormatError("document must be an object with a 'coeffs' field")
    raw = doc["coeffs"]
    if not isinstance(raw, list) or not raw:
        raise FormatError("'coeffs' must be a nonempty list")
    coeffs = []
    for item in raw:
        if isinstance(item, (list, tuple)) and len(item) == 2 and all(_is_num(v) for v in item):
            coeffs.append(complex(float(item[0]), float(item[1])))
        elif _is_num(item):
            coeffs.append(complex(float(item), 0.0))
        else:
            raise FormatError(f"bad coefficient entry {item!r}")
    tail = None
    t = doc.get("tail")
    if t is not None:
        try:
            tail = TailBound(float(t["c"]), float(t["rho"]), int(t["start"]), int(t.get("k", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad tail object: {exc}") from exc
    sup = doc.get("sup_bound")
    try:
        return TruncatedSeries(np.array(coeffs), tail, None if sup is None else float(sup))
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def dumps(f: TruncatedSeries) -> str:
    return json.dumps(to_dict(f))


def loads(text: str) -> TruncatedSeries:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return from_dict(doc)


def save(f: TruncatedSeries, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(f))


def load(path) -> TruncatedSeries:
    with open(path) as fh:
        return loads(fh.read())


def from_values(values: Iterable[complex]) -> TruncatedSeries:
    """Series with the given coefficients and no tail certificate."""
    return TruncatedSeries(np.fromiter(values, dtype=np.complex128))
