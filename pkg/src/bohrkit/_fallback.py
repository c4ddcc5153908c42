"""Numpy implementations of the coefficient kernels.

Same contracts as the compiled ``_kernels`` module; used when the extension
is not built. All inputs are 1-d complex128 arrays.
"""
import numpy as np


def cauchy_product(a, b, n):
    """First ``n + 1`` coefficients of the product of two series."""
    out = np.zeros(n + 1, dtype=np.complex128)
    la = min(len(a), n + 1)
    lb = min(len(b), n + 1)
    if la == 0 or lb == 0:
        return out
    full = np.convolve(a[:la], b[:lb])
    m = min(len(full), n + 1)
    out[:m] = full[:m]
    return out


def compose_horner(f, phi):
    """Coefficients of ``f(phi(z))`` truncated to ``len(phi) - 1``.

    ``phi[0]`` must be zero; this is checked by the caller.
    """
    n = len(phi) - 1
    nz = np.flatnonzero(f[: n + 1])
    out = np.zeros(n + 1, dtype=np.complex128)
    if len(nz) == 0:
        return out
    deg = int(nz[-1])
    pnz = np.flatnonzero(phi)
    p = phi[: int(pnz[-1]) + 1] if len(pnz) else phi[:1]
    acc = np.array([f[deg]], dtype=np.complex128)
    for j in range(deg - 1, -1, -1):
        acc = np.convolve(acc, p)[: n + 1]
        acc[0] += f[j]
    out[: len(acc)] = acc
    return out


def reciprocal(a):
    """Coefficients of ``1 / a(z)`` to the order of ``a``; needs ``a[0] != 0``."""
    n = len(a) - 1
    b = np.zeros(n + 1, dtype=np.complex128)
    inv0 = 1.0 / a[0]
    b[0] = inv0
    for k in range(1, n + 1):
        # a[1..k] against b[k-1..0]
        b[k] = -inv0 * np.dot(a[1 : k + 1], b[k - 1 :: -1])
    return b


def majorant_sum(a, r):
    """Sum of |a_n| r^n, accumulated in ascending index order."""
    if len(a) == 0:
        return 0.0
    powers = np.empty(len(a))
    powers[0] = 1.0
    powers[1:] = r
    # cumprod/cumsum accumulate strictly left to right
    return float(np.cumsum(np.abs(a) * np.cumprod(powers))[-1])


def polyval_many(a, z):
    """Evaluate the polynomial with coefficients ``a`` at every point of ``z``."""
    out = np.zeros(len(z), dtype=np.complex128)
    for c in a[::-1]:
        out = out * z + c
    return out


def rational_series(num, den, n):
    """First ``n + 1`` coefficients of ``num(z) / den(z)``; needs ``den[0] != 0``.

    Linear recurrence in ``den``, so the cost is ``O(n * len(den))``.
    """
    out = np.zeros(n + 1, dtype=np.complex128)
    p = np.zeros(n + 1, dtype=np.complex128)
    m = min(len(num), n + 1)
    p[:m] = num[:m]
    q = np.asarray(den, dtype=np.complex128)
    d = len(q) - 1
    inv0 = 1.0 / q[0]
    qr = q[1:][::-1]
    for k in range(n + 1):
        j = min(k, d)
        # q[1..j] against out[k-1..k-j]
        s = np.dot(qr[d - j :], out[k - j : k]) if j else 0.0
        out[k] = (p[k] - s) * inv0
    return out
