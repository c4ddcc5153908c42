# cython: language_level=3
"""Compiled coefficient kernels.

Contracts match ``bohrkit._fallback`` exactly; see that module for the
reference semantics. Inputs are 1-d complex128 arrays.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport hypot
from libc.stdlib cimport free, malloc

cnp.import_array()

ctypedef double complex cplx

# beyond this operand length numpy's vectorized convolution is faster than
# the scalar loop below (see benchmarks/bench_kernels.py)
CONV_CUTOFF = 96


cdef void _trunc_conv(const cplx[::1] a, Py_ssize_t la,
                      const cplx[::1] b, Py_ssize_t lb,
                      cplx[::1] out, Py_ssize_t n) noexcept nogil:
    # b is reversed into split real/imaginary buffers so the inner loop is a
    # forward dot product; four partial sums break the add dependency chain
    cdef Py_ssize_t k, j, jlo, jhi, off
    cdef double s0, s1, s2, s3, t0, t1, t2, t3
    cdef double *ar = <double *> malloc(la * sizeof(double))
    cdef double *ai = <double *> malloc(la * sizeof(double))
    cdef double *br = <double *> malloc(lb * sizeof(double))
    cdef double *bi = <double *> malloc(lb * sizeof(double))
    for j in range(la):
        ar[j] = a[j].real
        ai[j] = a[j].imag
    for j in range(lb):
        br[lb - 1 - j] = b[j].real
        bi[lb - 1 - j] = b[j].imag
    for k in range(n + 1):
        jlo = k - lb + 1
        if jlo < 0:
            jlo = 0
        jhi = k
        if jhi > la - 1:
            jhi = la - 1
        # b[k - j] sits at br[lb - 1 - k + j]
        off = lb - 1 - k
        s0 = s1 = s2 = s3 = 0.0
        t0 = t1 = t2 = t3 = 0.0
        j = jlo
        while j + 1 <= jhi:
            s0 = s0 + ar[j] * br[off + j]
            s1 = s1 - ai[j] * bi[off + j]
            t0 = t0 + ar[j] * bi[off + j]
            t1 = t1 + ai[j] * br[off + j]
            s2 = s2 + ar[j + 1] * br[off + j + 1]
            s3 = s3 - ai[j + 1] * bi[off + j + 1]
            t2 = t2 + ar[j + 1] * bi[off + j + 1]
            t3 = t3 + ai[j + 1] * br[off + j + 1]
            j = j + 2
        if j <= jhi:
            s0 = s0 + ar[j] * br[off + j]
            s1 = s1 - ai[j] * bi[off + j]
            t0 = t0 + ar[j] * bi[off + j]
            t1 = t1 + ai[j] * br[off + j]
        out[k].real = (s0 + s1) + (s2 + s3)
        out[k].imag = (t0 + t1) + (t2 + t3)
    free(ar)
    free(ai)
    free(br)
    free(bi)


def cauchy_product(a, b, Py_ssize_t n):
    cdef const cplx[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const cplx[::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] ov = out
    cdef Py_ssize_t la = min(av.shape[0], n + 1)
    cdef Py_ssize_t lb = min(bv.shape[0], n + 1)
    if la == 0 or lb == 0:
        return out
    if min(la, lb) > CONV_CUTOFF:
        full = np.convolve(np.asarray(av[:la]), np.asarray(bv[:lb]))
        m = min(full.shape[0], n + 1)
        out[:m] = full[:m]
        return out
    with nogil:
        _trunc_conv(av, la, bv, lb, ov, n)
    return out


def compose_horner(f, phi):
    cdef const cplx[::1] fv = np.ascontiguousarray(f, dtype=np.complex128)
    cdef const cplx[::1] pv = np.ascontiguousarray(phi, dtype=np.complex128)
    cdef Py_ssize_t n = pv.shape[0] - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    tmp = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] ov = out
    cdef cplx[::1] tv = tmp
    cdef Py_ssize_t deg = -1, lp = 0, j, k, m
    cdef Py_ssize_t top = min(fv.shape[0] - 1, n)
    for j in range(top, -1, -1):
        if fv[j] != 0:
            deg = j
            break
    if deg < 0:
        return out
    for j in range(n, -1, -1):
        if pv[j] != 0:
            lp = j + 1
            break
    if lp > CONV_CUTOFF:
        p = np.asarray(pv[:lp])
        acc = np.array([fv[deg]], dtype=np.complex128)
        for j in range(deg - 1, -1, -1):
            acc = np.convolve(acc, p)[: n + 1]
            acc[0] += fv[j]
        out[: acc.shape[0]] = acc
        return out
    with nogil:
        ov[0] = fv[deg]
        # live length of the accumulator grows by deg(phi) per step, capped at n + 1
        m = 1
        for j in range(deg - 1, -1, -1):
            _trunc_conv(ov, m, pv, lp, tv, n)
            m = m + lp - 1
            if m > n + 1:
                m = n + 1
            if m < 1:
                m = 1
            for k in range(m):
                ov[k] = tv[k]
            for k in range(m, n + 1):
                ov[k] = 0
            ov[0] = ov[0] + fv[j]
    return out


def reciprocal(a):
    cdef const cplx[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0] - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] bv = out
    cdef cplx inv0 = 1.0 / av[0]
    cdef double sr, si
    cdef Py_ssize_t k, j
    with nogil:
        bv[0] = inv0
        for k in range(1, n + 1):
            sr = 0.0
            si = 0.0
            for j in range(1, k + 1):
                sr = sr + av[j].real * bv[k - j].real - av[j].imag * bv[k - j].imag
                si = si + av[j].real * bv[k - j].imag + av[j].imag * bv[k - j].real
            bv[k].real = -(inv0.real * sr - inv0.imag * si)
            bv[k].imag = -(inv0.real * si + inv0.imag * sr)
    return out


def majorant_sum(a, double r):
    cdef const cplx[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0], k
    cdef double total = 0.0, p = 1.0
    with nogil:
        for k in range(n):
            total = total + hypot(av[k].real, av[k].imag) * p
            p = p * r
    return total


def polyval_many(a, z):
    cdef const cplx[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const cplx[::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0], m = zv.shape[0], i, k
    out = np.zeros(m, dtype=np.complex128)
    cdef cplx[::1] ov = out
    cdef cplx acc, zi
    with nogil:
        for i in range(m):
            acc = 0
            zi = zv[i]
            for k in range(n - 1, -1, -1):
                acc = acc * zi + av[k]
            ov[i] = acc
    return out


def rational_series(num, den, Py_ssize_t n):
    cdef const cplx[::1] pv = np.ascontiguousarray(num, dtype=np.complex128)
    cdef const cplx[::1] qv = np.ascontiguousarray(den, dtype=np.complex128)
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef cplx[::1] ov = out
    cdef Py_ssize_t lp = pv.shape[0], d = qv.shape[0] - 1, k, j, jhi
    cdef cplx inv0 = 1.0 / qv[0]
    cdef cplx s
    with nogil:
        for k in range(n + 1):
            s = pv[k] if k < lp else 0
            jhi = k if k < d else d
            for j in range(1, jhi + 1):
                s = s - qv[j] * ov[k - j]
            ov[k] = s * inv0
    return out
