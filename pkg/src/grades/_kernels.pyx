# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan of Gram submatrix spectra.

Same interface as ``grades._fallback``. Each s-by-s submatrix is reduced
to tridiagonal form by Householder reflections and its eigenvalues found
by implicit QL; both steps are backward stable, so the extremes are
accurate to a few ulps of the submatrix norm.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, copysign, fabs, sqrt
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    MAX_QL_ITERS = 60


cdef void _tridiagonalize(double* a, Py_ssize_t n, double* d, double* e) noexcept nogil:
    """Householder reduction of symmetric ``a`` (row-major, overwritten).

    Leaves the diagonal in ``d`` and the subdiagonal in ``e[1:]``.
    """
    cdef Py_ssize_t i, j, k, l
    cdef double scale, h, f, g, hh
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        scale = 0.0
        if l > 0:
            for k in range(l + 1):
                scale += fabs(a[i * n + k])
            if scale == 0.0:
                e[i] = a[i * n + l]
            else:
                for k in range(l + 1):
                    a[i * n + k] /= scale
                    h += a[i * n + k] * a[i * n + k]
                f = a[i * n + l]
                g = -sqrt(h) if f >= 0.0 else sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i * n + l] = f - g
                f = 0.0
                for j in range(l + 1):
                    g = 0.0
                    for k in range(j + 1):
                        g += a[j * n + k] * a[i * n + k]
                    for k in range(j + 1, l + 1):
                        g += a[k * n + j] * a[i * n + k]
                    e[j] = g / h
                    f += e[j] * a[i * n + j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i * n + j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        a[j * n + k] -= f * e[k] + g * a[i * n + k]
        else:
            e[i] = a[i * n + l]
    e[0] = 0.0
    for i in range(n):
        d[i] = a[i * n + i]


cdef void _ql_eigenvalues(double* d, double* e, Py_ssize_t n) noexcept nogil:
    """Implicit QL with Wilkinson shifts on a tridiagonal matrix; eigenvalues land in ``d``."""
    cdef Py_ssize_t i, l, m, it
    cdef double dd, g, r, s, c, p, f, b
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= 2.2e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > MAX_QL_ITERS:
                break
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = sqrt(g * g + 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = sqrt(f * f + g * g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if r == 0.0 and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


cdef void _extremes(double* a, Py_ssize_t s, double* work, double* lo, double* hi) noexcept nogil:
    """Min and max eigenvalue of symmetric ``a`` (s*s, overwritten); ``work`` holds 2*s doubles."""
    cdef double* d = work
    cdef double* e = work + s
    cdef Py_ssize_t i
    cdef double mn, mx
    if s == 1:
        lo[0] = a[0]
        hi[0] = a[0]
        return
    _tridiagonalize(a, s, d, e)
    _ql_eigenvalues(d, e, s)
    mn = d[0]
    mx = d[0]
    for i in range(1, s):
        if d[i] < mn:
            mn = d[i]
        if d[i] > mx:
            mx = d[i]
    lo[0] = mn
    hi[0] = mx


cdef inline void _load(const double[:, ::1] gram, const Py_ssize_t* idx,
                       Py_ssize_t s, double* buf) noexcept nogil:
    cdef Py_ssize_t i, j
    for i in range(s):
        for j in range(s):
            buf[i * s + j] = gram[idx[i], idx[j]]


def lex_extremes(const double[:, ::1] gram, Py_ssize_t s):
    """Scan every size-``s`` column subset in lexicographic order.

    Returns ``(alpha, beta, alpha_support, beta_support, count)``; on ties
    the first support in lexicographic order is reported.
    """
    cdef Py_ssize_t n = gram.shape[0]
    cdef Py_ssize_t i, j
    cdef Py_ssize_t count = 0
    cdef double lo, hi
    cdef double alpha = INFINITY
    cdef double beta = -INFINITY
    if s < 1 or s > n:
        raise ValueError("need 1 <= s <= n")
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc(s * sizeof(Py_ssize_t))
    cdef double* buf = <double*> malloc((s * s + 2 * s) * sizeof(double))
    amin = np.zeros(s, dtype=np.intp)
    amax = np.zeros(s, dtype=np.intp)
    cdef Py_ssize_t[::1] amin_v = amin
    cdef Py_ssize_t[::1] amax_v = amax
    if idx == NULL or buf == NULL:
        free(idx)
        free(buf)
        raise MemoryError()
    try:
        with nogil:
            for i in range(s):
                idx[i] = i
            while True:
                _load(gram, idx, s, buf)
                _extremes(buf, s, buf + s * s, &lo, &hi)
                count += 1
                if lo < alpha:
                    alpha = lo
                    for j in range(s):
                        amin_v[j] = idx[j]
                if hi > beta:
                    beta = hi
                    for j in range(s):
                        amax_v[j] = idx[j]
                # next combination in lexicographic order
                i = s - 1
                while i >= 0 and idx[i] == n - s + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for j in range(i + 1, s):
                    idx[j] = idx[j - 1] + 1
    finally:
        free(idx)
        free(buf)
    return alpha, beta, amin, amax, count


def support_extremes(const double[:, ::1] gram, const Py_ssize_t[:, ::1] supports):
    """Extremal eigenvalues over the given rows of ``supports`` (shape T x s)."""
    cdef Py_ssize_t T = supports.shape[0]
    cdef Py_ssize_t s = supports.shape[1]
    cdef Py_ssize_t t, j
    cdef double lo, hi
    cdef double alpha = INFINITY
    cdef double beta = -INFINITY
    cdef Py_ssize_t tmin = 0, tmax = 0
    if T < 1 or s < 1:
        raise ValueError("need at least one non-empty support")
    cdef double* buf = <double*> malloc((s * s + 2 * s) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for t in range(T):
                _load(gram, &supports[t, 0], s, buf)
                _extremes(buf, s, buf + s * s, &lo, &hi)
                if lo < alpha:
                    alpha = lo
                    tmin = t
                if hi > beta:
                    beta = hi
                    tmax = t
    finally:
        free(buf)
    sup = np.asarray(supports)
    return alpha, beta, sup[tmin].copy(), sup[tmax].copy(), T
