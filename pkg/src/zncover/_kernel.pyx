# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels over Z/n.

Same contract as ``zncover._kernel_py``; all arithmetic is done in C
``long long`` (moduli are capped at 2**31 - 1, so products of two reduced
residues fit comfortably).
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


cdef long long c_gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void c_egcd(long long a, long long b, long long *g, long long *s, long long *t) noexcept nogil:
    cdef long long old_r = a, r = b
    cdef long long old_s = 1, s_ = 0
    cdef long long old_t = 0, t_ = 1
    cdef long long q, tmp
    while r:
        q = old_r / r
        tmp = old_r - q * r; old_r = r; r = tmp
        tmp = old_s - q * s_; old_s = s_; s_ = tmp
        tmp = old_t - q * t_; old_t = t_; t_ = tmp
    g[0] = old_r
    s[0] = old_s
    t[0] = old_t


cdef long long c_unit_multiplier(long long a, long long n) noexcept nogil:
    cdef long long d = c_gcd(a, n)
    cdef long long g, s, t, u0, m
    if a == d:
        return 1
    c_egcd(a, n, &g, &s, &t)
    u0 = s % n
    if u0 < 0:
        u0 += n
    m = n
    g = c_gcd(m, u0)
    while g > 1:
        m = m / g
        g = c_gcd(m, u0)
    return (u0 + (m % n) * ((n / d) % n)) % n


def unit_multiplier(a, n):
    return c_unit_multiplier(a, n)


def howell_reduce(entries, nrows, ncols, n, pivot_limit, nlive):
    """See zncover._kernel_py.howell_reduce."""
    cdef Py_ssize_t m_rows = nrows, m_cols = ncols
    cdef long long nn = n
    cdef Py_ssize_t limit = pivot_limit
    cdef Py_ssize_t live = nlive
    cdef Py_ssize_t r = 0, col, i, j, piv, ro, io, po, ao
    cdef long long a, b, d, u, q, g, s, t, w, v, x, y
    cdef long long *e
    cdef Py_ssize_t size = m_rows * m_cols

    if size == 0 or limit == 0:
        return list(entries), 0, nlive

    e = <long long *> malloc(size * sizeof(long long))
    if e == NULL:
        raise MemoryError()
    try:
        for i in range(size):
            e[i] = entries[i]

        for col in range(limit):
            piv = -1
            for i in range(r, live):
                if e[i * m_cols + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                ro = r * m_cols
                po = piv * m_cols
                for j in range(col, m_cols):
                    x = e[ro + j]; e[ro + j] = e[po + j]; e[po + j] = x
            ro = r * m_cols
            u = c_unit_multiplier(e[ro + col], nn)
            if u != 1:
                for j in range(col, m_cols):
                    e[ro + j] = (u * e[ro + j]) % nn
            d = e[ro + col]
            for i in range(r + 1, live):
                io = i * m_cols
                b = e[io + col]
                if b == 0:
                    continue
                if b % d == 0:
                    q = b / d
                    for j in range(col, m_cols):
                        x = (e[io + j] - q * e[ro + j]) % nn
                        if x < 0:
                            x += nn
                        e[io + j] = x
                else:
                    c_egcd(d, b, &g, &s, &t)
                    s = s % nn
                    if s < 0:
                        s += nn
                    t = t % nn
                    if t < 0:
                        t += nn
                    w = (-(b / g)) % nn
                    if w < 0:
                        w += nn
                    v = (d / g) % nn
                    for j in range(col, m_cols):
                        x = e[ro + j]; y = e[io + j]
                        e[ro + j] = (s * x + t * y) % nn
                        e[io + j] = (w * x + v * y) % nn
                    d = g
            for i in range(r):
                io = i * m_cols
                q = e[io + col] / d
                if q:
                    for j in range(col, m_cols):
                        x = (e[io + j] - q * e[ro + j]) % nn
                        if x < 0:
                            x += nn
                        e[io + j] = x
            if d > 1:
                if live >= m_rows:
                    raise ValueError("howell_reduce: append slots exhausted")
                q = nn / d
                ao = live * m_cols
                for j in range(col, m_cols):
                    if e[ro + j]:
                        e[ao + j] = (e[ao + j] + q * e[ro + j]) % nn
                live += 1
            r += 1

        out = [0] * size
        for i in range(size):
            out[i] = e[i]
        return out, r, live
    finally:
        free(e)


def matmul(a, ar, ac, b, br, bc, n):
    """Product of flat row-major matrices mod n."""
    if ac != br:
        raise ValueError("matmul: inner dimensions differ")
    cdef Py_ssize_t m = ar, kk = ac, p = bc
    cdef long long nn = n
    cdef Py_ssize_t i, j, k, ao, bo, oo
    cdef long long x, y
    cdef long long *ca
    cdef long long *cb
    cdef long long *co
    out = [0] * (m * p)
    if m == 0 or kk == 0 or p == 0:
        return out
    ca = <long long *> malloc(m * kk * sizeof(long long))
    cb = <long long *> malloc(kk * p * sizeof(long long))
    co = <long long *> malloc(m * p * sizeof(long long))
    if ca == NULL or cb == NULL or co == NULL:
        if ca != NULL: free(ca)
        if cb != NULL: free(cb)
        if co != NULL: free(co)
        raise MemoryError()
    try:
        for i in range(m * kk):
            ca[i] = a[i]
        for i in range(kk * p):
            cb[i] = b[i]
        for i in range(m * p):
            co[i] = 0
        for i in range(m):
            ao = i * kk
            oo = i * p
            for k in range(kk):
                x = ca[ao + k]
                if x == 0:
                    continue
                bo = k * p
                for j in range(p):
                    y = cb[bo + j]
                    if y:
                        co[oo + j] = (co[oo + j] + x * y) % nn
        for i in range(m * p):
            out[i] = co[i]
        return out
    finally:
        free(ca)
        free(cb)
        free(co)
