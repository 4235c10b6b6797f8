"""Pure-Python row-reduction kernels over Z/n.

Drop-in twin of the compiled extension ``zncover._kernel``; the active
implementation is chosen in ``zncover._backend``.  Matrices are flat
row-major lists of residues in ``[0, n)``.
"""

from math import gcd

BACKEND = "python"


def _egcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def unit_multiplier(a, n):
    """A unit u mod n with u*a == gcd(a, n) mod n, for a in [1, n).

    Every residue is a unit multiple of its gcd with n; the extended gcd
    supplies a candidate that is invertible mod n // gcd(a, n), and adding
    the part of n coprime to it shifts the candidate into the unit group.
    """
    d = gcd(a, n)
    if a == d:
        return 1
    _, s, _ = _egcd(a, n)
    u0 = s % n
    m = n
    g = gcd(m, u0)
    while g > 1:
        m //= g
        g = gcd(m, u0)
    return (u0 + m * (n // d)) % n


def howell_reduce(entries, nrows, ncols, n, pivot_limit, nlive):
    """Span-preserving reduction to Howell form over columns [0, pivot_limit).

    ``entries`` is a flat buffer of ``nrows * ncols`` residues.  Rows
    ``[nlive, nrows)`` are spare slots used to record annihilator rows
    (their columns below ``pivot_limit`` must be zero on entry).  Columns at
    ``pivot_limit`` and beyond are carried along but never searched for
    pivots, which is how transforms and kernels are tracked.

    Returns ``(entries, npivots, nlive)``; rows ``[0, npivots)`` hold the
    pivots in echelon order and every other row is zero on the pivot range.
    """
    e = list(entries)
    r = 0
    for col in range(pivot_limit):
        piv = -1
        for i in range(r, nlive):
            if e[i * ncols + col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            ro, po = r * ncols, piv * ncols
            e[ro:ro + ncols], e[po:po + ncols] = e[po:po + ncols], e[ro:ro + ncols]
        ro = r * ncols
        u = unit_multiplier(e[ro + col], n)
        if u != 1:
            for j in range(col, ncols):
                e[ro + j] = (u * e[ro + j]) % n
        d = e[ro + col]
        for i in range(r + 1, nlive):
            io = i * ncols
            b = e[io + col]
            if not b:
                continue
            if b % d == 0:
                q = b // d
                for j in range(col, ncols):
                    e[io + j] = (e[io + j] - q * e[ro + j]) % n
            else:
                g, s, t = _egcd(d, b)
                s %= n
                t %= n
                w = (-(b // g)) % n
                v = (d // g) % n
                for j in range(col, ncols):
                    x, y = e[ro + j], e[io + j]
                    e[ro + j] = (s * x + t * y) % n
                    e[io + j] = (w * x + v * y) % n
                d = g
        for i in range(r):
            io = i * ncols
            q = e[io + col] // d
            if q:
                for j in range(col, ncols):
                    e[io + j] = (e[io + j] - q * e[ro + j]) % n
        if d > 1:
            # Howell property: record the annihilator multiple of the pivot row.
            if nlive >= nrows:
                raise ValueError("howell_reduce: append slots exhausted")
            ann = n // d
            ao = nlive * ncols
            for j in range(col, ncols):
                if e[ro + j]:
                    e[ao + j] = (e[ao + j] + ann * e[ro + j]) % n
            nlive += 1
        r += 1
    return e, r, nlive


def matmul(a, ar, ac, b, br, bc, n):
    """Product of flat row-major matrices mod n."""
    if ac != br:
        raise ValueError("matmul: inner dimensions differ")
    out = [0] * (ar * bc)
    for i in range(ar):
        ao = i * ac
        oo = i * bc
        for k in range(ac):
            x = a[ao + k]
            if not x:
                continue
            bo = k * bc
            for j in range(bc):
                y = b[bo + j]
                if y:
                    out[oo + j] = (out[oo + j] + x * y) % n
    return out
