"""Exact linear algebra over Z/n: Howell forms, kernels, linear solving.

Conventions used throughout the package:

* matrices are row-major with entries reduced into ``[0, n)``;
* linear maps act on row vectors from the right, so the map with matrix A
  sends x to ``x @ A``, spans are row spans and kernels are left kernels;
* ``solve_linear(A, b)`` solves ``x @ A = b``.

The Howell form is the canonical shape for row spans over Z/n: echelon with
pivots that divide n, entries above each pivot reduced below it, and the
span closed under the annihilator multiples of each row.  Unlike plain
echelon forms it is unique for a given row span, which is what makes module
presentations and morphism comparisons canonical downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ._backend import howell_reduce, matmul

MAX_MODULUS = 2**31 - 1


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, k), ...), primes ascending."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@dataclass(frozen=True)
class RingSpec:
    """The base ring Z/n with its prime factorization."""

    modulus: int
    factorization: tuple[tuple[int, int], ...]

    @staticmethod
    def of(n: int) -> "RingSpec":
        if not isinstance(n, int) or n < 2:
            raise ValueError("modulus must be an integer >= 2")
        if n > MAX_MODULUS:
            raise ValueError("modulus exceeds 2**31 - 1")
        return RingSpec(n, factorize(n))

    @property
    def is_local(self) -> bool:
        return len(self.factorization) == 1

    def __post_init__(self):
        prod = 1
        primes = [p for p, _ in self.factorization]
        for p, k in self.factorization:
            prod *= p**k
        if prod != self.modulus or primes != sorted(set(primes)):
            raise ValueError("factorization inconsistent with modulus")


@dataclass(frozen=True)
class MatrixZn:
    """Immutable row-major matrix over Z/n."""

    rows: int
    cols: int
    modulus: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(n: int, rows: list[list[int]], cols: int | None = None) -> "MatrixZn":
        r = len(rows)
        if r == 0:
            if cols is None:
                cols = 0
            return MatrixZn(0, cols, n, ())
        c = len(rows[0])
        if cols is not None and cols != c:
            raise ValueError("column count mismatch")
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(x % n for x in row)
        return MatrixZn(r, c, n, tuple(flat))

    @staticmethod
    def from_flat(n: int, rows: int, cols: int, flat) -> "MatrixZn":
        return MatrixZn(rows, cols, n, tuple(x % n for x in flat))

    @staticmethod
    def identity(n: int, size: int) -> "MatrixZn":
        flat = [0] * (size * size)
        for i in range(size):
            flat[i * size + i] = 1 % n
        return MatrixZn(size, size, n, tuple(flat))

    @staticmethod
    def zeros(n: int, rows: int, cols: int) -> "MatrixZn":
        return MatrixZn(rows, cols, n, (0,) * (rows * cols))

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.data)

    def mul(self, other: "MatrixZn") -> "MatrixZn":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        flat = matmul(list(self.data), self.rows, self.cols,
                      list(other.data), other.rows, other.cols, self.modulus)
        return MatrixZn(self.rows, other.cols, self.modulus, tuple(flat))

    def add(self, other: "MatrixZn") -> "MatrixZn":
        if (self.rows, self.cols, self.modulus) != (other.rows, other.cols, other.modulus):
            raise ValueError("shape mismatch")
        n = self.modulus
        return MatrixZn(self.rows, self.cols, n,
                        tuple((x + y) % n for x, y in zip(self.data, other.data)))

    def neg(self) -> "MatrixZn":
        n = self.modulus
        return MatrixZn(self.rows, self.cols, n, tuple((-x) % n for x in self.data))

    def scale(self, c: int) -> "MatrixZn":
        n = self.modulus
        c %= n
        return MatrixZn(self.rows, self.cols, n, tuple((c * x) % n for x in self.data))

    def transpose(self) -> "MatrixZn":
        flat = [0] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                flat[j * self.rows + i] = self.data[i * self.cols + j]
        return MatrixZn(self.cols, self.rows, self.modulus, tuple(flat))

    def take_columns(self, lo: int, hi: int) -> "MatrixZn":
        flat = []
        for i in range(self.rows):
            flat.extend(self.data[i * self.cols + lo:i * self.cols + hi])
        return MatrixZn(self.rows, hi - lo, self.modulus, tuple(flat))

    def take_rows(self, lo: int, hi: int) -> "MatrixZn":
        return MatrixZn(hi - lo, self.cols, self.modulus,
                        self.data[lo * self.cols:hi * self.cols])


def vstack(mats: list[MatrixZn], cols: int | None = None, modulus: int | None = None) -> MatrixZn:
    mats = [m for m in mats]
    if not mats:
        if cols is None or modulus is None:
            raise ValueError("vstack of nothing needs explicit shape")
        return MatrixZn(0, cols, modulus, ())
    c = mats[0].cols
    n = mats[0].modulus
    flat = []
    rows = 0
    for m in mats:
        if m.cols != c or m.modulus != n:
            raise ValueError("vstack shape mismatch")
        flat.extend(m.data)
        rows += m.rows
    return MatrixZn(rows, c, n, tuple(flat))


def hstack(a: MatrixZn, b: MatrixZn) -> MatrixZn:
    if a.rows != b.rows or a.modulus != b.modulus:
        raise ValueError("hstack shape mismatch")
    flat = []
    for i in range(a.rows):
        flat.extend(a.row(i))
        flat.extend(b.row(i))
    return MatrixZn(a.rows, a.cols + b.cols, a.modulus, tuple(flat))


def block_diag(mats: list[MatrixZn], modulus: int) -> MatrixZn:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    flat = [0] * (rows * cols)
    ro = co = 0
    for m in mats:
        for i in range(m.rows):
            base = (ro + i) * cols + co
            flat[base:base + m.cols] = m.row(i)
        ro += m.rows
        co += m.cols
    return MatrixZn(rows, cols, modulus, tuple(flat))


def howell(a: MatrixZn) -> MatrixZn:
    """The Howell normal form of a's row span (zero rows stripped)."""
    m, c, n = a.rows, a.cols, a.modulus
    if c == 0 or m == 0:
        return MatrixZn(0, c, n, ())
    buf = list(a.data) + [0] * (c * c)
    out, npiv, _ = howell_reduce(buf, m + c, c, n, c, m)
    return MatrixZn(npiv, c, n, tuple(out[:npiv * c]))


def howell_form(a: MatrixZn) -> tuple[MatrixZn, MatrixZn]:
    """Howell form H plus an invertible transform U.

    U is square of size ``a.rows + a.cols`` and satisfies ``U @ pad(A) = pad(H)``
    where pad stacks zero rows below (the extra rows absorb the annihilator
    rows the Howell form may need beyond A's own row count).
    """
    m, c, n = a.rows, a.cols, a.modulus
    total = m + c
    width = c + total
    buf = [0] * (total * width)
    for i in range(m):
        buf[i * width:i * width + c] = a.data[i * c:(i + 1) * c]
    for i in range(total):
        buf[i * width + c + i] = 1 % n
    out, npiv, _ = howell_reduce(buf, total, width, n, c, m)
    h = []
    u = []
    for i in range(total):
        row = out[i * width:(i + 1) * width]
        if i < npiv:
            h.append(row[:c])
        u.append(row[c:])
    hflat = [x for row in h for x in row]
    uflat = [x for row in u for x in row]
    return (MatrixZn(npiv, c, n, tuple(hflat)),
            MatrixZn(total, total, n, tuple(uflat)))


def _augmented(a: MatrixZn):
    """Full Howell reduction of [A | I]; returns (pivot rows, c)."""
    m, c, n = a.rows, a.cols, a.modulus
    width = c + m
    total = m + width
    buf = [0] * (total * width)
    for i in range(m):
        buf[i * width:i * width + c] = a.data[i * c:(i + 1) * c]
        buf[i * width + c + i] = 1 % n
    out, npiv, _ = howell_reduce(buf, total, width, n, width, m)
    rows = [out[i * width:(i + 1) * width] for i in range(npiv)]
    return rows, c


def kernel_basis(a: MatrixZn) -> MatrixZn:
    """Howell-form spanning set of the left kernel {x : x @ A = 0}."""
    m, c, n = a.rows, a.cols, a.modulus
    if m == 0:
        return MatrixZn(0, 0, n, ())
    rows, _ = _augmented(a)
    tails = [r[c:] for r in rows if not any(r[:c])]
    return MatrixZn(len(tails), m, n, tuple(x for r in tails for x in r))


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[int, ...]
    kernel: MatrixZn


def pivot_positions(h: MatrixZn) -> list[tuple[int, int]]:
    """(row, col) of each pivot of a matrix in Howell form."""
    out = []
    for i in range(h.rows):
        row = h.row(i)
        for j, x in enumerate(row):
            if x:
                out.append((i, j))
                break
    return out


def reduce_mod_span(v, h: MatrixZn) -> tuple[int, ...]:
    """Canonical representative of v modulo the row span of Howell-form h."""
    n = h.modulus
    res = [x % n for x in v]
    if len(res) != h.cols:
        raise ValueError("vector length mismatch")
    for i, j in pivot_positions(h):
        d = h.data[i * h.cols + j]
        q = res[j] // d
        if q:
            row = h.row(i)
            for k in range(j, h.cols):
                res[k] = (res[k] - q * row[k]) % n
    return tuple(res)


def span_contains(h: MatrixZn, v) -> bool:
    return not any(reduce_mod_span(v, h))


def spans_equal(a: MatrixZn, b: MatrixZn) -> bool:
    return howell(a) == howell(b)


def span_size(h: MatrixZn) -> int:
    """Number of elements of the row span of a Howell-form matrix."""
    n = h.modulus
    size = 1
    for i, j in pivot_positions(h):
        size *= n // h.data[i * h.cols + j]
    return size


def solve_linear(a: MatrixZn, b) -> LinearSolution | None:
    """Solve x @ A = b; returns a canonical particular solution and the
    Howell-form kernel of A, or None when the system is inconsistent."""
    m, c, n = a.rows, a.cols, a.modulus
    bb = [x % n for x in b]
    if len(bb) != c:
        raise ValueError("right-hand side has wrong length")
    if m == 0:
        if any(bb):
            return None
        return LinearSolution((), MatrixZn(0, 0, n, ()))
    rows, _ = _augmented(a)
    res = list(bb)
    x = [0] * m
    for row in rows:
        j = next((k for k, val in enumerate(row) if val), None)
        if j is None or j >= c:
            break
        d = row[j]
        if res[j] % d:
            continue
        q = res[j] // d
        if q:
            for k in range(j, c):
                res[k] = (res[k] - q * row[k]) % n
            for k in range(m):
                x[k] = (x[k] + q * row[c + k]) % n
    if any(res):
        return None
    ker = kernel_basis(a)
    return LinearSolution(reduce_mod_span(x, ker), ker)


def _snf_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (nonnegative,
    divisibility chain).  Small dense matrices only."""
    m = [row[:] for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # locate a nonzero entry of minimal magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = abs(m[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        for row in m:
            row[t], row[bj] = row[bj], row[t]
        while True:
            # clear column t
            again = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, nc):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        again = True
            # clear row t
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, nr):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(t, nr):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        again = True
            if again:
                continue
            # enforce divisibility against the rest of the block
            pivot = m[t][t]
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, nc):
                m[t][j] += m[offender][j]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def invariant_factors(relations: MatrixZn, generators: int) -> tuple[int, ...]:
    """Nontrivial invariant factors of (Z/n)^g / rowspan(relations).

    Computed as the Smith form over Z of the relations stacked on n*I, so
    every factor divides n; factors equal to 1 are dropped.
    """
    n = relations.modulus
    rows = relations.to_rows()
    for i in range(generators):
        row = [0] * generators
        row[i] = n
        rows.append(row)
    diag = _snf_diagonal(rows) if rows else []
    return tuple(sorted(d for d in diag if d > 1))


def primary_divisors(factors: tuple[int, ...], ring: RingSpec) -> tuple[int, ...]:
    """Split invariant factors into prime-power elementary divisors."""
    out = []
    for f in factors:
        for p, _ in ring.factorization:
            e = 0
            while f % p == 0:
                f //= p
                e += 1
            if e:
                out.append(p**e)
    return tuple(sorted(out))
