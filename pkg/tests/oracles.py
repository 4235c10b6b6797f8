"""Brute-force enumeration oracles shared by the test modules.

These deliberately avoid the package's own reduction machinery: spans are
enumerated element by element, solutions by trying every vector.  They are
the independent side of every dual-route check.
"""

import itertools

from zncover.ringlinalg import MatrixZn


def row_span_set(a: MatrixZn) -> frozenset:
    """All Z/n-combinations of the rows of a, as a set of tuples."""
    n = a.modulus
    span = set()
    for coeffs in itertools.product(range(n), repeat=a.rows):
        v = [0] * a.cols
        for c, i in zip(coeffs, range(a.rows)):
            row = a.row(i)
            for j in range(a.cols):
                v[j] = (v[j] + c * row[j]) % n
        span.add(tuple(v))
    return frozenset(span)


def solve_set(a: MatrixZn, b) -> frozenset:
    """All x with x @ A = b, found by exhausting (Z/n)^rows."""
    n = a.modulus
    target = tuple(x % n for x in b)
    out = set()
    for x in itertools.product(range(n), repeat=a.rows):
        v = [0] * a.cols
        for c, i in zip(x, range(a.rows)):
            row = a.row(i)
            for j in range(a.cols):
                v[j] = (v[j] + c * row[j]) % n
        if tuple(v) == target:
            out.add(x)
    return frozenset(out)


def coset_count(n: int, generators: int, relation_rows) -> int:
    """Order of (Z/n)^g / span(relations) by enumerating cosets."""
    rel = MatrixZn.from_rows(n, relation_rows, cols=generators)
    span = row_span_set(rel)
    seen = set()
    count = 0
    for v in itertools.product(range(n), repeat=generators):
        if v in seen:
            continue
        count += 1
        for s in span:
            seen.add(tuple((a + b) % n for a, b in zip(v, s)))
    return count


def hom_count(n: int, src_gens: int, src_rel_rows, dst_gens: int, dst_rel_rows) -> int:
    """Number of module homomorphisms, counted over assignment matrices.

    Two assignment matrices induce the same morphism iff they differ by the
    target relation span in every row, so the count divides out that span.
    """
    src_rel = MatrixZn.from_rows(n, src_rel_rows, cols=src_gens)
    dst_rel = MatrixZn.from_rows(n, dst_rel_rows, cols=dst_gens)
    dst_span = row_span_set(dst_rel)
    well_defined = 0
    for flat in itertools.product(range(n), repeat=src_gens * dst_gens):
        rows = [flat[i * dst_gens:(i + 1) * dst_gens] for i in range(src_gens)]
        ok = True
        for r in range(src_rel.rows):
            rel = src_rel.row(r)
            img = [0] * dst_gens
            for c, row in zip(rel, rows):
                for j in range(dst_gens):
                    img[j] = (img[j] + c * row[j]) % n
            if tuple(img) not in dst_span:
                ok = False
                break
        if ok:
            well_defined += 1
    return well_defined // (len(dst_span) ** src_gens)
