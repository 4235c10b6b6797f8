"""Howell form, kernels and solving, checked against enumeration oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import row_span_set, solve_set
from zncover.ringlinalg import (
    MatrixZn,
    RingSpec,
    howell,
    howell_form,
    invariant_factors,
    kernel_basis,
    pivot_positions,
    reduce_mod_span,
    solve_linear,
    span_size,
    spans_equal,
    vstack,
)


def mat(n, rows, cols=None):
    return MatrixZn.from_rows(n, rows, cols=cols)


class TestRingSpec:
    def test_factorization(self):
        r = RingSpec.of(12)
        assert r.factorization == ((2, 2), (3, 1))
        assert not r.is_local

    def test_local(self):
        assert RingSpec.of(8).is_local
        assert RingSpec.of(9).is_local

    @pytest.mark.parametrize("bad", [0, 1, -3, 2**31])
    def test_rejects_bad_modulus(self, bad):
        with pytest.raises(ValueError):
            RingSpec.of(bad)


class TestHowellPinned:
    def test_already_in_form(self):
        a = mat(4, [[2, 0], [0, 2]])
        assert howell(a).to_rows() == [[2, 0], [0, 2]]

    def test_zero_matrix_empty(self):
        assert howell(mat(4, [[0]])).rows == 0

    def test_span_preserved_2_2(self):
        a = mat(4, [[2, 2]])
        h = howell(a)
        assert h.to_rows() == [[2, 2]]
        # oracle: row spans as sets
        assert row_span_set(a) == row_span_set(h) == frozenset({(0, 0), (2, 2)})

    def test_howell_property_appends_row(self):
        # (0,2) = 2*(2,1) lies in the span and must be visible in the form
        h = howell(mat(4, [[2, 1]]))
        assert h.to_rows() == [[2, 1], [0, 2]]
        assert row_span_set(mat(4, [[2, 1]])) == row_span_set(h)


class TestSolvePinned:
    def test_solvable_with_kernel(self):
        # oracle: {x : 2x = 2 mod 4} = {1, 3}
        assert solve_set(mat(4, [[2]]), [2]) == frozenset({(1,), (3,)})
        sol = solve_linear(mat(4, [[2]]), [2])
        assert sol.particular == (1,)
        assert row_span_set(sol.kernel) == frozenset({(0,), (2,)})

    def test_unit_coefficient(self):
        sol = solve_linear(mat(4, [[1]]), [3])
        assert sol.particular == (3,)
        assert sol.kernel.rows == 0

    def test_unsolvable(self):
        assert solve_set(mat(4, [[2]]), [1]) == frozenset()
        assert solve_linear(mat(4, [[2]]), [1]) is None


class TestKernelPinned:
    def test_kernel_of_2(self):
        k = kernel_basis(mat(4, [[2]]))
        assert row_span_set(k) == frozenset({(0,), (2,)})

    def test_kernel_of_identity_empty(self):
        assert kernel_basis(MatrixZn.identity(4, 2)).rows == 0

    def test_kernel_of_zero_full(self):
        k = kernel_basis(mat(4, [[0]]))
        assert row_span_set(k) == frozenset({(0,), (1,), (2,), (3,)})


def random_matrix(rng, n, max_dim=3):
    r = rng.randrange(0, max_dim + 1)
    c = rng.randrange(0, max_dim + 1)
    return MatrixZn.from_rows(
        n, [[rng.randrange(n) for _ in range(c)] for _ in range(r)], cols=c)


@pytest.mark.parametrize("n", [4, 6])
def test_row_span_preserved_randomized(n):
    rng = random.Random(2025)
    for _ in range(120):
        a = random_matrix(rng, n)
        h = howell(a)
        assert row_span_set(a) == row_span_set(h)


@pytest.mark.parametrize("n", [4, 6, 8, 9])
def test_howell_idempotent_randomized(n):
    rng = random.Random(7)
    for _ in range(80):
        h = howell(random_matrix(rng, n))
        assert howell(h) == h


@pytest.mark.parametrize("n", [4, 6])
def test_howell_canonical_under_row_shuffle(n):
    rng = random.Random(11)
    for _ in range(60):
        a = random_matrix(rng, n)
        rows = a.to_rows()
        rng.shuffle(rows)
        b = MatrixZn.from_rows(n, rows, cols=a.cols)
        assert howell(a) == howell(b)
        assert spans_equal(a, b)


@pytest.mark.parametrize("n", [4, 5, 6, 8, 9])
def test_solve_matches_enumeration(n):
    rng = random.Random(n)
    for _ in range(60):
        a = random_matrix(rng, n)
        b = [rng.randrange(n) for _ in range(a.cols)]
        expected = solve_set(a, b)
        sol = solve_linear(a, b)
        if sol is None:
            assert expected == frozenset()
            continue
        got = set()
        for coeffs in row_span_set(sol.kernel):
            got.add(tuple((p + c) % n for p, c in zip(sol.particular, coeffs)))
        if a.rows == 0:
            got = {()}
        assert frozenset(got) == expected


@pytest.mark.parametrize("n", [4, 6, 9])
def test_kernel_matches_enumeration(n):
    rng = random.Random(n + 100)
    for _ in range(60):
        a = random_matrix(rng, n)
        k = kernel_basis(a)
        assert row_span_set(k) == solve_set(a, [0] * a.cols)
        assert howell(k) == k  # kernel comes back in Howell form


@pytest.mark.parametrize("n", [4, 6, 9, 12])
def test_howell_form_transform(n):
    rng = random.Random(n + 17)
    for _ in range(40):
        a = random_matrix(rng, n)
        h, u = howell_form(a)
        pad = MatrixZn.zeros(n, a.rows + a.cols, a.cols)
        pad = MatrixZn(pad.rows, pad.cols, n, a.data + (0,) * (a.cols * a.cols))
        prod = u.mul(pad)
        hpad = MatrixZn(u.rows, a.cols, n,
                        h.data + (0,) * ((u.rows - h.rows) * a.cols))
        assert prod == hpad
        # u invertible: its rows span the full space
        assert span_size(howell(u)) == n ** u.rows


def test_span_size_matches_enumeration():
    rng = random.Random(3)
    for n in (4, 6):
        for _ in range(40):
            h = howell(random_matrix(rng, n))
            assert span_size(h) == len(row_span_set(h))


def test_reduce_mod_span_is_canonical_rep():
    rng = random.Random(5)
    n = 6
    for _ in range(40):
        a = random_matrix(rng, n)
        if a.cols == 0:
            continue
        h = howell(a)
        span = row_span_set(h)
        v = [rng.randrange(n) for _ in range(a.cols)]
        red = reduce_mod_span(v, h)
        # difference lies in the span, reduction is idempotent
        diff = tuple((x - y) % n for x, y in zip(v, red))
        assert diff in span
        assert reduce_mod_span(red, h) == red


@given(st.integers(min_value=2, max_value=12),
       st.lists(st.lists(st.integers(min_value=0, max_value=11),
                         min_size=2, max_size=2), min_size=0, max_size=3))
@settings(max_examples=120, deadline=None)
def test_howell_idempotent_property(n, rows):
    a = MatrixZn.from_rows(n, rows, cols=2)
    h = howell(a)
    assert howell(h) == h
    for i, j in pivot_positions(h):
        d = h.data[i * h.cols + j]
        assert n % d == 0  # pivots are canonical divisors of n


def test_invariant_factors_examples():
    # Z/4 with relation 2: order-2 module
    assert invariant_factors(mat(4, [[2]]), 1) == (2,)
    # free rank 1
    assert invariant_factors(mat(4, [], cols=1), 1) == (4,)
    # diag(2,2) over Z/4
    assert invariant_factors(howell(mat(4, [[2, 0], [0, 2]])), 2) == (2, 2)
    # over Z/12: relation 4 leaves order 4, invariant factor 4
    assert invariant_factors(mat(12, [[4]]), 1) == (4,)


def test_vstack_and_blocks():
    a = mat(4, [[1, 2]])
    b = mat(4, [[3, 0]])
    assert vstack([a, b]).to_rows() == [[1, 2], [3, 0]]
