"""The compiled kernel and the pure-Python kernel must agree exactly."""

import random

import pytest

from zncover import _backend, _kernel_py

compiled = pytest.importorskip("zncover._kernel")


def test_active_backend_reported():
    assert _backend.BACKEND in ("python", "compiled")


@pytest.mark.parametrize("n", [2, 4, 6, 9, 12, 30, 2**31 - 1])
def test_howell_reduce_parity(n):
    rng = random.Random(n % 1000)
    for _ in range(40):
        rows = rng.randrange(0, 5)
        cols = rng.randrange(0, 5)
        nrows = rows + cols
        flat = [rng.randrange(n) for _ in range(rows * cols)] + [0] * (cols * cols)
        args = (flat, nrows, cols, n, cols, rows)
        assert _kernel_py.howell_reduce(*args) == compiled.howell_reduce(*args)


@pytest.mark.parametrize("n", [3, 8, 12, 2**31 - 1])
def test_matmul_parity(n):
    rng = random.Random(n % 997)
    for _ in range(40):
        a, b, c = (rng.randrange(0, 4) for _ in range(3))
        x = [rng.randrange(n) for _ in range(a * b)]
        y = [rng.randrange(n) for _ in range(b * c)]
        assert (_kernel_py.matmul(x, a, b, y, b, c, n)
                == compiled.matmul(x, a, b, y, b, c, n))


def test_unit_multiplier_parity_and_contract():
    from math import gcd
    for n in (4, 6, 9, 12, 16, 30, 360, 2**31 - 1):
        rng = random.Random(n % 101)
        samples = list(range(1, min(n, 50))) + [rng.randrange(1, n) for _ in range(50)]
        for a in samples:
            u1 = _kernel_py.unit_multiplier(a, n)
            u2 = compiled.unit_multiplier(a, n)
            assert u1 == u2
            assert gcd(u1, n) == 1
            assert (u1 * a) % n == gcd(a, n)
