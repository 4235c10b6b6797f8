"""Seeded random generators for modules, morphisms and complexes.

Random complexes keep support length at most 5 and at most 3 generators per
term; differentials are drawn uniformly from the subgroup of maps that
squares to zero against the previously chosen one, so d*d = 0 holds by
construction rather than by rejection.
"""

from __future__ import annotations

import random

from .ringlinalg import MatrixZn, RingSpec
from . import fpmodules as fp
from . import complexes as cx


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def random_module(ring: RingSpec, rng: random.Random, max_gens: int = 3) -> fp.FPModule:
    g = rng.randrange(0, max_gens + 1)
    nrel = rng.randrange(0, g + 2)
    rel = [[rng.randrange(ring.modulus) for _ in range(g)] for _ in range(nrel)]
    return fp.module(ring, g, rel)


def random_nonzero_module(ring: RingSpec, rng: random.Random, max_gens: int = 3) -> fp.FPModule:
    for _ in range(64):
        m = random_module(ring, rng, max_gens)
        if not m.is_zero:
            return m
    return fp.free_module(ring, 1)


def random_morphism(m: fp.FPModule, n: fp.FPModule, rng: random.Random) -> fp.ModuleMorphism:
    return fp.hom_group(m, n).random_element(rng)


def random_free_module(ring: RingSpec, rng: random.Random, max_rank: int = 2) -> fp.FPModule:
    return fp.free_module(ring, rng.randrange(0, max_rank + 1))


def random_projective_module(ring: RingSpec, rng: random.Random, max_each: int = 2) -> fp.FPModule:
    """Random finite sum of the indecomposable projectives p^k | n."""
    diags = []
    for p, k in ring.factorization:
        diags.extend([p**k] * rng.randrange(0, max_each + 1))
    rel = [[0] * len(diags) for _ in diags]
    for i, d in enumerate(diags):
        rel[i][i] = d
    return fp.module(ring, len(diags), rel)


def random_complex(ring: RingSpec, rng: random.Random,
                   max_len: int = 5, max_gens: int = 3) -> cx.ChainComplex:
    length = rng.randrange(1, max_len + 1)
    lo = rng.randrange(-2, 3)
    terms = {m: random_module(ring, rng, max_gens) for m in range(lo, lo + length)}
    diffs = {}
    prev = None  # differential leaving degree m - 1
    for m in range(lo + length - 1, lo, -1):
        src, dst = terms[m], terms[m - 1]
        hom = fp.hom_group(src, dst)
        if prev is None:
            diffs[m] = hom.random_element(rng)
        else:
            # choose uniformly among maps d with prev;d = 0
            down = fp.hom_group(prev.source, dst)
            constraint = fp.hom_transport(hom, down, pre=prev)
            ker, incl = fp.kernel(constraint)
            coeffs = ker.sample_element(rng)
            row = MatrixZn.from_rows(ring.modulus, [list(coeffs)], cols=ker.generators)
            flat = row.mul(incl.matrix).data if ker.generators else \
                (0,) * hom.module.generators
            diffs[m] = hom.decode(flat)
        prev = diffs[m]
    return cx.complex_new(ring, terms, diffs)


def random_disk_sum(ring: RingSpec, rng: random.Random, module_sampler=None,
                    max_disks: int = 3, max_gens: int = 2) -> cx.ChainComplex:
    """Random finite sum of disks; exact by construction."""
    if module_sampler is None:
        module_sampler = lambda r: random_module(ring, r, max_gens)
    disks = []
    for _ in range(rng.randrange(1, max_disks + 1)):
        deg = rng.randrange(-2, 3)
        disks.append(cx.disk(deg, module_sampler(rng)))
    return cx.complex_direct_sum(disks, ring)[0]


def random_chain_map(x: cx.ChainComplex, y: cx.ChainComplex,
                     rng: random.Random) -> cx.ChainMap:
    return cx.chain_maps_group(x, y).random_element(rng)


def random_ses(ring: RingSpec, rng: random.Random) -> fp.ShortExactSequence:
    """0 -> ker f -> M -> im f -> 0 for a random morphism f."""
    m = random_nonzero_module(ring, rng)
    n = random_module(ring, rng)
    f = random_morphism(m, n, rng)
    _, incl = fp.kernel(f)
    epi, _ = fp.corestrict_to_image(f)
    return fp.ShortExactSequence(incl, epi)
