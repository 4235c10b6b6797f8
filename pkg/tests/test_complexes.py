"""Chain complexes: disks, cycles, exactness, Hom/Ext, duality."""

import random

import pytest

from zncover.ringlinalg import MatrixZn, RingSpec
from zncover import fpmodules as fp
from zncover import complexes as cx
from zncover import sampling

Z4 = RingSpec.of(4)
Z6 = RingSpec.of(6)


def r_free():
    return fp.free_module(Z4, 1)


def order2():
    return fp.module(Z4, 1, [[2]])


def two_term_mul2():
    """[R --(*2)--> R] in degrees 1, 0 over Z/4."""
    r = r_free()
    d = fp.ModuleMorphism(r, r, MatrixZn.from_rows(4, [[2]]))
    return cx.complex_new(Z4, {1: r, 0: r}, {1: d})


class TestComplexNew:
    def test_stalk_valid(self):
        c = cx.stalk(0, order2())
        assert (c.lo, c.hi) == (0, 0)

    def test_two_term_valid(self):
        c = two_term_mul2()
        assert (c.lo, c.hi) == (0, 1)
        # it even extends by another *2 since 2*2 = 0 mod 4
        r = r_free()
        d = fp.ModuleMorphism(r, r, MatrixZn.from_rows(4, [[2]]))
        c3 = cx.complex_new(Z4, {2: r, 1: r, 0: r}, {2: d, 1: d})
        assert (c3.lo, c3.hi) == (0, 2)

    def test_dd_nonzero_rejected_with_degree(self):
        r = r_free()
        i = fp.identity(r)
        with pytest.raises(ValueError, match="degree"):
            cx.complex_new(Z4, {2: r, 1: r, 0: r}, {2: i, 1: i})

    def test_zero_complex(self):
        c = cx.complex_new(Z4, {}, {})
        assert c.is_zero


class TestDisk:
    def test_disk_positions_and_identity(self):
        # the disk puts the module in degrees n and n-1 with the identity
        d = cx.disk(0, r_free())
        assert (d.lo, d.hi) == (-1, 0)
        assert d.term(0).order == 4 and d.term(-1).order == 4
        assert d.diff(0).equal_to(fp.identity(r_free()))

    def test_disk_cycles(self):
        d = cx.disk(0, order2())
        assert cx.cycles(d, 0).is_zero
        assert fp.isomorphic(cx.cycles(d, -1), order2())

    def test_disk_on_zero(self):
        assert cx.disk(3, fp.zero_module(Z4)).is_zero

    def test_disk_map_functorial(self):
        f = fp.minimal_free_cover(order2())
        dm = cx.disk_map(0, f)
        assert dm.component(0).equal_to(f)
        assert dm.component(-1).equal_to(f)
        idm = cx.disk_map(0, fp.identity(order2()))
        assert idm.then(idm).equal_to(idm)


class TestCycles:
    def test_stalk_cycles(self):
        c = cx.stalk(0, order2())
        assert fp.isomorphic(cx.cycles(c, 0), order2())
        assert cx.cycles(c, 1).is_zero

    def test_two_term_cycles(self):
        c = two_term_mul2()
        z1 = cx.cycles(c, 1)
        assert z1.elementary_divisors == (2,)

    def test_below_support_returns_term(self):
        c = two_term_mul2()
        assert fp.isomorphic(cx.cycles(c, 0), r_free())


class TestExactness:
    def test_disk_exact(self):
        assert cx.is_exact(cx.disk(0, order2()))

    def test_stalk_not_exact(self):
        rep = cx.is_exact(cx.stalk(0, order2()))
        assert not rep and rep.degree == 0 and rep.homology_order == 2

    def test_two_term_not_exact(self):
        rep = cx.is_exact(two_term_mul2())
        assert not rep
        assert rep.homology_order == 2

    def test_sum_of_disks_exact(self):
        rng = random.Random(0)
        for _ in range(10):
            c = sampling.random_disk_sum(Z4, rng)
            assert cx.is_exact(c)


class TestDirectSum:
    def test_zero_summand_identity(self):
        d = cx.disk(0, r_free())
        s, _, _ = cx.complex_direct_sum([d, cx.zero_complex(Z4)])
        assert cx.complexes_isomorphic_termwise(s, d)

    def test_adjacent_disks(self):
        s, _, _ = cx.complex_direct_sum([cx.disk(0, r_free()), cx.disk(-1, r_free())])
        assert s.term(0).order == 4
        assert s.term(-1).order == 16
        assert s.term(-2).order == 4
        assert cx.is_exact(s)


class TestChainMapsGroup:
    def test_hom_from_disk_adjunction(self):
        # |Hom_Ch(D^i(M), X)| = |Hom(M, X_i)|
        rng = random.Random(1)
        for _ in range(8):
            x = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            m = sampling.random_module(Z4, rng, max_gens=2)
            if m.is_zero:
                continue
            i = rng.randrange(x.lo - 1, x.hi + 2)
            h = cx.chain_maps_group(cx.disk(i, m), x)
            assert h.module.order == fp.hom_group(m, x.term(i)).module.order

    def test_hom_into_disk_adjunction(self):
        # |Hom_Ch(X, D^i(M))| = |Hom(X_{i-1}, M)|
        rng = random.Random(2)
        for _ in range(8):
            x = sampling.random_complex(Z6, rng, max_len=3, max_gens=2)
            m = sampling.random_nonzero_module(Z6, rng, max_gens=2)
            i = rng.randrange(x.lo, x.hi + 2)
            h = cx.chain_maps_group(x, cx.disk(i, m))
            assert h.module.order == fp.hom_group(x.term(i - 1), m).module.order

    def test_hom_from_free_disk_counts_term(self):
        rng = random.Random(3)
        for _ in range(6):
            x = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            h = cx.chain_maps_group(cx.disk(0, r_free()), x)
            assert h.module.order == x.term(0).order

    def test_hom_into_zero(self):
        x = two_term_mul2()
        h = cx.chain_maps_group(x, cx.zero_complex(Z4))
        assert h.module.is_zero

    def test_stalk_to_disk_counts(self):
        # maps from the stalk land in the cycles of the disk
        h1 = cx.chain_maps_group(cx.stalk(0, order2()), cx.disk(1, r_free()))
        assert h1.module.order == 2
        h0 = cx.chain_maps_group(cx.stalk(0, order2()), cx.disk(0, r_free()))
        assert h0.module.order == 1

    def test_decode_encode_roundtrip(self):
        rng = random.Random(4)
        x = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
        y = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
        h = cx.chain_maps_group(x, y)
        for _ in range(5):
            phi = h.random_element(rng)
            assert h.decode(h.encode(phi)).equal_to(phi)


class TestKernelCokernelPullback:
    def test_kernel_of_identity(self):
        c = two_term_mul2()
        k, _ = cx.chainmap_kernel(cx.identity_chain_map(c))
        assert k.is_zero

    def test_kernel_of_zero_map(self):
        c = two_term_mul2()
        k, _ = cx.chainmap_kernel(cx.zero_chain_map(c, c))
        assert cx.complexes_isomorphic_termwise(k, c)

    def test_kernel_of_disk_epi(self):
        f = fp.minimal_free_cover(order2())
        phi = cx.disk_map(0, f)
        k, incl = cx.chainmap_kernel(phi)
        assert cx.is_exact(k)
        assert k.term(0).elementary_divisors == (2,)
        assert k.term(-1).elementary_divisors == (2,)

    def test_cokernel_of_disk_mono(self):
        g = fp.ModuleMorphism(order2(), r_free(), MatrixZn.from_rows(4, [[2]]))
        phi = cx.disk_map(0, g)
        q, proj = cx.chainmap_cokernel(phi)
        assert q.term(0).elementary_divisors == (2,)
        assert proj.is_degreewise_epic()

    def test_pullback_along_identity(self):
        c = two_term_mul2()
        w, pa, pb = cx.complex_pullback(cx.identity_chain_map(c),
                                        cx.identity_chain_map(c))
        assert cx.complexes_isomorphic_termwise(w, c)

    def test_pullback_of_two_disk_epis(self):
        f = cx.disk_map(0, fp.minimal_free_cover(order2()))
        g = cx.disk_map(0, fp.minimal_free_cover(order2()))
        w, pa, pb = cx.complex_pullback(f, g)
        assert w.term(0).order == 8 and w.term(-1).order == 8
        assert pa.then(f).equal_to(pb.then(g))

    def test_pullback_along_zero_is_kernel(self):
        f = cx.disk_map(0, fp.minimal_free_cover(order2()))
        z = cx.zero_chain_map(cx.zero_complex(Z4), f.target)
        w, _, _ = cx.complex_pullback(f, z)
        k, _ = cx.chainmap_kernel(f)
        assert cx.complexes_isomorphic_termwise(w, k)


class TestExt1Ch:
    def test_free_disk_projective(self):
        rng = random.Random(5)
        for _ in range(6):
            y = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            i = rng.randrange(-1, 2)
            assert cx.ext1_ch(cx.disk(i, r_free()), y).is_zero

    def test_stalk_stalk_pinned(self):
        e = cx.ext1_ch(cx.stalk(0, order2()), cx.stalk(0, order2()))
        assert e.elementary_divisors == (2,)

    def test_into_zero(self):
        x = two_term_mul2()
        assert cx.ext1_ch(x, cx.zero_complex(Z4)).is_zero


class TestDiskCoverMap:
    def test_epi_exact_free_source(self):
        rng = random.Random(6)
        for _ in range(6):
            x = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            if x.is_zero:
                continue
            phi = cx.disk_cover_map(x, fp.minimal_free_cover)
            assert phi.is_degreewise_epic()
            assert cx.is_exact(phi.source)
            for m in phi.source.degrees():
                assert cx.cycles(phi.source, m).is_free


class TestReverseDual:
    def test_zero(self):
        assert cx.reverse_dual(cx.zero_complex(Z4)).is_zero

    def test_disk_goes_to_shifted_disk(self):
        d = cx.reverse_dual(cx.disk(0, r_free()))
        assert (d.lo, d.hi) == (0, 1)
        assert d.term(1).order == 4 and d.term(0).order == 4
        assert cx.is_exact(d)

    def test_disk_index_convention(self):
        # reverse_dual(D^n(M)) has the shape of D^{1-n}(D(M))
        for n in (-1, 0, 2):
            d = cx.reverse_dual(cx.disk(n, order2()))
            assert (d.lo, d.hi) == (-n, 1 - n)
            assert cx.is_exact(d)

    def test_preserves_exactness_and_swaps_epi_mono(self):
        rng = random.Random(7)
        for _ in range(6):
            x = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            assert bool(cx.is_exact(cx.reverse_dual(x))) == bool(cx.is_exact(x))
            y = sampling.random_complex(Z4, rng, max_len=3, max_gens=2)
            phi = sampling.random_chain_map(x, y, rng)
            dphi = cx.reverse_dual_map(phi)
            if phi.is_degreewise_epic():
                assert dphi.is_degreewise_monic()
            if phi.is_degreewise_monic():
                assert dphi.is_degreewise_epic()

    def test_double_dual_iso(self):
        rng = random.Random(8)
        for _ in range(6):
            x = sampling.random_complex(Z6, rng, max_len=3, max_gens=2)
            e = cx.double_dual_iso(x)
            assert cx.complexes_isomorphic_termwise(x, e.target)
            assert e.is_degreewise_monic() and e.is_degreewise_epic()
