"""Bounded chain complexes of finitely presented Z/n-modules.

Differentials lower degree; the disk on M at n has M in degrees n and n-1
joined by the identity.  Supports are finite intervals and the zero complex
has an empty support.  Hom and Ext in the category of complexes are reduced
to module-level linear algebra through per-degree Hom groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ringlinalg import MatrixZn, RingSpec, block_diag, hstack, vstack
from . import fpmodules as fp
from .fpmodules import FPModule, HomGroup, ModuleMorphism


@dataclass(frozen=True, eq=False)
class ChainComplex:
    ring: RingSpec
    lo: int                      # support interval [lo, hi]; lo > hi means zero
    hi: int
    terms: dict = field(default_factory=dict)           # degree -> FPModule
    differentials: dict = field(default_factory=dict)   # m -> morphism C_m -> C_{m-1}

    @property
    def is_zero(self) -> bool:
        return self.lo > self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def term(self, m: int) -> FPModule:
        t = self.terms.get(m)
        return t if t is not None else fp.zero_module(self.ring)

    def diff(self, m: int) -> ModuleMorphism:
        d = self.differentials.get(m)
        if d is not None:
            return d
        return fp.zero_map(self.term(m), self.term(m - 1))

    def order(self) -> int:
        out = 1
        for m in self.degrees():
            out *= self.term(m).order
        return out


def complex_new(ring: RingSpec, terms: dict, differentials: dict) -> ChainComplex:
    """Validated complex; rejects non-composing data and nonzero d*d."""
    nonzero = {m: t for m, t in terms.items() if not t.is_zero}
    if not nonzero:
        return ChainComplex(ring, 0, -1, {}, {})
    lo, hi = min(nonzero), max(nonzero)
    kept_terms = {}
    for m in range(lo, hi + 1):
        t = terms.get(m)
        kept_terms[m] = t if t is not None else fp.zero_module(ring)
    kept_diffs = {}
    for m in range(lo + 1, hi + 1):
        src, dst = kept_terms[m], kept_terms[m - 1]
        d = differentials.get(m)
        if d is None:
            d = fp.zero_map(src, dst)
        if d.source != src or d.target != dst:
            raise ValueError(f"differential at degree {m} does not match terms")
        kept_diffs[m] = d
    for m, d in differentials.items():
        if not (lo < m <= hi) and not d.is_zero_map():
            raise ValueError(f"nonzero differential at degree {m} leaves the support")
    for m in range(lo + 1, hi):
        if not kept_diffs[m + 1].then(kept_diffs[m]).is_zero_map():
            raise ValueError(f"d*d is nonzero entering degree {m - 1}")
    return ChainComplex(ring, lo, hi, kept_terms, kept_diffs)


def zero_complex(ring: RingSpec) -> ChainComplex:
    return ChainComplex(ring, 0, -1, {}, {})


def stalk(n: int, m: FPModule) -> ChainComplex:
    """The complex with m concentrated in degree n."""
    if m.is_zero:
        return zero_complex(m.ring)
    return ChainComplex(m.ring, n, n, {n: m}, {})


def disk(n: int, m: FPModule) -> ChainComplex:
    """D^n(M): M in degrees n and n-1 joined by the identity."""
    if m.is_zero:
        return zero_complex(m.ring)
    return ChainComplex(m.ring, n - 1, n, {n: m, n - 1: m},
                        {n: fp.identity(m)})


def disk_map(n: int, f: ModuleMorphism) -> "ChainMap":
    """D^n(f): D^n(L) -> D^n(M), the disk functor on morphisms."""
    src = disk(n, f.source)
    dst = disk(n, f.target)
    comps = {} if src.is_zero or dst.is_zero else {n: f, n - 1: f}
    return ChainMap(src, dst, comps)


def cycles_with_inclusion(c: ChainComplex, m: int):
    return fp.kernel(c.diff(m))


def cycles(c: ChainComplex, m: int) -> FPModule:
    """Z_m(C), the kernel of the degree-m differential.  Below the support
    the differential is zero, so cycles(C, lo) is the whole bottom term."""
    return cycles_with_inclusion(c, m)[0]


def boundaries_with_inclusion(c: ChainComplex, m: int):
    """Image of the incoming differential as a submodule of C_m."""
    return fp.image(c.diff(m + 1))


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    degree: int | None = None
    homology_order: int | None = None

    def __bool__(self):
        return self.exact


def is_exact(c: ChainComplex) -> ExactnessReport:
    """Zero homology at every degree, boundary degrees included."""
    for m in c.degrees():
        z = cycles(c, m)
        b = boundaries_with_inclusion(c, m)[0]
        if z.order != b.order:
            return ExactnessReport(False, m, z.order // b.order)
    return ExactnessReport(True)


def complex_direct_sum(summands: list[ChainComplex], ring: RingSpec | None = None):
    """Degreewise direct sum; returns (sum, injections, projections)."""
    if not summands:
        if ring is None:
            raise ValueError("empty sum needs a ring")
        return zero_complex(ring), [], []
    ring = summands[0].ring
    if any(s.ring != ring for s in summands):
        raise ValueError("summands over different rings")
    live = [s for s in summands if not s.is_zero]
    if not live:
        z = zero_complex(ring)
        return z, [ChainMap(s, z, {}) for s in summands], \
               [ChainMap(z, s, {}) for s in summands]
    lo = min(s.lo for s in live)
    hi = max(s.hi for s in live)
    terms = {}
    injs = {m: [] for m in range(lo, hi + 1)}
    projs = {m: [] for m in range(lo, hi + 1)}
    for m in range(lo, hi + 1):
        s_mod, inj, proj = fp.direct_sum_list([s.term(m) for s in summands], ring)
        terms[m] = s_mod
        injs[m] = inj
        projs[m] = proj
    diffs = {}
    for m in range(lo + 1, hi + 1):
        mats = [s.diff(m).matrix for s in summands]
        diffs[m] = ModuleMorphism(terms[m], terms[m - 1],
                                  _block_diag_rect(mats, terms[m].generators,
                                                   terms[m - 1].generators, ring))
    total = complex_new(ring, terms, diffs)
    inj_maps = []
    proj_maps = []
    for i, s in enumerate(summands):
        inj_maps.append(ChainMap(s, total,
                                 {m: injs[m][i] for m in range(lo, hi + 1)
                                  if m in terms and not s.term(m).is_zero}))
        proj_maps.append(ChainMap(total, s,
                                  {m: projs[m][i] for m in range(lo, hi + 1)
                                   if m in terms and not s.term(m).is_zero}))
    return total, inj_maps, proj_maps


def _block_diag_rect(mats, rows, cols, ring):
    out = block_diag(mats, ring.modulus)
    if (out.rows, out.cols) != (rows, cols):
        raise AssertionError("block differential shape mismatch")
    return out


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: dict = field(default_factory=dict)  # degree -> ModuleMorphism

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise ValueError("chain map between different rings")
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for m, f in self.components.items():
            if f.source != self.source.term(m) or f.target != self.target.term(m):
                raise ValueError(f"component at degree {m} has wrong ends")
        for m in range(lo, hi + 2):
            left = self.component(m).then(self.target.diff(m))
            right = self.source.diff(m).then(self.component(m - 1))
            if not left.equal_to(right):
                raise ValueError(f"square at degree {m} does not commute")

    def component(self, m: int) -> ModuleMorphism:
        f = self.components.get(m)
        if f is not None:
            return f
        return fp.zero_map(self.source.term(m), self.target.term(m))

    def then(self, other: "ChainMap") -> "ChainMap":
        if self.target is not other.source and not complexes_equal(self.target, other.source):
            raise ValueError("chain maps do not compose")
        comps = {}
        for m in range(min(self.source.lo, other.target.lo),
                       max(self.source.hi, other.target.hi) + 1):
            f = self.component(m).then(other.component(m))
            if not f.matrix.is_zero():
                comps[m] = f
        return ChainMap(self.source, other.target, comps)

    def is_degreewise_epic(self) -> bool:
        return all(self.component(m).is_epic() for m in self.target.degrees())

    def is_degreewise_monic(self) -> bool:
        return all(self.component(m).is_monic() for m in self.source.degrees())

    def equal_to(self, other: "ChainMap") -> bool:
        lo = min(self.source.lo, other.source.lo)
        hi = max(self.source.hi, other.source.hi)
        return all(self.component(m).equal_to(other.component(m))
                   for m in range(lo, hi + 1))

    def is_zero_map(self) -> bool:
        return all(self.component(m).is_zero_map() for m in self.source.degrees())


def identity_chain_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {m: fp.identity(c.term(m)) for m in c.degrees()})


def zero_chain_map(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap(x, y, {})


def complexes_equal(c: ChainComplex, d: ChainComplex) -> bool:
    """Equality of presentations, degree by degree."""
    if c.ring != d.ring or (c.lo, c.hi) != (d.lo, d.hi):
        return False
    return all(c.term(m) == d.term(m) and c.diff(m).equal_to(d.diff(m))
               for m in c.degrees())


def complexes_isomorphic_termwise(c: ChainComplex, d: ChainComplex) -> bool:
    """Necessary-and-cheap iso test: equal divisors in every degree."""
    lo = min(c.lo, d.lo) if not (c.is_zero and d.is_zero) else 0
    hi = max(c.hi, d.hi) if not (c.is_zero and d.is_zero) else -1
    return all(c.term(m).elementary_divisors == d.term(m).elementary_divisors
               for m in range(lo, hi + 1))


@dataclass(frozen=True)
class ChainHomGroup:
    """Hom_Ch(X, Y) as an FPModule with decode/encode to actual chain maps."""

    source: ChainComplex
    target: ChainComplex
    module: FPModule
    degrees: tuple
    hom_groups: tuple          # HomGroup per degree
    offsets: tuple             # starting coordinate of each degree block
    basis: MatrixZn            # module.generators x total coords
    ambient: FPModule          # direct sum of the per-degree hom modules

    def decode(self, coeffs) -> ChainMap:
        n = self.module.ring.modulus
        row = MatrixZn.from_rows(n, [list(coeffs)], cols=self.module.generators)
        total = self.basis.cols
        flat = row.mul(self.basis).data if self.module.generators else (0,) * total
        comps = {}
        for deg, hg, off in zip(self.degrees, self.hom_groups, self.offsets):
            width = hg.module.generators
            f = hg.decode(flat[off:off + width])
            if not f.matrix.is_zero():
                comps[deg] = f
        return ChainMap(self.source, self.target, comps)

    def encode(self, phi: ChainMap) -> tuple[int, ...]:
        coords = []
        for deg, hg in zip(self.degrees, self.hom_groups):
            coords.extend(hg.encode(phi.component(deg)))
        sol = fp.solve_through(self.basis, self.ambient.relations, coords)
        if sol is None:
            raise ValueError("chain map does not satisfy the commuting system")
        return self.module.reduce(sol.particular)

    def random_element(self, rng) -> ChainMap:
        return self.decode(self.module.sample_element(rng))

    def all_elements(self, cap: int = 100000):
        return (self.decode(c) for c in self.module.elements(cap))


def chain_maps_group(x: ChainComplex, y: ChainComplex) -> ChainHomGroup:
    """Solve the simultaneous well-definedness + commuting-square system."""
    ring = x.ring
    if ring != y.ring:
        raise ValueError("ring mismatch")
    if x.is_zero or y.is_zero:
        degs = ()
        zero = fp.zero_module(ring)
        return ChainHomGroup(x, y, zero, (), (), (),
                             MatrixZn(0, 0, ring.modulus, ()), zero)
    lo = min(x.lo, y.lo)
    hi = max(x.hi, y.hi)
    degs = tuple(range(lo, hi + 1))
    hgs = tuple(fp.hom_group(x.term(m), y.term(m)) for m in degs)
    big, big_inj, big_proj = fp.direct_sum_list([h.module for h in hgs], ring)
    offsets = []
    off = 0
    for h in hgs:
        offsets.append(off)
        off += h.module.generators
    cgs = []
    cdegs = list(range(lo, hi + 2))
    for m in cdegs:
        cgs.append(fp.hom_group(x.term(m), y.term(m - 1)))
    cbig, cinj, _ = fp.direct_sum_list([h.module for h in cgs], ring)
    n = ring.modulus
    total = MatrixZn.zeros(n, big.generators, cbig.generators)
    for idx, m in enumerate(cdegs):
        cg = cgs[idx]
        if cg.module.is_zero:
            continue
        if m in degs:
            i = degs.index(m)
            t_post = fp.hom_transport(hgs[i], cg, post=y.diff(m))
            contrib = big_proj[i].matrix.mul(t_post.matrix).mul(cinj[idx].matrix)
            total = total.add(contrib)
        if m - 1 in degs:
            i = degs.index(m - 1)
            t_pre = fp.hom_transport(hgs[i], cg, pre=x.diff(m))
            contrib = big_proj[i].matrix.mul(t_pre.matrix).mul(cinj[idx].matrix)
            total = total.add(contrib.neg())
    constraint = ModuleMorphism(big, cbig, total)
    ker, incl = fp.kernel(constraint)
    return ChainHomGroup(x, y, ker, degs, hgs, tuple(offsets), incl.matrix, big)


def chain_hom_transport(src: ChainHomGroup, dst: ChainHomGroup,
                        pre: ChainMap | None = None,
                        post: ChainMap | None = None) -> ModuleMorphism:
    """Hom_Ch(X,Y) -> Hom_Ch(X',Y'): phi -> pre;phi;post on hom modules."""
    rows = []
    for i in range(src.module.generators):
        coeffs = [0] * src.module.generators
        coeffs[i] = 1
        phi = src.decode(coeffs)
        if pre is not None:
            phi = pre.then(phi)
        if post is not None:
            phi = phi.then(post)
        rows.append(list(dst.encode(phi)))
    mat = MatrixZn.from_rows(src.module.ring.modulus, rows,
                             cols=dst.module.generators)
    return ModuleMorphism(src.module, dst.module, mat)


def chainmap_kernel(phi: ChainMap):
    """Degreewise kernels with the induced differentials, plus inclusion."""
    x = phi.source
    terms = {}
    incls = {}
    for m in x.degrees():
        k, incl = fp.kernel(phi.component(m))
        terms[m] = k
        incls[m] = incl
    diffs = {}
    for m in range(x.lo + 1, x.hi + 1):
        down = incls[m].then(x.diff(m))
        ind = fp.factor_through_injection(down, incls[m - 1])
        if ind is None:
            raise AssertionError("kernel differential failed to factor")
        diffs[m] = ind
    kc = complex_new(x.ring, terms, diffs)
    comps = {m: _restrict_morphism(incls[m], kc.term(m), x.term(m))
             for m in kc.degrees() if not kc.term(m).is_zero}
    return kc, ChainMap(kc, x, comps)


def _restrict_morphism(f: ModuleMorphism, src: FPModule, dst: FPModule) -> ModuleMorphism:
    if f.source == src and f.target == dst:
        return f
    return ModuleMorphism(src, dst, f.matrix)


def chainmap_cokernel(phi: ChainMap):
    """Degreewise cokernels with induced differentials, plus projection."""
    y = phi.target
    terms = {}
    projs = {}
    for m in y.degrees():
        q, proj = fp.cokernel(phi.component(m))
        terms[m] = q
        projs[m] = proj
    diffs = {}
    for m in range(y.lo + 1, y.hi + 1):
        # cokernel keeps the generators of y, so the same matrix descends
        diffs[m] = ModuleMorphism(terms[m], terms[m - 1], y.diff(m).matrix)
    qc = complex_new(y.ring, terms, diffs)
    comps = {m: _restrict_morphism(projs[m], y.term(m), qc.term(m))
             for m in y.degrees() if not y.term(m).is_zero and not qc.term(m).is_zero}
    return qc, ChainMap(y, qc, comps)


def complex_pullback(f: ChainMap, g: ChainMap):
    """Degreewise pullback with induced differentials."""
    if not complexes_equal(f.target, g.target) and f.target is not g.target:
        raise ValueError("pullback needs a common target")
    a, b = f.source, g.source
    ring = a.ring
    lo = min(a.lo, b.lo) if not (a.is_zero and b.is_zero) else 0
    hi = max(a.hi, b.hi) if not (a.is_zero and b.is_zero) else -1
    terms = {}
    pas = {}
    pbs = {}
    for m in range(lo, hi + 1):
        p, pa, pb = fp.pullback(f.component(m), g.component(m))
        terms[m] = p
        pas[m] = pa
        pbs[m] = pb
    diffs = {}
    for m in range(lo + 1, hi + 1):
        down_a = pas[m].then(a.diff(m))
        down_b = pbs[m].then(b.diff(m))
        sum_mod, _, _ = fp.direct_sum(a.term(m - 1), b.term(m - 1))
        cone = ModuleMorphism(terms[m], sum_mod,
                              hstack(down_a.matrix, down_b.matrix))
        incl = ModuleMorphism(terms[m - 1], sum_mod,
                              hstack(pas[m - 1].matrix, pbs[m - 1].matrix))
        ind = fp.factor_through_injection(cone, incl)
        if ind is None:
            raise AssertionError("pullback differential failed to factor")
        diffs[m] = ind
    w = complex_new(ring, terms, diffs)
    pa_map = ChainMap(w, a, {m: _restrict_morphism(pas[m], w.term(m), a.term(m))
                             for m in w.degrees() if not w.term(m).is_zero})
    pb_map = ChainMap(w, b, {m: _restrict_morphism(pbs[m], w.term(m), b.term(m))
                             for m in w.degrees() if not w.term(m).is_zero})
    return w, pa_map, pb_map


def disk_cover_map(x: ChainComplex, provider=None, covers: dict | None = None) -> ChainMap:
    """Epi from a sum of disks onto x, built from degreewise epis G_m -> X_m.

    The source has terms G_{m+1} (+) G_m with differential (u, v) -> (v, 0)
    and the map sends (u, v) to d(f(u)) + f(v); it is exact with cycles G_m
    and degreewise epic whenever the provider's maps are epic.
    """
    ring = x.ring
    if x.is_zero:
        return ChainMap(zero_complex(ring), x, {})
    if covers is None:
        covers = {m: provider(x.term(m)) for m in x.degrees()}
    zero = fp.zero_module(ring)

    def gmod(m):
        return covers[m].source if m in covers else zero

    terms = {}
    injs = {}
    for m in range(x.lo - 1, x.hi + 1):
        s, inj, _ = fp.direct_sum_list([gmod(m + 1), gmod(m)], ring)
        terms[m] = s
        injs[m] = inj
    diffs = {}
    for m in range(x.lo, x.hi + 1):
        # (u, v) -> (v, 0): second summand of degree m to first of degree m-1
        src = terms[m]
        dst = terms[m - 1]
        g_top = gmod(m + 1).generators
        rows = MatrixZn.zeros(ring.modulus, g_top, dst.generators).to_rows()
        rows += injs[m - 1][0].matrix.to_rows()
        diffs[m] = ModuleMorphism(src, dst, MatrixZn.from_rows(
            ring.modulus, rows, cols=dst.generators))
    source = complex_new(ring, terms, diffs)
    comps = {}
    for m in range(x.lo - 1, x.hi + 1):
        xm = x.term(m)
        if xm.is_zero or source.term(m).is_zero:
            continue
        top = covers[m + 1].then(x.diff(m + 1)) if (m + 1) in covers \
            else fp.zero_map(gmod(m + 1), xm)
        bot = covers[m] if m in covers else fp.zero_map(zero, xm)
        mat = vstack([top.matrix, bot.matrix])
        comps[m] = ModuleMorphism(source.term(m), xm, mat)
    return ChainMap(source, x, comps)


def ext1_ch(x: ChainComplex, y: ChainComplex) -> FPModule:
    """Ext^1 in the category of complexes via a projective presentation.

    The presentation P -> X is a finite sum of disks on free modules (a
    projective object: split exactness of Hom from free disks), K' is its
    degreewise kernel, and the answer is coker(Hom(P, Y) -> Hom(K', Y)).
    """
    if x.ring != y.ring:
        raise ValueError("ring mismatch")
    if x.is_zero or y.is_zero:
        return fp.zero_module(x.ring)
    p_map = disk_cover_map(x, fp.minimal_free_cover)
    kc, incl = chainmap_kernel(p_map)
    hom_p = chain_maps_group(p_map.source, y)
    hom_k = chain_maps_group(kc, y)
    restr = chain_hom_transport(hom_p, hom_k, pre=incl)
    return fp.cokernel(restr)[0]


def reverse_dual(c: ChainComplex) -> ChainComplex:
    """Matlis duality composed with degree reversal: D(C)_m = D(C_{-m})."""
    if c.is_zero:
        return zero_complex(c.ring)
    terms = {}
    for m in range(-c.hi, -c.lo + 1):
        terms[m] = fp.dual_module(c.term(-m))
    diffs = {}
    for m in range(-c.hi + 1, -c.lo + 1):
        diffs[m] = _restrict_morphism(fp.dual_map(c.diff(-m + 1)),
                                      terms[m], terms[m - 1])
    return complex_new(c.ring, terms, diffs)


def reverse_dual_map(phi: ChainMap) -> ChainMap:
    """Contravariant image of a chain map: D(Y) -> D(X)."""
    dx = reverse_dual(phi.source)
    dy = reverse_dual(phi.target)
    comps = {}
    for m in range(dy.lo, dy.hi + 1):
        f = fp.dual_map(phi.component(-m))
        if dy.term(m).is_zero or dx.term(m).is_zero:
            continue
        comps[m] = _restrict_morphism(f, dy.term(m), dx.term(m))
    return ChainMap(dy, dx, comps)


def double_dual_iso(c: ChainComplex) -> ChainMap:
    """Natural isomorphism C -> reverse_dual(reverse_dual(C))."""
    dd = reverse_dual(reverse_dual(c))
    comps = {}
    for m in c.degrees():
        if c.term(m).is_zero:
            continue
        e = fp.double_dual_embedding(c.term(m))
        comps[m] = _restrict_morphism(e, c.term(m), dd.term(m))
    return ChainMap(c, dd, comps)
