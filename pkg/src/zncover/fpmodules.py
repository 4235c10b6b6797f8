"""Finitely presented Z/n-modules and their morphisms.

A module is presented as (Z/n)^g modulo the row span of a relations matrix;
the relations are kept in Howell form so equal presentations compare equal.
Isomorphism is tested through elementary divisors, never through
presentation equality.  Morphisms are generator matrices acting on row
vectors from the right: f(x) = x @ f.matrix.

Every Z/n is quasi-Frobenius, so finitely generated injectives coincide
with projectives; that is what makes both the precover and the preenvelope
machinery downstream exactly computable.  Matlis duality is realized as
Hom(-, R).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ringlinalg import (
    LinearSolution,
    MatrixZn,
    RingSpec,
    block_diag,
    howell,
    hstack,
    invariant_factors,
    kernel_basis,
    pivot_positions,
    primary_divisors,
    reduce_mod_span,
    solve_linear,
    span_contains,
    vstack,
)


@dataclass(frozen=True)
class FPModule:
    ring: RingSpec
    generators: int
    relations: MatrixZn  # Howell form, columns indexed by generators
    invariant_factors_: tuple[int, ...]
    elementary_divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors_:
            out *= d
        return out

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors_

    @property
    def is_free(self) -> bool:
        n = self.ring.modulus
        return all(d == n for d in self.invariant_factors_)

    @property
    def is_projective(self) -> bool:
        # CRT: projective over Z/n means every elementary divisor is a full
        # local factor p^k of n.
        full = {p**k for p, k in self.ring.factorization}
        return all(d in full for d in self.elementary_divisors)

    # Z/n is quasi-Frobenius: finitely generated injectives = projectives.
    is_injective = is_projective

    def reduce(self, v) -> tuple[int, ...]:
        """Canonical representative of an element given as a generator row."""
        return reduce_mod_span(v, self.relations)

    def is_zero_element(self, v) -> bool:
        return not any(self.reduce(v))

    def elements(self, cap: int = 200000):
        """Iterate canonical representatives of all elements."""
        if self.order > cap:
            raise ValueError("module too large to enumerate")
        n = self.ring.modulus
        ranges = [range(n)] * self.generators
        for i, j in pivot_positions(self.relations):
            ranges[j] = range(self.relations.data[i * self.relations.cols + j])
        return (tuple(t) for t in itertools.product(*ranges))

    def sample_element(self, rng) -> tuple[int, ...]:
        n = self.ring.modulus
        bounds = [n] * self.generators
        for i, j in pivot_positions(self.relations):
            bounds[j] = self.relations.data[i * self.relations.cols + j]
        return tuple(rng.randrange(b) for b in bounds)


def module_from_presentation(ring: RingSpec, generators: int, relations: MatrixZn) -> FPModule:
    if relations.cols != generators:
        raise ValueError("relations must have one column per generator")
    if relations.modulus != ring.modulus:
        raise ValueError("relations modulus differs from ring")
    rel = howell(relations)
    inv = invariant_factors(rel, generators)
    return FPModule(ring, generators, rel, inv, primary_divisors(inv, ring))


def module(ring: RingSpec, generators: int, relation_rows: list[list[int]]) -> FPModule:
    return module_from_presentation(
        ring, generators, MatrixZn.from_rows(ring.modulus, relation_rows, cols=generators))


def zero_module(ring: RingSpec) -> FPModule:
    return module(ring, 0, [])


def free_module(ring: RingSpec, rank: int) -> FPModule:
    return module(ring, rank, [])


def cyclic_module(ring: RingSpec, annihilator: int) -> FPModule:
    """R/(a): the cyclic module killed by a."""
    return module(ring, 1, [[annihilator]])


def isomorphic(m1: FPModule, m2: FPModule) -> bool:
    return (m1.ring == m2.ring
            and m1.elementary_divisors == m2.elementary_divisors)


@dataclass(frozen=True)
class ModuleMorphism:
    source: FPModule
    target: FPModule
    matrix: MatrixZn  # source.generators x target.generators

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise ValueError("morphism between different rings")
        if (self.matrix.rows, self.matrix.cols) != (self.source.generators,
                                                    self.target.generators):
            raise ValueError("matrix shape does not match generator counts")
        # well-definedness: relations must map into the target relation span
        img = self.source.relations.mul(self.matrix)
        for i in range(img.rows):
            if not span_contains(self.target.relations, img.row(i)):
                raise ValueError("matrix does not respect the source relations")

    def apply(self, v) -> tuple[int, ...]:
        n = self.matrix.modulus
        row = MatrixZn.from_rows(n, [list(v)], cols=self.source.generators)
        return self.target.reduce(row.mul(self.matrix).data)

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if self.target != other.source:
            raise ValueError("composition mismatch")
        return ModuleMorphism(self.source, other.target, self.matrix.mul(other.matrix))

    def add(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if self.source != other.source or self.target != other.target:
            raise ValueError("sum of maps with different ends")
        return ModuleMorphism(self.source, self.target, self.matrix.add(other.matrix))

    def neg(self) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, self.matrix.neg())

    def equal_to(self, other: "ModuleMorphism") -> bool:
        """Equality as maps: matrices agree modulo the target relations."""
        if self.source != other.source or self.target != other.target:
            return False
        diff = self.matrix.add(other.matrix.neg())
        return all(span_contains(self.target.relations, diff.row(i))
                   for i in range(diff.rows))

    def is_zero_map(self) -> bool:
        return all(span_contains(self.target.relations, self.matrix.row(i))
                   for i in range(self.matrix.rows))

    def is_epic(self) -> bool:
        return cokernel(self)[0].is_zero

    def is_monic(self) -> bool:
        return kernel(self)[0].is_zero


def identity(m: FPModule) -> ModuleMorphism:
    return ModuleMorphism(m, m, MatrixZn.identity(m.ring.modulus, m.generators))


def zero_map(source: FPModule, target: FPModule) -> ModuleMorphism:
    return ModuleMorphism(source, target,
                          MatrixZn.zeros(source.ring.modulus,
                                         source.generators, target.generators))


def _project_left_kernel(stack: MatrixZn, first: int) -> MatrixZn:
    """Howell form of {x : (x|y) @ stack = 0 for some y} projected to x."""
    ker = kernel_basis(stack)
    return howell(ker.take_columns(0, first))


def _relations_of_rows(gens: MatrixZn, ambient_relations: MatrixZn) -> MatrixZn:
    """Relations of the submodule generated by the given rows of an ambient
    free cover with the given relations."""
    stacked = vstack([gens, ambient_relations])
    return _project_left_kernel(stacked, gens.rows)


def submodule_from_rows(ambient: FPModule, rows: MatrixZn) -> tuple[FPModule, ModuleMorphism]:
    """Submodule generated by element rows, with its inclusion."""
    gens = howell(rows)
    rel = _relations_of_rows(gens, ambient.relations)
    sub = module_from_presentation(ambient.ring, gens.rows, rel)
    return sub, ModuleMorphism(sub, ambient, gens)


def kernel(f: ModuleMorphism) -> tuple[FPModule, ModuleMorphism]:
    """Kernel with its (monic by construction) inclusion."""
    stacked = vstack([f.matrix, f.target.relations])
    gens = _project_left_kernel(stacked, f.source.generators)
    return submodule_from_rows(f.source, gens)


def cokernel(f: ModuleMorphism) -> tuple[FPModule, ModuleMorphism]:
    """Cokernel with its (epic by construction) projection."""
    rel = vstack([f.target.relations, f.matrix])
    quot = module_from_presentation(f.target.ring, f.target.generators, rel)
    proj = ModuleMorphism(f.target, quot,
                          MatrixZn.identity(f.target.ring.modulus, f.target.generators))
    return quot, proj


def image(f: ModuleMorphism) -> tuple[FPModule, ModuleMorphism]:
    return submodule_from_rows(f.target, f.matrix)


def solve_through(b: MatrixZn, relations: MatrixZn, target_row) -> LinearSolution | None:
    """Solve x @ b = target modulo the given relation span."""
    stacked = vstack([b, relations])
    sol = solve_linear(stacked, target_row)
    if sol is None:
        return None
    x = sol.particular[:b.rows]
    ker = howell(sol.kernel.take_columns(0, b.rows))
    return LinearSolution(reduce_mod_span(x, ker), ker)


def factor_through_injection(f: ModuleMorphism, incl: ModuleMorphism) -> ModuleMorphism | None:
    """Factor f: T -> M through a mono incl: S -> M (image must lie in S)."""
    if f.target != incl.target:
        raise ValueError("different ambient targets")
    rows = []
    for i in range(f.source.generators):
        sol = solve_through(incl.matrix, incl.target.relations, f.matrix.row(i))
        if sol is None:
            return None
        rows.append(list(sol.particular))
    mat = MatrixZn.from_rows(f.matrix.modulus, rows, cols=incl.source.generators)
    return ModuleMorphism(f.source, incl.source, mat)


def lift_along(f: ModuleMorphism, through: ModuleMorphism) -> ModuleMorphism | None:
    """Find h with h.then(through) == f, if the linear system is solvable.

    This is the workhorse for every lifting the constructions perform; when
    it returns None the corresponding Ext obstruction is genuinely nonzero.
    """
    if f.target != through.target:
        raise ValueError("liftings need a common target")
    if f.source.relations.rows == 0:
        # Free source: no well-definedness constraints, solve per generator.
        rows = []
        for i in range(f.source.generators):
            sol = solve_through(through.matrix, through.target.relations,
                                f.matrix.row(i))
            if sol is None:
                return None
            rows.append(list(sol.particular))
        mat = MatrixZn.from_rows(f.matrix.modulus, rows,
                                 cols=through.source.generators)
        return ModuleMorphism(f.source, through.source, mat)
    # General source: solve inside Hom groups so the lift stays well defined.
    hsrc = hom_group(f.source, through.source)
    hdst = hom_group(f.source, through.target)
    star = hom_transport(hsrc, hdst, post=through)
    sol = solve_through(star.matrix, hdst.module.relations, hdst.encode(f))
    if sol is None:
        return None
    return hsrc.decode(sol.particular)


def direct_sum_list(mods: list[FPModule], ring: RingSpec | None = None):
    """Direct sum with injection and projection morphisms."""
    if not mods:
        if ring is None:
            raise ValueError("empty direct sum needs a ring")
        z = zero_module(ring)
        return z, [], []
    ring = mods[0].ring
    n = ring.modulus
    total = sum(m.generators for m in mods)
    rel = block_diag([m.relations for m in mods], n)
    s = module_from_presentation(ring, total, rel)
    injections = []
    projections = []
    offset = 0
    for m in mods:
        inj = MatrixZn.zeros(n, m.generators, total).to_rows()
        proj = MatrixZn.zeros(n, total, m.generators).to_rows()
        for i in range(m.generators):
            inj[i][offset + i] = 1
            proj[offset + i][i] = 1
        injections.append(ModuleMorphism(m, s, MatrixZn.from_rows(n, inj, cols=total)))
        projections.append(ModuleMorphism(s, m, MatrixZn.from_rows(n, proj, cols=m.generators)))
        offset += m.generators
    return s, injections, projections


def direct_sum(m1: FPModule, m2: FPModule):
    s, injs, projs = direct_sum_list([m1, m2])
    return s, (injs[0], injs[1]), (projs[0], projs[1])


def pullback(f: ModuleMorphism, g: ModuleMorphism):
    """Pullback of f: A -> C and g: B -> C, with its two projections."""
    if f.target != g.target:
        raise ValueError("pullback needs a common target")
    s, (ia, ib), (pa, pb) = direct_sum(f.source, g.source)
    diff = ModuleMorphism(s, f.target, vstack([f.matrix, g.matrix.neg()]))
    p, incl = kernel(diff)
    return p, incl.then(pa), incl.then(pb)


def pushout(f: ModuleMorphism, g: ModuleMorphism):
    """Pushout of f: A -> B and g: A -> C, with its two injections."""
    if f.source != g.source:
        raise ValueError("pushout needs a common source")
    s, (ib, ic), _ = direct_sum(f.target, g.target)
    anti = ModuleMorphism(f.source, s, hstack(f.matrix, g.matrix.neg()))
    q, proj = cokernel(anti)
    return q, ib.then(proj), ic.then(proj)


@dataclass(frozen=True)
class HomGroup:
    """Hom(M, N) as an FPModule together with decode/encode.

    Elements are coefficient rows over ``module``'s generators; ``basis``
    flattens each generator to a g*h generator-matrix row inside N^g.
    """

    source: FPModule
    target: FPModule
    module: FPModule
    basis: MatrixZn      # module.generators x (g*h)
    ambient: FPModule    # N^g

    def decode(self, coeffs) -> ModuleMorphism:
        n = self.module.ring.modulus
        g, h = self.source.generators, self.target.generators
        row = MatrixZn.from_rows(n, [list(coeffs)], cols=self.module.generators)
        flat = row.mul(self.basis).data if self.module.generators else (0,) * (g * h)
        return ModuleMorphism(self.source, self.target, MatrixZn(g, h, n, flat))

    def encode(self, f: ModuleMorphism) -> tuple[int, ...]:
        if f.source != self.source or f.target != self.target:
            raise ValueError("morphism does not belong to this Hom group")
        sol = solve_through(self.basis, self.ambient.relations, f.matrix.data)
        if sol is None:
            raise ValueError("morphism not representable; Hom computation broken")
        return self.module.reduce(sol.particular)

    def random_element(self, rng) -> ModuleMorphism:
        return self.decode(self.module.sample_element(rng))

    def all_elements(self, cap: int = 200000):
        return (self.decode(c) for c in self.module.elements(cap))


def hom_group(m: FPModule, n_mod: FPModule) -> HomGroup:
    """Hom(M, N) computed as the kernel of N^g -> N^k induced by the
    relation rows of M (apply Hom(-, N) to a free presentation)."""
    if m.ring != n_mod.ring:
        raise ValueError("ring mismatch")
    ring = m.ring
    g = m.generators
    k = m.relations.rows
    h = n_mod.generators
    ng, _, _ = direct_sum_list([n_mod] * g, ring)
    nk, _, _ = direct_sum_list([n_mod] * k, ring)
    # block (j, r) of the induced matrix is R[r][j] * I_h
    flat = [0] * (g * h * k * h)
    width = k * h
    for j in range(g):
        for r in range(k):
            c = m.relations.data[r * g + j]
            if c:
                for l in range(h):
                    flat[(j * h + l) * width + r * h + l] = c
    induced = ModuleMorphism(ng, nk, MatrixZn(g * h, width, ring.modulus, tuple(flat)))
    ker, incl = kernel(induced)
    return HomGroup(m, n_mod, ker, incl.matrix, ng)


def hom_transport(src: HomGroup, dst: HomGroup,
                  pre: ModuleMorphism | None = None,
                  post: ModuleMorphism | None = None) -> ModuleMorphism:
    """The map Hom(M,N) -> Hom(M',N'), f -> pre;f;post, between hom groups."""
    rows = []
    for i in range(src.module.generators):
        coeffs = [0] * src.module.generators
        coeffs[i] = 1
        f = src.decode(coeffs)
        if pre is not None:
            f = pre.then(f)
        if post is not None:
            f = f.then(post)
        rows.append(list(dst.encode(f)))
    mat = MatrixZn.from_rows(src.module.ring.modulus, rows, cols=dst.module.generators)
    return ModuleMorphism(src.module, dst.module, mat)


def _free_hom_matrix(d: MatrixZn, n_mod: FPModule) -> MatrixZn:
    """Matrix of Hom(R^a, N) -> Hom(R^b, N) induced by d: R^b -> R^a,
    identifying Hom(R^a, N) with N^a (precomposition with d)."""
    b, a = d.rows, d.cols
    h = n_mod.generators
    n = n_mod.ring.modulus
    flat = [0] * (a * h * b * h)
    width = b * h
    for j in range(a):
        for r in range(b):
            c = d.data[r * a + j]
            if c:
                for l in range(h):
                    flat[(j * h + l) * width + r * h + l] = c
    return MatrixZn(a * h, width, n, tuple(flat))


def subquotient(ambient: FPModule, top_rows: MatrixZn, bottom_rows: MatrixZn) -> FPModule:
    """Present (span(top) + rel) / (span(bottom) + rel) inside ambient;
    bottom must be contained in top for this to be the honest subquotient."""
    gens = howell(top_rows)
    rel = _relations_of_rows(gens, vstack([bottom_rows, ambient.relations]))
    return module_from_presentation(ambient.ring, gens.rows, rel)


def ext1(m: FPModule, n_mod: FPModule) -> FPModule:
    """Ext^1(M, N) via the canonical free resolution

        R^t --K2--> R^k --H--> R^g --> M --> 0

    with H the Howell relations of M and K2 = ker(H); the answer is
    ker Hom(d2) / im Hom(d1) inside N^k."""
    if m.ring != n_mod.ring:
        raise ValueError("ring mismatch")
    ring = m.ring
    h_rel = m.relations                 # k x g
    k2 = kernel_basis(h_rel)            # t x k
    k = h_rel.rows
    nk, _, _ = direct_sum_list([n_mod] * k, ring)
    d1s = _free_hom_matrix(h_rel, n_mod)   # (g*h) x (k*h)
    d2s = _free_hom_matrix(k2, n_mod)      # (k*h) x (t*h)
    nt, _, _ = direct_sum_list([n_mod] * k2.rows, ring)
    d2_map = ModuleMorphism(nk, nt, d2s)
    zker, zincl = kernel(d2_map)
    return subquotient(nk, zincl.matrix, d1s)


def minimal_free_cover(m: FPModule) -> ModuleMorphism:
    """Epi from a free module onto M.

    Over a local ring (n = p^k) the rank is dim_(Z/p) M/pM and the kernel is
    superfluous, so this is the projective cover.  Over a non-local ring it
    falls back to the free module on all generators, a precover only.
    """
    ring = m.ring
    n = ring.modulus
    if ring.is_local:
        p = ring.factorization[0][0]
        pivots = _mod_p_pivot_columns(m.relations, p, m.generators)
        free_cols = [j for j in range(m.generators) if j not in pivots]
        f = free_module(ring, len(free_cols))
        rows = []
        for j in free_cols:
            row = [0] * m.generators
            row[j] = 1
            rows.append(row)
        mat = MatrixZn.from_rows(n, rows, cols=m.generators)
        cover = ModuleMorphism(f, m, mat)
    else:
        f = free_module(ring, m.generators)
        cover = ModuleMorphism(f, m, MatrixZn.identity(n, m.generators))
    return cover


projective_precover = minimal_free_cover


def _mod_p_pivot_columns(rel: MatrixZn, p: int, g: int) -> set[int]:
    """Pivot columns of the relation span reduced mod p (field Gauss)."""
    rows = [[x % p for x in rel.row(i)] for i in range(rel.rows)]
    pivots: set[int] = set()
    r = 0
    for col in range(g):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(inv * x) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.add(col)
        r += 1
    return pivots


def dual(m: FPModule) -> HomGroup:
    """Matlis duality D(M) = Hom(M, R) over the quasi-Frobenius ring Z/n."""
    return hom_group(m, free_module(m.ring, 1))


def dual_module(m: FPModule) -> FPModule:
    return dual(m).module


def dual_map(f: ModuleMorphism) -> ModuleMorphism:
    """D(f): D(N) -> D(M) (precomposition with f)."""
    return hom_transport(dual(f.target), dual(f.source), pre=f)


def double_dual_embedding(m: FPModule) -> ModuleMorphism:
    """The natural evaluation map M -> D(D(M)); an isomorphism over Z/n."""
    dm = dual(m)
    ddm = dual(dm.module)
    rows = []
    for i in range(m.generators):
        # evaluation at generator i, as a map D(M) -> R
        ev_rows = [[dm.decode(_unit_row(dm.module.generators, j)).matrix.data[i]]
                   for j in range(dm.module.generators)]
        ev = ModuleMorphism(dm.module, free_module(m.ring, 1),
                            MatrixZn.from_rows(m.ring.modulus, ev_rows, cols=1))
        rows.append(list(ddm.encode(ev)))
    mat = MatrixZn.from_rows(m.ring.modulus, rows, cols=ddm.module.generators)
    return ModuleMorphism(m, ddm.module, mat)


def _unit_row(length: int, idx: int) -> list[int]:
    row = [0] * length
    row[idx] = 1
    return row


def injective_preenvelope(m: FPModule) -> ModuleMorphism:
    """Monic M -> E with E injective (= free over the QF ring Z/n),
    computed as the dual of a free cover of the dual."""
    dm = dual(m)
    cover = minimal_free_cover(dm.module)
    emb = double_dual_embedding(m)
    co = dual_map(cover)  # D(D(M)) -> D(F), monic
    return emb.then(co)


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> A -> B -> C -> 0 with both maps validated."""

    left: ModuleMorphism   # A -> B, monic
    right: ModuleMorphism  # B -> C, epic

    def __post_init__(self):
        if self.left.target != self.right.source:
            raise ValueError("maps do not compose")
        if not self.left.is_monic():
            raise ValueError("left map is not monic")
        if not self.right.is_epic():
            raise ValueError("right map is not epic")
        kmod, kincl = kernel(self.right)
        b_rel = self.left.target.relations
        im = vstack([self.left.matrix, b_rel])
        ker = vstack([kincl.matrix, b_rel])
        if howell(im) != howell(ker):
            raise ValueError("image of left map differs from kernel of right map")

    @property
    def a(self) -> FPModule:
        return self.left.source

    @property
    def b(self) -> FPModule:
        return self.left.target

    @property
    def c(self) -> FPModule:
        return self.right.target


def ses_from_submodule(ambient: FPModule, rows: MatrixZn) -> ShortExactSequence:
    sub, incl = submodule_from_rows(ambient, rows)
    quot, proj = cokernel(incl)
    return ShortExactSequence(incl, proj)


def corestrict_to_image(f: ModuleMorphism) -> tuple[ModuleMorphism, ModuleMorphism]:
    """Factor f as (epi onto image, inclusion of image)."""
    img, incl = image(f)
    epi = factor_through_injection(f, incl)
    if epi is None:
        raise AssertionError("image inclusion must absorb its own map")
    return epi, incl
