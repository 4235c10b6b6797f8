"""JSON wire formats.

All files are UTF-8 JSON with no floats.  Degree keys are strings.
Morphism matrices on the wire are indexed [target generator][source
generator] (the transpose of the internal row-vector convention, which is
[source][target]); relation matrices are written as they are stored, one
relation row per generator tuple.
"""

from __future__ import annotations

import json

from .ringlinalg import MatrixZn, RingSpec
from . import fpmodules as fp
from . import complexes as cx


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def module_to_dict(m: fp.FPModule) -> dict:
    return {
        "ring": m.ring.modulus,
        "generators": m.generators,
        "relations": m.relations.to_rows(),
    }


def module_from_dict(d: dict, ring: RingSpec | None = None) -> fp.FPModule:
    n = int(d["ring"])
    if ring is None:
        ring = RingSpec.of(n)
    elif ring.modulus != n:
        raise ValueError("module ring disagrees with the ambient ring")
    g = int(d["generators"])
    rel = [[int(x) for x in row] for row in d.get("relations", [])]
    return fp.module(ring, g, rel)


def _matrix_to_wire(mat: MatrixZn) -> list:
    # wire format is [target][source]
    return mat.transpose().to_rows()


def _matrix_from_wire(rows, src_gens: int, dst_gens: int, n: int) -> MatrixZn:
    wire = [[int(x) for x in r] for r in rows]
    if len(wire) != dst_gens or any(len(r) != src_gens for r in wire):
        raise ValueError("morphism matrix has wrong shape")
    return MatrixZn.from_rows(n, wire, cols=src_gens).transpose()


def morphism_to_dict(f: fp.ModuleMorphism, with_ends: bool = True) -> dict:
    out = {"matrix": _matrix_to_wire(f.matrix)}
    if with_ends:
        out["source"] = module_to_dict(f.source)
        out["target"] = module_to_dict(f.target)
    return out


def morphism_from_dict(d: dict, source: fp.FPModule | None = None,
                       target: fp.FPModule | None = None) -> fp.ModuleMorphism:
    if source is None:
        source = module_from_dict(d["source"])
    if target is None:
        target = module_from_dict(d["target"])
    mat = _matrix_from_wire(d["matrix"], source.generators, target.generators,
                            source.ring.modulus)
    return fp.ModuleMorphism(source, target, mat)


def complex_to_dict(c: cx.ChainComplex) -> dict:
    terms = {}
    diffs = {}
    for m in c.degrees():
        terms[str(m)] = module_to_dict(c.term(m))
        if m > c.lo:
            diffs[str(m)] = _matrix_to_wire(c.diff(m).matrix)
    return {"ring": c.ring.modulus, "lo": c.lo, "hi": c.hi,
            "terms": terms, "differentials": diffs}


def complex_from_dict(d: dict, ring: RingSpec | None = None) -> cx.ChainComplex:
    n = int(d["ring"])
    if ring is None:
        ring = RingSpec.of(n)
    elif ring.modulus != n:
        raise ValueError("complex ring disagrees with the ambient ring")
    terms = {int(k): module_from_dict(v, ring) for k, v in d.get("terms", {}).items()}
    diffs = {}
    for k, rows in d.get("differentials", {}).items():
        m = int(k)
        if m not in terms or (m - 1) not in terms:
            raise ValueError(f"differential at degree {m} misses its terms")
        src, dst = terms[m], terms[m - 1]
        mat = _matrix_from_wire(rows, src.generators, dst.generators, n)
        diffs[m] = fp.ModuleMorphism(src, dst, mat)
    return cx.complex_new(ring, terms, diffs)


def chain_map_to_dict(phi: cx.ChainMap) -> dict:
    comps = {}
    for m in range(min(phi.source.lo, phi.target.lo),
                   max(phi.source.hi, phi.target.hi) + 1):
        f = phi.component(m)
        if not f.matrix.is_zero():
            comps[str(m)] = _matrix_to_wire(f.matrix)
    return {"source": complex_to_dict(phi.source),
            "target": complex_to_dict(phi.target),
            "components": comps}


def chain_map_from_dict(d: dict, ring: RingSpec | None = None) -> cx.ChainMap:
    src = complex_from_dict(d["source"], ring)
    dst = complex_from_dict(d["target"], ring)
    comps = {}
    for k, rows in d.get("components", {}).items():
        m = int(k)
        s, t = src.term(m), dst.term(m)
        comps[m] = fp.ModuleMorphism(s, t, _matrix_from_wire(
            rows, s.generators, t.generators, src.ring.modulus))
    return cx.ChainMap(src, dst, comps)
