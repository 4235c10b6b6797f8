"""Batch command-line front end.

Loads rings, modules and complexes from JSON, runs the constructions and
the certifier, and emits canonical JSON (sorted keys, no floats).  Exit
codes: 0 success with a PROVEN or SAMPLED certificate, 1 a FAILED
certificate or hypothesis violation (machine-readable witness emitted),
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ringlinalg import RingSpec
from . import fpmodules as fp
from . import complexes as cx
from . import classes as cl
from . import certify as ct
from . import constructions as cs
from . import jsonio

COMMANDS = ("precover", "special-precover", "preenvelope",
            "special-preenvelope", "cover", "decompose", "certify",
            "hom", "ext", "ext-ch", "dual", "examples")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zncover",
        description="Certified precovers and preenvelopes of complexes over Z/n")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--ring", type=int, help="modulus n of the base ring Z/n")
    p.add_argument("--in", dest="infile", help="primary input file (JSON)")
    p.add_argument("--class", dest="cls", default="free",
                   help="module class: free, projective, injective, all")
    p.add_argument("--seed", type=int, default=0,
                   help="sampling seed (default 0)")
    p.add_argument("--samples", type=int, default=5,
                   help="randomized checks per certificate (default 5)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--supplied-exact-precover", dest="supplied",
                   help="chain map JSON: a certified special exact precover")
    p.add_argument("--m", help="first module file (hom/ext)")
    p.add_argument("--n", dest="second_module", help="second module file (hom/ext)")
    p.add_argument("--x", help="first complex file (ext-ch)")
    p.add_argument("--y", help="second complex file (ext-ch)")
    return p


class UsageError(ValueError):
    pass


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _ring_of(args, payload_ring: int | None = None) -> RingSpec:
    if args.ring is not None:
        ring = RingSpec.of(args.ring)
        if payload_ring is not None and payload_ring != ring.modulus:
            raise UsageError("--ring disagrees with the ring in the input file")
        return ring
    if payload_ring is not None:
        return RingSpec.of(payload_ring)
    raise UsageError("--ring is required for this command")


def _need(args, attr, flag):
    v = getattr(args, attr)
    if v is None:
        raise UsageError(f"{flag} is required for this command")
    return v


def _load_complex(args) -> cx.ChainComplex:
    d = _load_json(_need(args, "infile", "--in"))
    ring = _ring_of(args, int(d.get("ring")))
    return jsonio.complex_from_dict(d, ring)


def _precover_payload(res: cs.PrecoverResult) -> dict:
    return {"map": jsonio.chain_map_to_dict(res.map),
            "kernel": jsonio.complex_to_dict(res.kernel),
            "certificate": res.certificate.to_dict()}


def _preenvelope_payload(res: cs.PreenvelopeResult) -> dict:
    return {"map": jsonio.chain_map_to_dict(res.map),
            "cokernel": jsonio.complex_to_dict(res.cokernel),
            "certificate": res.certificate.to_dict()}


def _run(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd in ("precover", "special-precover", "preenvelope",
               "special-preenvelope", "cover", "decompose"):
        c = _load_complex(args)
        cls = cl.builtin(args.cls, c.ring)
        if cmd == "precover":
            res = cs.epic_precover(c, cls, seed=args.seed, samples=args.samples)
            return _precover_payload(res), 0 if res.certificate.ok else 1
        if cmd == "special-precover":
            supplied = None
            if args.supplied is not None:
                supplied = jsonio.chain_map_from_dict(_load_json(args.supplied))
            res = cs.special_precover_any(c, cls, supplied=supplied,
                                          seed=args.seed, samples=args.samples)
            return _precover_payload(res), 0 if res.certificate.ok else 1
        if cmd == "preenvelope":
            res = cs.monic_preenvelope(c, cls, seed=args.seed,
                                       samples=args.samples)
            return _preenvelope_payload(res), 0 if res.certificate.ok else 1
        if cmd == "special-preenvelope":
            res = cs.special_preenvelope_any(c, cls, seed=args.seed,
                                             samples=args.samples)
            return _preenvelope_payload(res), 0 if res.certificate.ok else 1
        if cmd == "cover":
            res = cs.cover_on_orthogonal(c, cls, seed=args.seed,
                                         samples=args.samples)
            return _precover_payload(res), 0 if res.certificate.ok else 1
        res = cs.decompose_into_disks(c, cls)
        return {"summands": [[deg, jsonio.module_to_dict(mod)]
                             for deg, mod in res.summands],
                "iso": jsonio.chain_map_to_dict(res.iso),
                "inverse": jsonio.chain_map_to_dict(res.inverse)}, 0

    if cmd == "certify":
        claim = _load_json(_need(args, "infile", "--in"))
        return _run_certify(args, claim)

    if cmd in ("hom", "ext"):
        md = _load_json(_need(args, "m", "--m"))
        nd = _load_json(_need(args, "second_module", "--n"))
        ring = _ring_of(args, int(md.get("ring")))
        m = jsonio.module_from_dict(md, ring)
        n_mod = jsonio.module_from_dict(nd, ring)
        if cmd == "hom":
            h = fp.hom_group(m, n_mod)
            return {"order": h.module.order,
                    "divisors": list(h.module.elementary_divisors)}, 0
        e = fp.ext1(m, n_mod)
        return {"divisors": list(e.elementary_divisors)}, 0

    if cmd == "ext-ch":
        xd = _load_json(_need(args, "x", "--x"))
        yd = _load_json(_need(args, "y", "--y"))
        ring = _ring_of(args, int(xd.get("ring")))
        x = jsonio.complex_from_dict(xd, ring)
        y = jsonio.complex_from_dict(yd, ring)
        e = cx.ext1_ch(x, y)
        return {"divisors": list(e.elementary_divisors)}, 0

    if cmd == "dual":
        c = _load_complex(args)
        return {"complex": jsonio.complex_to_dict(cx.reverse_dual(c))}, 0

    if cmd == "examples":
        ring = _ring_of(args)
        scenarios = cs.example_scenarios(ring, seed=args.seed,
                                         samples=args.samples)
        payload = {"scenarios": [{
            "name": s.name,
            "map": jsonio.chain_map_to_dict(s.map),
            "certificate": s.certificate.to_dict(),
        } for s in scenarios]}
        code = 0 if all(s.certificate.ok for s in scenarios) else 1
        return payload, code

    raise UsageError(f"unhandled command {cmd}")


def _run_certify(args, claim: dict) -> tuple[dict, int]:
    kind = claim.get("kind")
    if kind in ("tilde-membership", "exactness"):
        comp = jsonio.complex_from_dict(claim["complex"])
        if kind == "exactness":
            cert = ct.certify_exactness(comp)
        else:
            cls = cl.builtin(claim.get("class", args.cls), comp.ring)
            cert = ct.certify_tilde(comp, cls)
        return {"certificate": cert.to_dict()}, 0 if cert.ok else 1
    if kind in ("precover", "special-precover", "preenvelope",
                "special-preenvelope"):
        phi = jsonio.chain_map_from_dict(claim["map"])
        cls = cl.builtin(claim.get("class", args.cls), phi.source.ring)
        fns = {"precover": ct.certify_precover,
               "special-precover": ct.certify_special,
               "preenvelope": ct.certify_preenvelope,
               "special-preenvelope": ct.certify_special_preenvelope}
        cert = fns[kind](phi, cls, seed=args.seed, samples=args.samples)
        return {"certificate": cert.to_dict()}, 0 if cert.ok else 1
    raise UsageError(f"unknown claim kind {kind!r}")


def _emit(payload: dict, out: str | None):
    text = jsonio.dumps_canonical(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload, code = _run(args)
    except json.JSONDecodeError as exc:
        _emit({"error": "malformed JSON", "message": str(exc),
               "position": exc.pos}, args.out)
        return 2
    except FileNotFoundError as exc:
        _emit({"error": "missing input", "message": str(exc)}, args.out)
        return 2
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, args.out)
        return 2
    except cs.ObstructionError as exc:
        _emit({"error": "hypothesis violation", "message": str(exc),
               "witness": exc.witness}, args.out)
        return 1
    except ValueError as exc:
        _emit({"error": "invalid input", "message": str(exc)}, args.out)
        return 2
    payload = {"command": args.command, "seed": args.seed, **payload}
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
