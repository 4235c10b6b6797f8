"""Pluggable classes of modules with precover/preenvelope providers.

A class packages a membership test, a provider for epis out of class
members, a provider for monos into class members, samplers for randomized
checks, and structural flags.  The flags are *claims*: the test suite and
the certifier re-check them by sampling instead of trusting them.

Builtins over Z/n: Free, Projective, Injective (= Projective, the ring is
quasi-Frobenius) and All.  FP-injective and Gorenstein-injective collapse
to Injective and All respectively over these rings and are intentionally
not separate names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ringlinalg import RingSpec
from . import fpmodules as fp
from . import complexes as cx
from . import sampling


@dataclass(frozen=True)
class ModuleClass:
    name: str
    ring: RingSpec
    member: Callable[[fp.FPModule], bool]
    precover: Callable[[fp.FPModule], fp.ModuleMorphism]
    preenvelope: Callable[[fp.FPModule], fp.ModuleMorphism]
    sample_member: Callable  # (rng) -> FPModule
    self_orthogonal: bool          # Ext^1(L, L') = 0 for members, claimed
    contained_in_projectives: bool
    projectively_resolving: bool
    contains_projectives: bool
    duality_stable: bool
    precover_is_special: bool      # provider epis are special precovers
    precover_is_cover: bool        # provider epis are minimal (covers)

    def __repr__(self):
        return f"ModuleClass({self.name!r}, Z/{self.ring.modulus})"


BUILTIN_NAMES = ("free", "projective", "injective", "all")


def builtin(name: str, ring: RingSpec) -> ModuleClass:
    key = name.strip().lower()
    if key == "free":
        return ModuleClass(
            name="free",
            ring=ring,
            member=lambda m: m.is_free,
            precover=fp.minimal_free_cover,
            preenvelope=fp.injective_preenvelope,
            sample_member=lambda rng: sampling.random_free_module(ring, rng),
            self_orthogonal=True,
            contained_in_projectives=True,
            projectively_resolving=ring.is_local,
            contains_projectives=ring.is_local,
            duality_stable=True,
            precover_is_special=True,
            precover_is_cover=ring.is_local,
        )
    if key in ("projective", "injective"):
        # one membership test: Z/n is quasi-Frobenius
        return ModuleClass(
            name=key,
            ring=ring,
            member=lambda m: m.is_projective,
            precover=fp.minimal_free_cover,
            preenvelope=fp.injective_preenvelope,
            sample_member=lambda rng: sampling.random_projective_module(ring, rng),
            self_orthogonal=True,
            contained_in_projectives=True,
            projectively_resolving=True,
            contains_projectives=True,
            duality_stable=True,
            precover_is_special=True,
            precover_is_cover=ring.is_local,
        )
    if key == "all":
        return ModuleClass(
            name="all",
            ring=ring,
            member=lambda m: True,
            precover=fp.identity,
            preenvelope=fp.identity,
            sample_member=lambda rng: sampling.random_module(ring, rng),
            self_orthogonal=False,
            contained_in_projectives=False,
            projectively_resolving=True,
            contains_projectives=True,
            duality_stable=True,
            precover_is_special=True,   # identity has zero kernel
            precover_is_cover=True,
        )
    raise ValueError(f"unknown module class {name!r}; "
                     f"expected one of {', '.join(BUILTIN_NAMES)}")


@dataclass(frozen=True)
class TildeMembership:
    member: bool
    witness: dict | None = None

    def __bool__(self):
        return self.member


def tilde_membership(c: cx.ChainComplex, cls: ModuleClass) -> TildeMembership:
    """C belongs to the tilde class iff it is exact with all cycles in cls."""
    rep = cx.is_exact(c)
    if not rep:
        return TildeMembership(False, {
            "reason": "not exact",
            "degree": rep.degree,
            "homology_order": rep.homology_order,
        })
    for m in c.degrees():
        z = cx.cycles(c, m)
        if not cls.member(z):
            return TildeMembership(False, {
                "reason": "cycle outside class",
                "degree": m,
                "divisors": list(z.elementary_divisors),
            })
    return TildeMembership(True)


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    checked: int
    witness: dict | None = None

    def __bool__(self):
        return self.passed


def orthogonal_sample_check(cls: ModuleClass, samples: int, seed: int) -> OrthogonalityReport:
    """Sample member pairs and compute Ext^1; PASS is evidence, not proof."""
    rng = sampling.rng_from_seed(seed)
    checked = 0
    for _ in range(samples):
        a = cls.sample_member(rng)
        b = cls.sample_member(rng)
        e = fp.ext1(a, b)
        checked += 1
        if not e.is_zero:
            return OrthogonalityReport(False, checked, {
                "left_divisors": list(a.elementary_divisors),
                "right_divisors": list(b.elementary_divisors),
                "ext_divisors": list(e.elementary_divisors),
            })
    return OrthogonalityReport(True, checked)


@dataclass(frozen=True)
class ClassPair:
    """A candidate cotorsion pair; orthogonality is sampled, not assumed."""

    left: ModuleClass
    right: ModuleClass

    def sample_orthogonality(self, samples: int, seed: int) -> OrthogonalityReport:
        rng = sampling.rng_from_seed(seed)
        checked = 0
        for _ in range(samples):
            a = self.left.sample_member(rng)
            b = self.right.sample_member(rng)
            e = fp.ext1(a, b)
            checked += 1
            if not e.is_zero:
                return OrthogonalityReport(False, checked, {
                    "left_divisors": list(a.elementary_divisors),
                    "right_divisors": list(b.elementary_divisors),
                    "ext_divisors": list(e.elementary_divisors),
                })
        return OrthogonalityReport(True, checked)
