"""Globally embedded schemes and the data of a global normal space."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..chowcalc import ChernPoly, ChowClass
from ..linecone import Cone
from ..symkernel import Ideal, Poly, PolyRing, equal, saturate


class InconsistentSection(ValueError):
    """The zero locus of the section is not the scheme it should define."""


class NotABundle(ValueError):
    pass


def _fresh(taken, base: str) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


@dataclass(frozen=True)
class EmbeddedScheme:
    """X inside P^n, given by a saturated homogeneous ideal.

    Affine schemes are stored through their projective closure; only the
    tangent series remembers that the ambient was affine.
    """

    ideal: Ideal
    tangent_chern: ChernPoly
    affine: bool = False
    affine_vars: tuple = ()

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    @classmethod
    def projective(cls, ideal: Ideal, assume_saturated: bool = False) -> "EmbeddedScheme":
        ring = ideal.ring
        if not ideal.is_homogeneous():
            raise ValueError("a projective scheme needs homogeneous equations")
        if not assume_saturated and ideal.gens:
            ideal = saturate(ideal, Ideal(ring, ring.gens()))
        return cls(ideal, ChernPoly.projective_tangent(ring.nvars - 1))

    @classmethod
    def affine_scheme(cls, ideal: Ideal, hom_var: str = "w") -> "EmbeddedScheme":
        """Closure of X in A^n inside P^n; the new coordinate comes first."""
        src = ideal.ring
        w = _fresh(src.variables, hom_var)
        ring = PolyRing((w,) + src.variables)
        gens = []
        for g in ideal.in_ring(src.with_order("grevlex")).gb():
            d = g.degree()
            terms = {}
            for e, c in g.terms.items():
                terms[(d - sum(e),) + e] = c
            gens.append(Poly(ring, terms))
        n = src.nvars
        return cls(Ideal(ring, gens), ChernPoly.one(n), True, src.variables)

    def is_whole_space(self) -> bool:
        return self.ideal.is_zero()

    def fundamental_class_of_ambient(self) -> ChowClass:
        return ChowClass.linear(self.n, self.n)


@dataclass(frozen=True)
class Bundle:
    """A vector bundle on X, known through its rank and Chern series."""

    rank: int
    twists: tuple | None = None
    chern_poly: ChernPoly | None = None

    @classmethod
    def split(cls, twists: Sequence[int]) -> "Bundle":
        return cls(len(twists), tuple(int(d) for d in twists))

    def chern(self, n: int) -> ChernPoly:
        if self.twists is not None:
            return ChernPoly.of_twists(n, self.twists)
        if self.chern_poly is None:
            raise NotABundle("bundle without twists or Chern series")
        return self.chern_poly


def as_bundle(b) -> Bundle:
    if isinstance(b, Bundle):
        return b
    return Bundle.split(b)


@dataclass(frozen=True)
class SmoothIdentity:
    """X smooth with the tautological normal space [T_X -> 0].

    ``tangent`` is c(T_X) as a series in h; it may be omitted only when X
    is the whole projective space.
    """

    tangent: ChernPoly | None = None
    dim: int | None = None


@dataclass(frozen=True)
class SectionOfBundle:
    """X = V(s) for a section s of O(d_1) + ... + O(d_k) on the ambient."""

    twists: tuple
    sections: tuple

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(d) for d in self.twists))
        object.__setattr__(self, "sections", tuple(self.sections))
        if len(self.twists) != len(self.sections):
            raise ValueError("one section component per summand")
        for d, s in zip(self.twists, self.sections):
            if s and (not s.is_homogeneous() or s.degree() != d):
                raise ValueError(f"section component {s} is not a form of degree {d}")


@dataclass(frozen=True)
class ExplicitCone:
    """A cone in F_1 handed over directly, with F_1 and F_0 spelled out."""

    cone: Cone
    f1: object = field(default=())
    f0: object = field(default=())


def check_section(X: EmbeddedScheme, ns: SectionOfBundle) -> None:
    ring = X.ring
    gens = [s.to(ring) for s in ns.sections if s]
    irr = Ideal(ring, ring.gens())
    sat = saturate(Ideal(ring, gens), irr) if gens else Ideal(ring, [])
    if not equal(sat, X.ideal):
        raise InconsistentSection("the saturated ideal of the section differs from X")
