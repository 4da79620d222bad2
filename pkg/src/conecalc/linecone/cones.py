"""Cones inside linear spaces, normal cones and cone actions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..symkernel import (Ideal, Poly, PolyRing, RingMap, conormal_module, eliminate, equal,
                         preimage, saturate)
from .spaces import LinSpaceHom, LinearSpace, fresh_coords, free_space, linspace_from_module


class NotHomogeneous(ValueError):
    pass


class Cone:
    """A cone-degree homogeneous ideal in ``ambient.ring``.

    The ambient linear relations and the base ideal are always adjoined.
    """

    def __init__(self, ambient: LinearSpace, gens, saturated: bool = False,
                 generators: Sequence[Poly] | None = None):
        self.ambient = ambient
        ring = ambient.ring
        gens = [ring(g) for g in gens]
        for g in gens:
            if not g.is_homogeneous("cone"):
                raise NotHomogeneous(f"cone generator {g} is not homogeneous in the cone variables")
        self.ideal = Ideal(ring, Ideal(ring, gens + ambient.defining_gens()).gb())
        self.saturated = saturated
        # generators f_i of I when the cone is a normal cone
        self.generators = tuple(generators) if generators is not None else None

    def __repr__(self):
        return f"Cone({[str(g) for g in self.ideal.gens]})"

    @property
    def ring(self) -> PolyRing:
        return self.ambient.ring

    def saturate(self) -> "Cone":
        if self.saturated:
            return self
        irr = Ideal(self.ring, [self.ring.var(y) for y in self.ambient.coords])
        sat = saturate(self.ideal, irr) if self.ambient.coords else self.ideal
        return Cone(self.ambient, sat.gens, True, self.generators)

    def equals(self, other: "Cone") -> bool:
        if self.ambient.coords != other.ambient.coords:
            return False
        return equal(self.ideal, other.ideal.in_ring(self.ring))

    def contains(self, f) -> bool:
        return self.ideal.contains(self.ring(f))


def zero_cone(space: LinearSpace) -> Cone:
    return Cone(space, [space.ring.var(y) for y in space.coords], saturated=True)


def full_cone(space: LinearSpace) -> Cone:
    return Cone(space, [], saturated=True)


def normal_cone(ideal: Ideal, generators: Sequence | None = None,
                coords: Sequence[str] | None = None, twists=None) -> Cone:
    """C_{X|M} = Spec of the associated graded ring, inside N_{X|M} = L(I/I^2).

    One coordinate per generator f_i; the Rees kernel of Y_i -> t f_i is
    computed by eliminating t, then I is added and the result saturated by
    the irrelevant ideal of the coordinates.
    """
    ring = ideal.ring
    gens = [ring(g) for g in (generators if generators is not None else ideal.gens)]
    if not gens:
        raise ValueError("normal cone needs a nonempty generator list")
    sheaf = conormal_module(Ideal(ring, gens), gens)
    if coords is None:
        coords = fresh_coords(ring.variables, "Y", len(gens))
    if twists is None:
        homog = all(g.is_homogeneous() for g in gens if g)
        twists = [g.degree() if homog and g else 0 for g in gens]
    amb = linspace_from_module(sheaf, coords, twists)
    t = "_t"
    while t in amb.ring.index:
        t = "_" + t
    big = PolyRing(amb.ring.variables + (t,), "grevlex")
    tv = big.var(t)
    graph = [big.var(y) - tv * g.to(big) for y, g in zip(coords, gens)]
    rees = eliminate(Ideal(big, graph), [t])
    cone = Cone(amb, [g.to(amb.ring) for g in rees.gens], generators=gens)
    return cone.saturate()


@dataclass
class EConeAction:
    actor: LinearSpace
    target_cone: Cone
    hom: LinSpaceHom

    def __post_init__(self):
        if self.hom.source.coords != self.actor.coords:
            raise ValueError("action homomorphism must start at the actor")
        if self.hom.target.coords != self.target_cone.ambient.coords:
            raise ValueError("action homomorphism must land in the cone ambient")


def tangent_action(cone: Cone, coords: Sequence[str] | None = None) -> EConeAction:
    """T_M|_X acting on the normal cone through the Jacobian of the generators."""
    if cone.generators is None:
        raise ValueError("tangent action needs a normal cone with recorded generators")
    amb = cone.ambient
    base = amb.base_ring
    if coords is None:
        coords = fresh_coords(amb.ring.variables, "T", base.nvars)
    twists = [1] * base.nvars if any(amb.twists) else None
    actor = free_space(base, coords, amb.base_ideal, twists)
    jac = [[f.diff(x) for x in base.variables] for f in cone.generators]
    hom = LinSpaceHom(actor, amb, jac)
    return EConeAction(actor, cone, hom)


def _action_ring(action: EConeAction):
    amb = action.target_cone.ambient
    actor = action.actor
    taken = set(amb.ring.variables)
    rename = {}
    for c in actor.coords:
        name = c
        while name in taken:
            name = "_" + name
        taken.add(name)
        rename[c] = name
    big = PolyRing(amb.ring.variables + tuple(rename[c] for c in actor.coords), "grevlex")
    return big, rename


def is_econe(action: EConeAction) -> bool:
    """Every cone generator stays in the cone ideal after Y -> Y + hom(X')."""
    cone = action.target_cone
    amb = cone.ambient
    big, rename = _action_ring(action)
    actor = action.actor
    moved = {}
    for name, row in zip(amb.coords, action.hom.matrix):
        acc = big.var(name)
        for p, c in zip(row, actor.coords):
            if p:
                acc = acc + p.to(big) * big.var(rename[c])
        moved[name] = acc
    gens = [g.to(big) for g in cone.ideal.gens]
    gens += [r.to(big, rename) for r in actor.linear_relations]
    J = Ideal(big, gens)
    return all(J.contains(g.to(big).subs(moved, big)) for g in cone.ideal.gens)


def substitution_map(q: LinSpaceHom) -> RingMap:
    """Ring map ``target.ring -> source.ring`` of the substitution."""
    src, tgt = q.source, q.target
    imgs = q.images()
    images = [src.ring.var(v) for v in tgt.base_ring.variables] + [imgs[c] for c in tgt.coords]
    return RingMap(tgt.ring, src.ring, images)


def pushforward_ideal(q: LinSpaceHom, ideal: Ideal) -> Ideal:
    """{g on target : q*(g) in ideal}, via the graph ideal and elimination."""
    pre = preimage(substitution_map(q), ideal)
    return pre


@dataclass
class DescendResult:
    descends: bool
    candidate: Cone

    def __getitem__(self, key):
        return getattr(self, key)


class NotEpimorphism(ValueError):
    pass


def descend_check(q: LinSpaceHom, cone: Cone) -> DescendResult:
    """Does ``cone`` in ``q.source`` come from a cone in ``q.target``?"""
    if cone.ambient.coords != q.source.coords:
        raise ValueError("cone does not live in the source of q")
    if not q.is_epimorphism():
        raise NotEpimorphism("q is not an epimorphism of linear spaces")
    pre = pushforward_ideal(q, cone.ideal)
    candidate = Cone(q.target, pre.gens)
    ext = Ideal(cone.ring, q.pullback_ideal_gens(candidate.ideal.gens) + q.source.defining_gens())
    return DescendResult(equal(ext, cone.ideal), candidate)
