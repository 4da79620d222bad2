"""Finitely presented modules over k[x]/I and maps between them.

Submodules of R^r are handled by the usual encoding as ideals: a vector
``(p_1, ..., p_r)`` becomes ``sum p_i * E_i`` in ``k[x, E]``, modulo all
quadratic monomials ``E_i E_j``.  An elimination order with the E block
first is a position-over-term module order, so one polynomial Groebner
basis gives module Groebner bases, membership and syzygies.  The quadratic
monomials are never materialized: Buchberger runs in module mode and only
pairs elements with the same leading position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import groebner as _gb
from .ideal import Ideal
from .poly import Poly, PolyRing

Vector = tuple  # tuple of Poly


def _fresh_names(ring: PolyRing, prefix: str, n: int, taken=()):
    out = []
    k = 0
    taken = set(taken)
    while len(out) < n:
        name = f"{prefix}{k}"
        k += 1
        if name in ring.index or name in taken:
            continue
        out.append(name)
    return out


def _encode(vec, ring: PolyRing, big: PolyRing, names) -> Poly:
    acc = big.zero()
    for p, n in zip(vec, names):
        if p:
            acc = acc + ring(p).to(big) * big.var(n)
    return acc


def _decode(p: Poly, ring: PolyRing, names) -> Vector:
    big = p.ring
    idx = [big.index[n] for n in names]
    comps = [dict() for _ in names]
    base_idx = [big.index[v] for v in ring.variables]
    for e, c in p.terms.items():
        for slot, i in enumerate(idx):
            if e[i]:
                comps[slot][tuple(e[j] for j in base_idx)] = c
                break
    return tuple(Poly(ring, d) for d in comps)


class _LinearBasis:
    """Groebner basis of block-linear polynomials in module mode."""

    def __init__(self, big: PolyRing, gens, block):
        self.big = big
        order = big.order
        pos = tuple(sorted(big.index[n] for n in block))
        keyed = [g.keyed(order) for g in gens if g]
        self.keyed = [(max(d), d) for d in _gb.groebner(keyed, order, positions=pos)]

    def reduce(self, f: Poly) -> Poly:
        order = self.big.order
        return Poly.from_keyed(self.big, _gb.reduce(f.keyed(order), self.keyed, order))

    def basis(self):
        return [Poly.from_keyed(self.big, d) for _, d in self.keyed]


def _ideal_multiples(ideal, big, names):
    out = []
    if ideal is not None:
        for f in ideal.gb():
            fb = f.to(big)
            out += [fb * big.var(n) for n in names]
    return out


class SubmoduleGB:
    """Groebner data for the submodule of R^rank generated by ``vectors``
    plus ``ideal * R^rank``."""

    def __init__(self, ring: PolyRing, rank: int, vectors: Sequence[Vector],
                 ideal: Ideal | None = None):
        self.ring = ring
        self.rank = rank
        self.ideal = ideal
        self.names = _fresh_names(ring, "_e", rank)
        if rank == 0:
            self.big = None
            return
        self.big = PolyRing(ring.variables + tuple(self.names), "elimw", block=self.names)
        gens = [_encode(v, ring, self.big, self.names) for v in vectors]
        gens += _ideal_multiples(ideal, self.big, self.names)
        self._basis = _LinearBasis(self.big, gens, self.names)

    def reduce(self, vec: Vector) -> Vector:
        if self.rank == 0:
            return ()
        r = self._basis.reduce(_encode(vec, self.ring, self.big, self.names))
        return _decode(r, self.ring, self.names)

    def contains(self, vec: Vector) -> bool:
        return not any(self.reduce(vec))

    def basis(self):
        if self.rank == 0:
            return []
        return [_decode(g, self.ring, self.names) for g in self._basis.basis()]


def syzygies(ring: PolyRing, vectors: Sequence[Vector], rank: int,
             relations: Sequence[Vector] = (), ideal: Ideal | None = None):
    """Generators of {a in R^m : sum a_j v_j in <relations> + I R^rank}.

    Coefficients are reduced modulo ``ideal``; zero syzygies are dropped.
    """
    m = len(vectors)
    if m == 0:
        return []
    if rank == 0:
        z = ring.zero()
        return [tuple(ring.one() if i == j else z for i in range(m)) for j in range(m)]
    enames = _fresh_names(ring, "_e", rank)
    snames = _fresh_names(ring, "_s", m, enames)
    big = PolyRing(ring.variables + tuple(enames) + tuple(snames), "elimw", block=enames)
    gens = []
    for j, v in enumerate(vectors):
        gens.append(_encode(v, ring, big, enames) + big.var(snames[j]))
    for rel in relations:
        gens.append(_encode(rel, ring, big, enames))
    gens += _ideal_multiples(ideal, big, enames + snames)
    gb = _LinearBasis(big, gens, enames + snames).basis()
    eidx = [big.index[n] for n in enames]
    out = []
    for g in gb:
        if any(e[i] for e in g.terms for i in eidx):
            continue
        vec = _decode(g, ring, snames)
        if ideal is not None:
            vec = tuple(ideal.reduce(p) for p in vec)
        if any(vec):
            out.append(vec)
    return out


def lift(ring: PolyRing, vectors: Sequence[Vector], rank: int, vec: Vector,
         relations: Sequence[Vector] = (), ideal: Ideal | None = None):
    """Coefficients c with vec = sum c_j vectors[j] modulo relations, or None."""
    m = len(vectors)
    if rank == 0 or not any(vec):
        return tuple(ring.zero() for _ in range(m))
    enames = _fresh_names(ring, "_e", rank)
    snames = _fresh_names(ring, "_s", m, enames)
    big = PolyRing(ring.variables + tuple(enames) + tuple(snames), "elimw", block=enames)
    gens = [_encode(v, ring, big, enames) + big.var(snames[j]) for j, v in enumerate(vectors)]
    gens += [_encode(r, ring, big, enames) for r in relations]
    gens += _ideal_multiples(ideal, big, enames + snames)
    r = _LinearBasis(big, gens, enames + snames).reduce(_encode(vec, ring, big, enames))
    eidx = [big.index[n] for n in enames]
    if any(e[i] for e in r.terms for i in eidx):
        return None
    return tuple(-p for p in _decode(r, ring, snames))


@dataclass(frozen=True)
class PresentedModule:
    """R^n / <relations> over R = ring / ideal."""

    ring: PolyRing
    n_generators: int
    relations: tuple = ()
    ideal: Ideal | None = field(default=None, compare=False)

    def __post_init__(self):
        rels = tuple(tuple(self.ring(p) for p in r) for r in self.relations)
        for r in rels:
            if len(r) != self.n_generators:
                raise ValueError("relation vector has wrong length")
        object.__setattr__(self, "relations", rels)
        if self.ideal is None:
            object.__setattr__(self, "ideal", Ideal(self.ring, []))

    @classmethod
    def free(cls, ring: PolyRing, n: int, ideal: Ideal | None = None):
        return cls(ring, n, (), ideal)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def unit(self, i: int) -> Vector:
        z = self.ring.zero()
        one = self.ring.one()
        return tuple(one if j == i else z for j in range(self.n_generators))

    def gbdata(self) -> SubmoduleGB:
        cached = self.__dict__.get("_gbdata")
        if cached is None:
            cached = SubmoduleGB(self.ring, self.n_generators, self.relations, self.ideal)
            object.__setattr__(self, "_gbdata", cached)
        return cached

    def is_zero_element(self, vec: Vector) -> bool:
        return self.gbdata().contains(vec)

    def is_zero(self) -> bool:
        """Zero-module test: every generator reduces to zero."""
        return all(self.is_zero_element(self.unit(i)) for i in range(self.n_generators))

    def submodule_contains(self, gens: Sequence[Vector], vec: Vector) -> bool:
        """``vec`` lies in the submodule generated by ``gens`` (modulo relations)."""
        sub = SubmoduleGB(self.ring, self.n_generators, list(gens) + list(self.relations),
                          self.ideal)
        return sub.contains(vec)

    def same_submodule(self, a: Sequence[Vector], b: Sequence[Vector]) -> bool:
        sa = SubmoduleGB(self.ring, self.n_generators, list(a) + list(self.relations), self.ideal)
        sb = SubmoduleGB(self.ring, self.n_generators, list(b) + list(self.relations), self.ideal)
        return all(sa.contains(v) for v in b) and all(sb.contains(v) for v in a)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        z = self.ring.zero()
        rels = [tuple(r) + (z,) * other.n_generators for r in self.relations]
        rels += [(z,) * self.n_generators + tuple(r) for r in other.relations]
        return PresentedModule(self.ring, self.n_generators + other.n_generators, rels, self.ideal)


def conormal_module(ideal: Ideal, gens: Sequence[Poly] | None = None) -> PresentedModule:
    """I/I^2 presented on the given generators of I, over ring / I.

    The relations are the ambient syzygies of the generators reduced mod I.
    """
    ring = ideal.ring
    gens = [ring(g) for g in (gens if gens is not None else ideal.gens)]
    syz = syzygies(ring, [(g,) for g in gens], 1)
    rels = []
    for v in syz:
        v = tuple(ideal.reduce(p) for p in v)
        if any(v):
            rels.append(v)
    return PresentedModule(ring, len(gens), tuple(rels), ideal)


def module_gb(mod: PresentedModule):
    """Syzygies of the relation matrix of ``mod`` (modulo its ideal)."""
    if not mod.relations:
        return []
    return syzygies(mod.ring, mod.relations, mod.n_generators, (), mod.ideal)


class ModuleMap:
    """A map ``source -> target``; ``matrix[j]`` is the image of source generator j."""

    def __init__(self, source: PresentedModule, target: PresentedModule, matrix,
                 check: bool = True):
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(target.ring(p) for p in col) for col in matrix)
        if len(self.matrix) != source.n_generators:
            raise ValueError("need one image column per source generator")
        for col in self.matrix:
            if len(col) != target.n_generators:
                raise ValueError("image column has wrong length")
        if check:
            for rel in source.relations:
                if not target.is_zero_element(self.apply(rel)):
                    raise ValueError("map does not send source relations into target relations")

    def apply(self, vec: Vector) -> Vector:
        ring = self.target.ring
        out = [ring.zero()] * self.target.n_generators
        for a, col in zip(vec, self.matrix):
            if a:
                for i, p in enumerate(col):
                    if p:
                        out[i] = out[i] + a * p
        return tuple(self.target.ideal.reduce(p) if self.target.ideal.gens else p for p in out)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target,
                         [self.apply(col) for col in other.matrix], check=False)

    def image_vectors(self):
        return list(self.matrix)


@dataclass
class MapDiagnostics:
    kernel: PresentedModule
    kernel_vectors: list
    cokernel: PresentedModule
    injective: bool
    surjective: bool

    def __getitem__(self, key):
        return getattr(self, key)


def kernel_vectors(f: ModuleMap):
    return syzygies(f.source.ring, f.matrix, f.target.n_generators,
                    f.target.relations, f.target.ideal)


def map_diagnostics(f: ModuleMap) -> MapDiagnostics:
    src, tgt = f.source, f.target
    coker = PresentedModule(tgt.ring, tgt.n_generators,
                            tuple(tgt.relations) + tuple(f.matrix), tgt.ideal)
    kv = kernel_vectors(f)
    kv = [v for v in kv if not src.is_zero_element(v)]
    krels = syzygies(src.ring, kv, src.n_generators, src.relations, src.ideal) if kv else []
    kernel = PresentedModule(src.ring, len(kv), tuple(krels), src.ideal)
    return MapDiagnostics(kernel, kv, coker, injective=not kv, surjective=coker.is_zero())
