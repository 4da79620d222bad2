"""Linear spaces L(F) = Spec Sym F over a base and their homomorphisms.

A linear space has one coordinate per generator of its sheaf; a relation
column r of the sheaf becomes the linear form sum_i r_i Y_i.  A
homomorphism ``source -> target`` is stored as the substitution that
writes every target coordinate as a linear form in the source
coordinates; the associated sheaf map runs ``target.sheaf -> source.sheaf``.
"""

from __future__ import annotations

from typing import Sequence

from ..symkernel import Ideal, ModuleMap, Poly, PolyRing, PresentedModule, map_diagnostics


class NotAHomomorphism(ValueError):
    pass


class LinearSpace:
    def __init__(self, base_ring: PolyRing, base_ideal: Ideal | None, sheaf: PresentedModule,
                 coords: Sequence[str], twists: Sequence[int] | None = None):
        self.base_ring = base_ring
        self.base_ideal = base_ideal if base_ideal is not None else Ideal(base_ring, [])
        self.sheaf = sheaf
        self.coords = tuple(coords)
        if len(self.coords) != sheaf.n_generators:
            raise ValueError("need one coordinate per sheaf generator")
        clash = set(self.coords) & set(base_ring.variables)
        if clash:
            raise ValueError(f"coordinates clash with base variables: {sorted(clash)}")
        self.twists = tuple(twists) if twists is not None else (0,) * len(self.coords)
        if len(self.twists) != len(self.coords):
            raise ValueError("need one twist per coordinate")
        nb = base_ring.nvars
        self.ring = PolyRing(base_ring.variables + self.coords, "grevlex",
                             weights={"cone": (0,) * nb + (1,) * len(self.coords)})
        self.linear_relations = tuple(self._relation_form(r) for r in sheaf.relations)

    def _relation_form(self, col) -> Poly:
        acc = self.ring.zero()
        for p, y in zip(col, self.coords):
            if p:
                acc = acc + p.to(self.ring) * self.ring.var(y)
        return acc

    def __repr__(self):
        return f"LinearSpace(coords={list(self.coords)}, relations={len(self.linear_relations)})"

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_vector_bundle(self) -> bool:
        return not self.sheaf.relations

    def coord(self, name: str) -> Poly:
        return self.ring.var(name)

    def defining_gens(self):
        """Linear relations plus the base ideal, inside ``self.ring``."""
        return list(self.linear_relations) + [g.to(self.ring) for g in self.base_ideal.gens]

    def defining_ideal(self) -> Ideal:
        return Ideal(self.ring, self.defining_gens())

    def renamed(self, coords: Sequence[str]) -> "LinearSpace":
        return LinearSpace(self.base_ring, self.base_ideal, self.sheaf, coords, self.twists)

    def same_as(self, other: "LinearSpace") -> bool:
        return (self.coords == other.coords
                and self.base_ring.variables == other.base_ring.variables
                and self.defining_ideal().gb() == other.defining_ideal().in_ring(self.ring).gb())


def free_space(base_ring: PolyRing, coords: Sequence[str], base_ideal: Ideal | None = None,
               twists=None) -> LinearSpace:
    mod = PresentedModule.free(base_ring, len(coords), base_ideal)
    return LinearSpace(base_ring, base_ideal, mod, coords, twists)


def linspace_from_module(sheaf: PresentedModule, coords: Sequence[str] | None = None,
                         twists=None) -> LinearSpace:
    """L(sheaf) over ``sheaf.ring / sheaf.ideal`` with fresh coordinate names."""
    ring = sheaf.ring
    if coords is None:
        coords = fresh_coords(ring.variables, "Y", sheaf.n_generators)
    return LinearSpace(ring, sheaf.ideal, sheaf, coords, twists)


def fresh_coords(taken: Sequence[str], prefix: str, n: int):
    taken = set(taken)
    out = []
    k = 1
    while len(out) < n:
        name = f"{prefix}{k}"
        k += 1
        if name not in taken:
            out.append(name)
    return out


def direct_sum(a: LinearSpace, b: LinearSpace) -> LinearSpace:
    if set(a.coords) & set(b.coords):
        raise ValueError("direct summands must have disjoint coordinates")
    return LinearSpace(a.base_ring, a.base_ideal, a.sheaf.direct_sum(b.sheaf),
                       a.coords + b.coords, a.twists + b.twists)


class LinSpaceHom:
    """``matrix[i][j]``: coefficient of source coordinate j in target coordinate i."""

    def __init__(self, source: LinearSpace, target: LinearSpace, matrix, check: bool = True):
        if source.base_ring.variables != target.base_ring.variables:
            raise ValueError("homomorphism between linear spaces over different bases")
        self.source = source
        self.target = target
        base = source.base_ring
        self.matrix = tuple(tuple(base(p) for p in row) for row in matrix)
        if len(self.matrix) != target.rank or any(len(r) != source.rank for r in self.matrix):
            raise ValueError(f"matrix must be {target.rank} x {source.rank}")
        if source.base_ideal.gens:
            self.matrix = tuple(tuple(source.base_ideal.reduce(p) for p in row)
                                for row in self.matrix)
        if check:
            self.check()

    def __repr__(self):
        rows = [[str(p) for p in r] for r in self.matrix]
        return f"LinSpaceHom({list(self.source.coords)} -> {list(self.target.coords)}, {rows})"

    def check(self):
        rel = self.source.defining_ideal()
        for g in self.target.linear_relations:
            if not rel.contains(self.pullback(g)):
                raise NotAHomomorphism(f"relation {g} does not pull back into source relations")

    # substitution ---------------------------------------------------------------
    def images(self):
        """Target coordinate -> linear form in ``source.ring``."""
        ring = self.source.ring
        out = {}
        for name, row in zip(self.target.coords, self.matrix):
            acc = ring.zero()
            for p, y in zip(row, self.source.coords):
                if p:
                    acc = acc + p.to(ring) * ring.var(y)
            out[name] = acc
        return out

    def pullback(self, f: Poly) -> Poly:
        """Substitute into a polynomial of ``target.ring``; result in ``source.ring``."""
        f = self.target.ring(f)
        return f.subs(self.images(), self.source.ring)

    def pullback_ideal_gens(self, gens):
        return [self.pullback(g) for g in gens]

    def sheaf_map(self) -> ModuleMap:
        return ModuleMap(self.target.sheaf, self.source.sheaf, self.matrix, check=False)

    def is_epimorphism(self) -> bool:
        """Epimorphism of linear spaces: the sheaf-side map is injective."""
        return map_diagnostics(self.sheaf_map()).injective

    # algebra --------------------------------------------------------------------
    def compose(self, other: "LinSpaceHom") -> "LinSpaceHom":
        """``self o other``."""
        if other.target.coords != self.source.coords:
            raise ValueError("composition of non-composable homomorphisms")
        m = _matmul(self.matrix, other.matrix, self.source.base_ring)
        return LinSpaceHom(other.source, self.target, m, check=False)

    def __add__(self, other: "LinSpaceHom") -> "LinSpaceHom":
        if self.source.coords != other.source.coords or self.target.coords != other.target.coords:
            raise ValueError("sum of homomorphisms with different source or target")
        m = [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return LinSpaceHom(self.source, self.target, m, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinSpaceHom":
        base = self.source.base_ring
        m = [[p * base(c) for p in r] for r in self.matrix]
        return LinSpaceHom(self.source, self.target, m, check=False)

    def equals(self, other: "LinSpaceHom") -> bool:
        """Equality of homomorphisms modulo the source relations."""
        rel = self.source.defining_ideal()
        a, b = self.images(), other.images()
        return all(rel.contains(a[k] - b[k].to(self.source.ring)) for k in a)


def _matmul(a, b, ring: PolyRing):
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(n):
            acc = ring.zero()
            for k, p in enumerate(row):
                if p and b[k][j]:
                    acc = acc + p * b[k][j]
            r.append(acc)
        out.append(r)
    return out


def identity(space: LinearSpace) -> LinSpaceHom:
    z, o = space.base_ring.zero(), space.base_ring.one()
    n = space.rank
    return LinSpaceHom(space, space, [[o if i == j else z for j in range(n)] for i in range(n)],
                       check=False)


def zero_hom(source: LinearSpace, target: LinearSpace) -> LinSpaceHom:
    z = source.base_ring.zero()
    return LinSpaceHom(source, target, [[z] * source.rank for _ in range(target.rank)],
                       check=False)


def hstack(source: LinearSpace, *homs: LinSpaceHom) -> LinSpaceHom:
    """(f_1, ..., f_k) from a direct sum ``source`` whose summands are the f_i sources."""
    target = homs[0].target
    rows = [[] for _ in range(target.rank)]
    for h in homs:
        if h.target.coords != target.coords:
            raise ValueError("hstack needs a common target")
        for i, r in enumerate(h.matrix):
            rows[i].extend(r)
    return LinSpaceHom(source, target, rows, check=False)


def vstack(target: LinearSpace, *homs: LinSpaceHom) -> LinSpaceHom:
    """(f_1; ...; f_k) into a direct sum ``target`` of the f_i targets."""
    rows = []
    for h in homs:
        rows.extend(h.matrix)
    return LinSpaceHom(homs[0].source, target, rows, check=False)


def block_diag(source: LinearSpace, target: LinearSpace, *homs: LinSpaceHom) -> LinSpaceHom:
    z = source.base_ring.zero()
    rows = []
    col = 0
    for h in homs:
        for r in h.matrix:
            rows.append([z] * col + list(r) + [z] * (source.rank - col - len(r)))
        col += h.source.rank
    return LinSpaceHom(source, target, rows, check=False)
