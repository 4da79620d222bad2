"""Seeded random complexes, squares and E-cones for the law suites.

Squares are composites of a few basic kinds, each with known cohomology:

* ``iso``      unimodular change of coordinates (quasi-isomorphism)
* ``iota``     (Id, inclusion) into X1 + N (applicable, H^-1 not injective)
* ``contract`` inclusion of X + [P -id-> P] (quasi-isomorphism)
* ``project``  projection X + [P -id-> P] -> X (quasi-isomorphism)
* ``scalar``   multiplication by a base polynomial (generic square)
* ``dropsum``  projection X + W -> X for a random complex W (generic square)
* ``zero``     the zero square into a random complex (generic square)

and every composite may be perturbed by a random homotopy, which changes
nothing up to homotopy.  E-cones are generated by polynomials in linear
forms killed by the differential, so invariance holds by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from ..symkernel import Ideal, PolyRing, PresentedModule, syzygies
from .complexes import ComplexSquare, TwoTermComplex
from .cones import Cone
from .spaces import LinSpaceHom, LinearSpace, _matmul, direct_sum

QUASI_ISO_KINDS = ("iso", "contract", "project")
APPLICABLE_KINDS = QUASI_ISO_KINDS + ("iota",)
GENERIC_KINDS = APPLICABLE_KINDS + ("scalar", "dropsum", "zero")


@dataclass
class Flags:
    """Cohomology behaviour of a square known from its construction."""

    h0_iso: bool | None
    hm1_surj: bool | None
    hm1_inj: bool | None

    @property
    def applicable(self):
        return bool(self.h0_iso and self.hm1_surj)

    def then(self, other: "Flags") -> "Flags":
        def both(a, b):
            return True if (a and b) else None
        return Flags(both(self.h0_iso, other.h0_iso), both(self.hm1_surj, other.hm1_surj),
                     both(self.hm1_inj, other.hm1_inj))


QUASI = Flags(True, True, True)
UNKNOWN = Flags(None, None, None)


class InstanceGenerator:
    def __init__(self, seed: int, max_rank: int = 3, max_base_vars: int = 2):
        self.rng = random.Random(seed)
        self.max_rank = max_rank
        nb = self.rng.randint(1, max_base_vars)
        self.base = PolyRing(("s", "t")[:nb] if nb == 2 else ("t",))
        self.base_ideal = Ideal(self.base, [])
        self._counter = 0

    # primitive pieces ---------------------------------------------------------
    def fresh(self, n: int, prefix: str = "c"):
        out = []
        for _ in range(n):
            self._counter += 1
            out.append(f"{prefix}{self._counter}")
        return out

    def entry(self, density: float = 0.6, degree: int = 1):
        """Random base polynomial of degree <= ``degree`` with small integers."""
        r = self.rng
        if r.random() > density:
            return self.base.zero()
        acc = self.base.zero()
        monos = [self.base.one()] + self.base.gens() if degree >= 1 else [self.base.one()]
        for m in monos:
            if r.random() < 0.5:
                acc = acc + m * r.choice((-2, -1, 1, 2))
        return acc

    def linear_form(self):
        r = self.rng
        acc = self.base.zero()
        while not acc:
            acc = sum((g * r.choice((-1, 1, 2)) for g in self.base.gens() if r.random() < 0.7),
                      self.base.zero())
        if r.random() < 0.3:
            acc = acc + r.choice((-1, 1))
        return acc

    def space(self, n_free: int, torsion: int = 0) -> LinearSpace:
        n = n_free + torsion
        z = self.base.zero()
        rels = []
        for k in range(torsion):
            col = [z] * n
            col[n_free + k] = self.linear_form()
            rels.append(tuple(col))
        sheaf = PresentedModule(self.base, n, tuple(rels), self.base_ideal)
        return LinearSpace(self.base, self.base_ideal, sheaf, self.fresh(n))

    def hom(self, source: LinearSpace, target: LinearSpace, density=0.6) -> LinSpaceHom:
        """Random homomorphism; rows of torsion coordinates of a free source vanish."""
        z = self.base.zero()
        rows = []
        torsion_rows = {i for r in target.sheaf.relations for i, p in enumerate(r) if p}
        for i in range(target.rank):
            if i in torsion_rows and source.is_vector_bundle:
                rows.append([z] * source.rank)
            else:
                rows.append([self.entry(density) for _ in range(source.rank)])
        return LinSpaceHom(source, target, rows)

    def complex(self, r0=None, r1=None, torsion=None) -> TwoTermComplex:
        r = self.rng
        r0 = r.randint(1, self.max_rank) if r0 is None else r0
        if torsion is None:
            torsion = 1 if r.random() < 0.25 else 0
        r1 = r.randint(max(1, torsion), self.max_rank) if r1 is None else r1
        E0 = self.space(r0)
        E1 = self.space(r1 - torsion, torsion)
        return TwoTermComplex(E0, E1, self.hom(E0, E1))

    def homotopy(self, square: ComplexSquare) -> LinSpaceHom:
        """Random K: F1 -> E0 with constant and linear entries."""
        F1 = square.source_complex.E1
        E0 = square.target_complex.E0
        return self.hom(F1, E0, density=0.5)

    # cones ----------------------------------------------------------------------
    def invariant_forms(self, cx: TwoTermComplex):
        rows = [tuple(r) for r in cx.D.matrix]
        if cx.E0.rank == 0:
            rows = [()] * cx.E1.rank
        syz = syzygies(self.base, rows, cx.E0.rank, cx.E0.sheaf.relations, self.base_ideal)
        ring = cx.E1.ring
        forms = []
        for v in syz:
            f = ring.zero()
            for p, y in zip(v, cx.E1.coords):
                if p:
                    f = f + p.to(ring) * ring.var(y)
            if f and f not in cx.E1.defining_ideal().gens:
                forms.append(f)
        return forms

    def econe(self, cx: TwoTermComplex) -> Cone:
        """A random E0-cone in E1 built from invariant linear forms."""
        r = self.rng
        ring = cx.E1.ring
        forms = self.invariant_forms(cx)
        # syzygy modules can produce bulky forms; products of those make
        # instances that test nothing extra and take minutes to check
        forms = [f for f in forms if len(f.terms) <= 6 and f.degree() <= 3]
        gens = []
        if forms:
            for _ in range(r.randint(1, 2)):
                a = r.choice(forms)
                kind = r.random()
                if kind < 0.35:
                    gens.append(a * self.entry(0.9).to(ring) if r.random() < 0.4 else a)
                elif kind < 0.8:
                    b = r.choice(forms)
                    gens.append(a * b)
                else:
                    b = r.choice(forms)
                    gens.append(a * a + b * self.entry(0.9).to(ring) * a)
        if r.random() < 0.1:
            gens.append(self.linear_form().to(ring))
        gens = [g for g in gens if g]
        return Cone(cx.E1, gens)

    # squares --------------------------------------------------------------------
    def _unimodular(self, n: int):
        r = self.rng
        z, o = self.base.zero(), self.base.one()
        P = [[o if i == j else z for j in range(n)] for i in range(n)]
        Pinv = [row[:] for row in P]
        for _ in range(r.randint(0, 2) if n > 1 else 0):
            i, j = r.sample(range(n), 2)
            c = r.choice((self.base.one(),) + tuple(self.base.gens())) * r.choice((-1, 1, 2))
            # P <- (I + c e_ij) P ;  Pinv <- Pinv (I - c e_ij)
            P[i] = [a + c * b for a, b in zip(P[i], P[j])]
            for row in Pinv:
                row[j] = row[j] - c * row[i]
        if n and r.random() < 0.5:
            i = r.randrange(n)
            s = r.choice((-1, 2))
            P[i] = [a * s for a in P[i]]
            for row in Pinv:
                row[i] = row[i].scale(mpq(1, s))
        return P, Pinv

    def _iso(self, X: TwoTermComplex):
        r0, r1 = X.E0.rank, X.E1.rank
        tors = {i for rel in X.E1.sheaf.relations for i, p in enumerate(rel) if p}
        free_idx = [i for i in range(r1) if i not in tors]
        P0, P0i = self._unimodular(r0)
        Pf, Pfi = self._unimodular(len(free_idx))
        z, o = self.base.zero(), self.base.one()
        P1 = [[o if i == j else z for j in range(r1)] for i in range(r1)]
        for a, i in enumerate(free_idx):
            for b, j in enumerate(free_idx):
                P1[i][j] = Pf[a][b]
        Y0 = LinearSpace(self.base, self.base_ideal, X.E0.sheaf, self.fresh(r0))
        Y1 = LinearSpace(self.base, self.base_ideal, X.E1.sheaf, self.fresh(r1))
        DY = _matmul(_matmul(P1, X.D.matrix, self.base), P0i, self.base)
        Y = TwoTermComplex(Y0, Y1, LinSpaceHom(Y0, Y1, DY))
        sq = ComplexSquare(X, Y, LinSpaceHom(X.E0, Y0, P0), LinSpaceHom(X.E1, Y1, P1))
        return sq, QUASI

    def _iota(self, X: TwoTermComplex):
        Y0 = X.E0.renamed(self.fresh(X.E0.rank))
        N = self.space(self.rng.randint(1, 2))
        X1c = X.E1.renamed(self.fresh(X.E1.rank))
        Y1 = direct_sum(X1c, N)
        z, o = self.base.zero(), self.base.one()
        idm = lambda n: [[o if i == j else z for j in range(n)] for i in range(n)]
        DY = [list(r) for r in X.D.matrix] + [[z] * X.E0.rank for _ in range(N.rank)]
        Y = TwoTermComplex(Y0, Y1, LinSpaceHom(Y0, Y1, DY))
        phi1 = idm(X.E1.rank) + [[z] * X.E1.rank for _ in range(N.rank)]
        sq = ComplexSquare(X, Y, LinSpaceHom(X.E0, Y0, idm(X.E0.rank)),
                           LinSpaceHom(X.E1, Y1, phi1))
        return sq, Flags(True, True, False)

    def _contractible(self, X: TwoTermComplex):
        p = self.rng.randint(1, 2)
        z, o = self.base.zero(), self.base.one()
        P0 = self.space(p)
        P1 = self.space(p)
        Y0 = direct_sum(X.E0.renamed(self.fresh(X.E0.rank)), P0)
        Y1 = direct_sum(X.E1.renamed(self.fresh(X.E1.rank)), P1)
        r0 = X.E0.rank
        DY = [list(row) + [z] * p for row in X.D.matrix]
        DY += [[z] * r0 + [o if i == j else z for j in range(p)] for i in range(p)]
        Y = TwoTermComplex(Y0, Y1, LinSpaceHom(Y0, Y1, DY))
        return Y, p

    def _contract(self, X: TwoTermComplex):
        Y, p = self._contractible(X)
        z, o = self.base.zero(), self.base.one()
        r0, r1 = X.E0.rank, X.E1.rank
        inc0 = [[o if i == j else z for j in range(r0)] for i in range(r0)] + [[z] * r0] * p
        inc1 = [[o if i == j else z for j in range(r1)] for i in range(r1)] + [[z] * r1] * p
        sq = ComplexSquare(X, Y, LinSpaceHom(X.E0, Y.E0, inc0), LinSpaceHom(X.E1, Y.E1, inc1))
        return sq, QUASI

    def _scalar(self, X: TwoTermComplex):
        c = self.entry(1.0)
        Y0 = X.E0.renamed(self.fresh(X.E0.rank))
        Y1 = X.E1.renamed(self.fresh(X.E1.rank))
        Y = TwoTermComplex(Y0, Y1, LinSpaceHom(Y0, Y1, X.D.matrix))
        z = self.base.zero()
        d0 = [[c if i == j else z for j in range(X.E0.rank)] for i in range(X.E0.rank)]
        d1 = [[c if i == j else z for j in range(X.E1.rank)] for i in range(X.E1.rank)]
        sq = ComplexSquare(X, Y, LinSpaceHom(X.E0, Y0, d0), LinSpaceHom(X.E1, Y1, d1))
        return sq, UNKNOWN

    def _zero(self, X: TwoTermComplex):
        Y = self.complex()
        z = self.base.zero()
        sq = ComplexSquare(X, Y, LinSpaceHom(X.E0, Y.E0, [[z] * X.E0.rank] * Y.E0.rank),
                           LinSpaceHom(X.E1, Y.E1, [[z] * X.E1.rank] * Y.E1.rank))
        return sq, UNKNOWN

    def step(self, X: TwoTermComplex, kinds):
        kind = self.rng.choice([k for k in kinds if k not in ("project", "dropsum")])
        return getattr(self, "_" + kind)(X)

    def _split_source(self, X: TwoTermComplex, kind: str):
        """A source S = X + extra together with the projection square S -> X."""
        z, o = self.base.zero(), self.base.one()
        if kind == "project":
            S, p = self._contractible(X)
            extra0 = extra1 = p
            flags = QUASI
        else:
            W = self.complex(r0=self.rng.randint(1, 2), r1=self.rng.randint(1, 2), torsion=0)
            S0 = direct_sum(X.E0.renamed(self.fresh(X.E0.rank)), W.E0)
            S1 = direct_sum(X.E1.renamed(self.fresh(X.E1.rank)), W.E1)
            r0, r1 = X.E0.rank, X.E1.rank
            DS = [list(row) + [z] * W.E0.rank for row in X.D.matrix]
            DS += [[z] * r0 + list(row) for row in W.D.matrix]
            S = TwoTermComplex(S0, S1, LinSpaceHom(S0, S1, DS))
            extra0, extra1 = W.E0.rank, W.E1.rank
            flags = UNKNOWN
        r0, r1 = X.E0.rank, X.E1.rank
        pr0 = [[o if i == j else z for j in range(r0 + extra0)] for i in range(r0)]
        pr1 = [[o if i == j else z for j in range(r1 + extra1)] for i in range(r1)]
        sq = ComplexSquare(S, X, LinSpaceHom(S.E0, X.E0, pr0), LinSpaceHom(S.E1, X.E1, pr1))
        return sq, flags

    def square(self, kinds=GENERIC_KINDS, source: TwoTermComplex | None = None,
               steps: int | None = None, perturb: bool = True):
        """A random composite square with known flags; ``source`` fixes F."""
        r = self.rng
        X = source if source is not None else self.complex()
        steps = r.randint(1, 2) if steps is None else steps
        sq, flags = None, None
        for k in range(steps):
            split = [s for s in ("project", "dropsum") if s in kinds]
            if k == 0 and source is None and split and r.random() < 0.3:
                inner, f = self._split_source(X, r.choice(split))
            else:
                inner, f = self.step(X, kinds)
            sq = inner if sq is None else inner.compose(sq)
            flags = f if flags is None else flags.then(f)
            X = inner.target_complex
        if perturb and r.random() < 0.5:
            sq = sq.homotopic(self.homotopy(sq))
        return sq, flags
