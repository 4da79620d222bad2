"""Ideals, reduced Groebner bases and the ideal-theoretic operations."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import groebner as _gb
from .orders import make_order
from .poly import Poly, PolyRing, RingMap, RingMismatch

SATURATION_CAP = 50


class SaturationCapExceeded(RuntimeError):
    pass


class Ideal:
    """Generators in a ring; reduced Groebner bases are cached per order."""

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) for x in gens) if g)
        self._gb_cache = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def in_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to(ring) for g in self.gens])

    def gb(self, ring: PolyRing | None = None, pair_limit: int = _gb.DEFAULT_PAIR_LIMIT):
        """Reduced Groebner basis (tuple of monic Poly) under ``ring``'s order."""
        ring = ring or self.ring
        if ring.variables != self.ring.variables:
            raise RingMismatch("Groebner basis must be taken over the same variables")
        sig = ring.order
        if sig not in self._gb_cache:
            polys = [g.keyed(ring.order) for g in self.gens]
            out = _gb.groebner(polys, ring.order, pair_limit)
            self._gb_cache[sig] = tuple(Poly.from_keyed(ring, d) for d in out)
        return self._gb_cache[sig]

    def keyed_basis(self):
        order = self.ring.order
        key = ("keyed", order)
        if key not in self._gb_cache:
            basis = [p.keyed(order) for p in self.gb()]
            self._gb_cache[key] = [(max(d), d) for d in basis]
        return self._gb_cache[key]

    def reduce(self, f: Poly) -> Poly:
        f = self.ring(f)
        order = self.ring.order
        return Poly.from_keyed(self.ring, _gb.reduce(f.keyed(order), self.keyed_basis(), order))

    def contains(self, f) -> bool:
        return not self.reduce(f)

    def is_unit(self) -> bool:
        g = self.gb()
        return len(g) == 1 and g[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self, grading: str | None = None) -> bool:
        return all(g.is_homogeneous(grading) for g in self.gens)

    def leading_monomials(self):
        return [g.lm() for g in self.gb()]


# --------------------------------------------------------------------------
# Groebner basis entry point

def buchberger(ideal: Ideal, order: str = "grevlex", block: Sequence[str] = ()):
    """Reduced Groebner basis of ``ideal`` under ``order`` (a tuple of Poly)."""
    ring = ideal.ring.with_order(order, block)
    return ideal.in_ring(ring).gb()


def _same_vars(*ideals):
    v = ideals[0].ring.variables
    for i in ideals[1:]:
        if i.ring.variables != v:
            raise RingMismatch(f"{ideals[0].ring} vs {i.ring}")


# --------------------------------------------------------------------------
# elementary operations

def membership(f: Poly, ideal: Ideal) -> bool:
    return ideal.contains(f)


def equal(a: Ideal, b: Ideal) -> bool:
    _same_vars(a, b)
    if a.ring != b.ring:
        b = b.in_ring(a.ring)
    return a.gb() == b.gb()


def contained(a: Ideal, b: Ideal) -> bool:
    """``a`` is a subset of ``b``."""
    _same_vars(a, b)
    return all(b.contains(g.to(b.ring)) for g in a.gens)


def ideal_sum(*ideals: Ideal) -> Ideal:
    _same_vars(*ideals)
    r = ideals[0].ring
    return Ideal(r, [g.to(r) for i in ideals for g in i.gens])


def product(a: Ideal, b: Ideal) -> Ideal:
    _same_vars(a, b)
    return Ideal(a.ring, [f * g.to(a.ring) for f in a.gens for g in b.gens])


def power(a: Ideal, n: int) -> Ideal:
    if n == 0:
        return Ideal(a.ring, [a.ring.one()])
    out = a
    for _ in range(n - 1):
        out = Ideal(a.ring, product(out, a).gb())
    return out



def minimal_generators(ideal: Ideal) -> tuple:
    """A generating set drawn from the reduced basis, dropping redundant elements.

    Elements are visited by increasing degree; for a homogeneous ideal the
    result is a minimal homogeneous generating set.
    """
    gb = sorted(ideal.gb(), key=lambda g: (g.degree(), ideal.ring.order.encode(g.lm())))
    kept = []
    for g in gb:
        if not kept or not Ideal(ideal.ring, kept).contains(g):
            kept.append(g)
    return tuple(kept)

def _fresh(ring: PolyRing, base: str) -> str:
    name = base
    k = 0
    while name in ring.index:
        k += 1
        name = f"{base}{k}"
    return name


def eliminate(ideal: Ideal, names: Sequence[str]) -> Ideal:
    """Intersection with the subring on the variables not in ``names``."""
    ring = ideal.ring
    bad = [n for n in names if n not in ring.index]
    if bad:
        raise ValueError(f"elimination block not declared in ring: {bad}")
    if not names:
        return ideal
    er = ring.with_order("elim", names)
    gb = ideal.in_ring(er).gb()
    keep = [v for v in ring.variables if v not in set(names)]
    sub = PolyRing(keep, "grevlex", weights=_restrict_weights(ring, keep))
    drop = {ring.index[n] for n in names}
    out = [g.to(sub) for g in gb if not any(e[i] for e in g.terms for i in drop)]
    return Ideal(sub, out)


def _restrict_weights(ring: PolyRing, keep):
    idx = [ring.index[v] for v in keep]
    return {k: tuple(w[i] for i in idx) for k, w in ring.weights.items()}


def intersect(*ideals: Ideal) -> Ideal:
    _same_vars(*ideals)
    ring = ideals[0].ring
    cur = ideals[0]
    for nxt in ideals[1:]:
        if cur.is_unit():
            cur = nxt
            continue
        if nxt.is_unit():
            continue
        t = _fresh(ring, "_t")
        big = ring.extend((t,))
        tv = big.var(t)
        gens = [tv * g.to(big) for g in cur.gens] + [(1 - tv) * g.to(big) for g in nxt.gens]
        el = eliminate(Ideal(big, gens), [t])
        cur = Ideal(ring, [g.to(ring) for g in el.gens])
    return Ideal(ring, cur.gb())


def _bayer_weight(ideal: Ideal, var: str):
    """A weight vector making ``ideal`` homogeneous with positive weight on ``var``."""
    ring = ideal.ring
    cands = [tuple([1] * ring.nvars)] + list(ring.weights.values())
    i = ring.index[var]
    for w in cands:
        if w[i] > 0 and all(len({sum(a * b for a, b in zip(w, e)) for e in g.terms}) <= 1
                            for g in ideal.gens):
            return w
    return None


def _var_name(f: Poly):
    if len(f.terms) == 1:
        (e, c), = f.terms.items()
        if c == 1 and sum(e) == 1:
            return f.ring.variables[e.index(1)]
    return None


def quotient_by_poly(ideal: Ideal, f: Poly) -> Ideal:
    ring = ideal.ring
    f = ring(f)
    if not f:
        return Ideal(ring, [ring.one()])
    v = _var_name(f)
    if v is not None:
        w = _bayer_weight(ideal, v)
        if w is not None:
            o = make_order(ring.nvars, "wrevlex", weights=w, last=ring.index[v])
            polys = [g.keyed(o) for g in ideal.gens]
            gb = _gb.groebner(polys, o)
            i = ring.index[v]
            out = []
            for d in gb:
                g = Poly(ring, {o.decode(k): c for k, c in d.items()})
                if all(e[i] for e in g.terms):
                    ex = [0] * ring.nvars
                    ex[i] = -1
                    g = g.mul_monomial(ex)
                out.append(g)
            return Ideal(ring, Ideal(ring, out).gb())
    inter = intersect(ideal, Ideal(ring, [f]))
    out = []
    for g in inter.gb():
        q = _exact_div(g, f)
        out.append(q)
    return Ideal(ring, Ideal(ring, out).gb())


def _exact_div(g: Poly, f: Poly) -> Poly:
    ring = g.ring
    order = ring.order
    fk = f.monic().keyed(order)
    lm = max(fk)
    rem = g.keyed(order)
    quo = {}
    while rem:
        lt = max(rem)
        if not order.divides(lm, lt):
            raise ArithmeticError("inexact division")
        c = rem[lt]
        delta = lt - lm
        quo[delta + order.const] = c
        for k, cf in fk.items():
            nk = k + delta
            v = rem.get(nk, 0) - c * cf
            if v:
                rem[nk] = v
            else:
                rem.pop(nk, None)
    q = Poly.from_keyed(ring, quo)
    return q.scale(1 / f.lc())


def quotient(ideal: Ideal, other: Ideal) -> Ideal:
    """``ideal : other``."""
    _same_vars(ideal, other)
    ring = ideal.ring
    parts = [quotient_by_poly(ideal, g.to(ring)) for g in other.gens]
    if not parts:
        return Ideal(ring, [ring.one()])
    return intersect(*parts)


def saturate(ideal: Ideal, other: Ideal, cap: int = SATURATION_CAP) -> Ideal:
    """``ideal : other^infinity`` by iterated quotients until the GB is stable."""
    cur = Ideal(ideal.ring, ideal.gb())
    for _ in range(cap):
        nxt = quotient(cur, other)
        if nxt.gb() == cur.gb():
            return cur
        cur = nxt
    raise SaturationCapExceeded(f"saturation did not stabilize within {cap} quotients")


def preimage(phi: RingMap, ideal: Ideal) -> Ideal:
    """``phi^{-1}(ideal)`` via the graph ideal and elimination.

    Source variables that share a name with a target variable and are sent
    to that variable are kept as common coordinates rather than renamed.
    """
    src, tgt = phi.source, phi.target
    if ideal.ring.variables != tgt.variables:
        raise RingMismatch("ideal does not live in the target ring")
    shared = [v for v, img in zip(src.variables, phi.images)
              if v in tgt.index and img == tgt.var(v)]
    rename = {}
    for v in src.variables:
        if v in shared:
            continue
        name = v
        while name in tgt.index or name in rename.values():
            name = "_" + name
        rename[v] = name
    new = [rename[v] for v in src.variables if v not in shared]
    big = tgt.extend(new)
    gens = [g.to(big) for g in ideal.gens]
    for v, img in zip(src.variables, phi.images):
        if v in shared:
            continue
        gens.append(big.var(rename[v]) - img.to(big))
    drop = [v for v in tgt.variables if v not in shared]
    el = eliminate(Ideal(big, gens), drop)
    back = {rename[v]: v for v in rename}
    return Ideal(src, [g.to(src, back) for g in el.gens])


def ideal_ops(kind: str, *args, **kw):
    """Dispatcher over the named ideal operations."""
    table = {
        "membership": membership,
        "equal": equal,
        "sum": ideal_sum,
        "product": product,
        "power": power,
        "quotient": quotient,
        "saturate": saturate,
        "eliminate": eliminate,
        "preimage": preimage,
        "intersect": intersect,
    }
    if kind not in table:
        raise ValueError(f"unknown ideal operation {kind!r}")
    return table[kind](*args, **kw)
