"""Dimension and degree through the leading-term monomial ideal."""

from __future__ import annotations

from itertools import combinations

from .ideal import Ideal


class UnitIdealError(ValueError):
    pass


def minimalize(monos):
    monos = sorted(set(tuple(m) for m in monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def monomial_dimension(monos, nvars: int) -> int:
    """Krull dimension of k[x]/<monos>: the largest independent variable set.

    A set S is independent when no generator is supported inside S.
    """
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in minimalize(monos)]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def _poly_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in out.items() if c}


def hilbert_numerator(monos, degrees) -> dict:
    """K-polynomial of k[x]/<monos> for a multigrading.

    ``degrees[i]`` is the degree vector of variable i; the Hilbert series
    is ``K(t) / prod_i (1 - t^deg_i)``.  Returned as ``{exponent: int}``.
    Recursion: K(I + <m>) = K(I) - t^deg(m) K(I : m).
    """
    ngr = len(degrees[0]) if degrees else 1
    zero = (0,) * ngr

    def deg(m):
        return tuple(sum(a * d[g] for a, d in zip(m, degrees)) for g in range(ngr))

    cache = {}

    def rec(gens):
        gens = tuple(minimalize(gens))
        if gens in cache:
            return cache[gens]
        if not gens:
            res = {zero: 1}
        elif all(not any(a and b for a, b in zip(g, h))
                 for g, h in combinations(gens, 2)):
            res = {zero: 1}
            for g in gens:
                res = _poly_mul(res, {zero: 1, deg(g): -1})
        else:
            # pivot on the last generator
            *rest, m = sorted(gens, key=lambda g: (sum(g), g))
            colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
            res = _poly_sub(rec(tuple(rest)), _poly_mul({deg(m): 1}, rec(tuple(colon))))
        cache[gens] = res
        return res

    return rec(tuple(monos))


def dimension_degree(ideal: Ideal):
    """(Krull dimension of R/I, degree) from the grevlex leading-term ideal.

    The degree is the Hilbert numerator h(t) = K(t) / (1-t)^(n-dim) at
    t = 1; for a non-homogeneous ideal this is the degree of the affine
    Hilbert polynomial (grevlex is degree-compatible).
    """
    ring = ideal.ring
    gb = ideal.in_ring(ring.with_order("grevlex")).gb()
    if len(gb) == 1 and gb[0].is_constant():
        raise UnitIdealError("dimension of the unit ideal is undefined")
    return monomial_dimension_degree([g.lm() for g in gb], ring.nvars)


def monomial_dimension_degree(monos, n: int):
    """(dimension, degree) of k[x_1..x_n] / (monos)."""
    if any(not any(m) for m in monos):
        raise UnitIdealError("dimension of the unit ideal is undefined")
    dim = monomial_dimension(monos, n)
    num = hilbert_numerator(monos, [(1,)] * n)
    coeffs = [0] * (max((e[0] for e in num), default=0) + 1)
    for e, c in num.items():
        coeffs[e[0]] += c
    # divide by (1 - t) exactly n - dim times
    for _ in range(n - dim):
        q = []
        acc = 0
        for c in coeffs:
            acc += c
            q.append(acc)
        if q[-1] != 0:
            raise ArithmeticError("Hilbert numerator not divisible by (1-t)")
        coeffs = q[:-1]
    return dim, sum(coeffs)


def dimension_degree_mod(gens, ring, p: int):
    """:func:`dimension_degree` of the ideal generated by ``gens`` reduced mod p."""
    from . import groebner as _gb
    order = ring.with_order("grevlex").order
    gb = _gb.groebner([g.keyed(order) for g in gens if g], order, modulus=p)
    if not gb:
        return ring.nvars, 1
    return monomial_dimension_degree([order.decode(max(g)) for g in gb], ring.nvars)
