"""Bigraded multidegrees by counting points of generic linear slices.

A subvariety Z of P^n x P^k is given by an ideal J in k[x_0..x_n, y_0..y_k]
which is homogeneous in the y-degree and in the weighted degree with x_i of
weight 1 and y_j of weight w_j.  With all w_j = 0 this is the usual
bihomogeneous setting; nonzero weights describe a projective bundle
P(O(w_0) + ... + O(w_k)) over P^n, and the second kind of slice is then a
form sum_j g_j(x) y_j with deg g_j = D - w_j, D = max w_j.

``m[a][b]`` counts the points of Z cut by ``a`` generic hyperplanes in x
and ``b`` generic forms of the second kind, for ``a + b = dim Z``.  The
count is taken on a generic affine chart, which also discards everything
supported on the irrelevant loci.  Slices are counted modulo the prime
2^31 - 1: the count is the length of a zero-dimensional scheme, which only
needs the leading-term ideal, and rational slices with random coefficients
swell badly.  Reducing mod p is one more generic choice, certified like the
others by agreement of two independent seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from ..symkernel import (Ideal, PolyRing, UnitIdealError, dimension_degree_mod, equal,
                        saturate)

PRIME = 2_147_483_647


class GenericityError(RuntimeError):
    """Two independent seeds kept disagreeing."""


class NotSaturated(ValueError):
    pass


class NotBihomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class MultidegreeConfig:
    seed: int = 0
    coeff_bound: int = 10_000
    retries: int = 3
    check_saturated: bool = True


@dataclass(frozen=True)
class Multidegree:
    n: int          # first factor P^n
    k: int          # second factor P^k
    dim: int
    matrix: tuple = field(repr=False)   # n+1 rows, zero off a + b = dim

    def __getitem__(self, a: int):
        return self.matrix[a]

    def entry(self, a: int, b: int) -> int:
        if 0 <= a <= self.n and 0 <= b < len(self.matrix[a]):
            return self.matrix[a][b]
        return 0

    def nonzero(self):
        return {(a, b): v for a, row in enumerate(self.matrix) for b, v in enumerate(row) if v}


def _check_homogeneous(J: Ideal, xs, ys, weights):
    ring = J.ring
    xi = [ring.index[v] for v in xs]
    yi = [ring.index[v] for v in ys]
    for g in J.gens:
        wdeg, ydeg = set(), set()
        for e in g.terms:
            ydeg.add(sum(e[i] for i in yi))
            wdeg.add(sum(e[i] for i in xi) + sum(w * e[i] for w, i in zip(weights, yi)))
        if len(wdeg) > 1 or len(ydeg) > 1:
            raise NotBihomogeneous(f"generator {g} is not bihomogeneous")


class _Slicer:
    """Affine-chart slices of one ideal for a fixed random stream."""

    def __init__(self, J: Ideal, xs, ys, weights, rng: random.Random, bound: int):
        self.xs, self.ys, self.weights = list(xs), list(ys), list(weights)
        self.D = max(self.weights)
        self.rng, self.bound = rng, bound
        src = J.ring
        others = [v for v in src.variables if v not in set(xs) | set(ys)]
        if others:
            raise ValueError(f"variables {others} belong to neither factor")
        # chart x_0 = 1 - sum r_i x_i, y_0 = 1 - sum c_j y_j
        self.ring = PolyRing(self.xs[1:] + self.ys[1:])
        R = self.ring
        images = {}
        images[self.xs[0]] = R.one() - sum((R.var(v) * self._c() for v in self.xs[1:]), R.zero())
        images[self.ys[0]] = R.one() - sum((R.var(v) * self._c() for v in self.ys[1:]), R.zero())
        for v in self.xs[1:] + self.ys[1:]:
            images[v] = R.var(v)
        self.images = images
        self.base = [g.subs(images, R) for g in J.gens]
        self.base = [g for g in self.base if g]

    def _c(self):
        return self.rng.randint(-self.bound, self.bound)

    def _form(self, deg: int):
        """Random homogeneous form of degree ``deg`` in x, on the chart."""
        R = self.ring
        xs = [self.images[v] for v in self.xs]
        out = R.zero()
        for mono in combinations_with_replacement(range(len(xs)), deg):
            term = R.const(self._c())
            for i in mono:
                term = term * xs[i]
            out = out + term
        return out

    def hyperplane(self):
        return self._form(1)

    def fibre_form(self):
        R = self.ring
        out = R.zero()
        for y, w in zip(self.ys, self.weights):
            out = out + self._form(self.D - w) * self.images[y]
        return out

    def dimension(self) -> int:
        try:
            return dimension_degree_mod(self.base, self.ring, PRIME)[0]
        except UnitIdealError:
            return -1

    def count(self, a: int, b: int):
        gens = list(self.base)
        gens += [self.hyperplane() for _ in range(a)]
        gens += [self.fibre_form() for _ in range(b)]
        try:
            dim, deg = dimension_degree_mod(gens, self.ring, PRIME)
        except UnitIdealError:
            return 0
        return deg if dim == 0 else None


def _attempt(J, xs, ys, weights, seed, bound):
    rng = random.Random(seed)
    sl = _Slicer(J, xs, ys, weights, rng, bound)
    dim = sl.dimension()
    n, k = len(xs) - 1, len(ys) - 1
    # with unequal weights the fibre class is not pulled back from P^k, so
    # b may exceed k
    bmax = k if len(set(weights)) <= 1 else max(k, dim)
    mat = [[0] * (bmax + 1) for _ in range(n + 1)]
    if dim < 0:
        return dim, mat
    for a in range(max(0, dim - bmax), min(n, dim) + 1):
        b = dim - a
        c = sl.count(a, b)
        if c is None:
            return None
        mat[a][b] = c
    return dim, mat


def multidegree(J: Ideal, x_vars: Sequence[str], y_vars: Sequence[str],
                y_weights: Sequence[int] | None = None,
                config: MultidegreeConfig | None = None) -> Multidegree:
    """Multidegree of V(J) in P^n x P^k, certified by two independent seeds."""
    cfg = config or MultidegreeConfig()
    weights = list(y_weights) if y_weights is not None else [0] * len(y_vars)
    if len(weights) != len(y_vars):
        raise ValueError("one weight per fibre variable")
    _check_homogeneous(J, x_vars, y_vars, weights)
    if cfg.check_saturated:
        ring = J.ring
        for vs in (x_vars, y_vars):
            irr = Ideal(ring, [ring.var(v) for v in vs])
            if not equal(saturate(J, irr), J):
                raise NotSaturated(f"ideal is not saturated with respect to <{', '.join(vs)}>")
    seed = cfg.seed
    for attempt in range(cfg.retries + 1):
        s1 = f"{seed}:{attempt}:a"
        s2 = f"{seed}:{attempt}:b"
        r1 = _attempt(J, x_vars, y_vars, weights, s1, cfg.coeff_bound)
        r2 = _attempt(J, x_vars, y_vars, weights, s2, cfg.coeff_bound)
        if r1 is not None and r1 == r2:
            dim, mat = r1
            return Multidegree(len(x_vars) - 1, len(y_vars) - 1, dim,
                               tuple(tuple(r) for r in mat))
    raise GenericityError(f"genericity failure: seeds disagreed after {cfg.retries} retries")
