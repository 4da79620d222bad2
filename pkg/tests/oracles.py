"""Independent reference computations for the Segre pipeline.

The library counts points of random slices mod p on an affine chart.  Here
the same numbers come from exact K-polynomials of leading-term ideals, and
twisted cones are handled by the line-bundle twist formula for Segre
classes instead of weighted slicing.  Only cones whose ambient twists are
all equal are covered.
"""

from __future__ import annotations

from math import comb

from gmpy2 import mpq

from conecalc.chowcalc import ChowClass
from conecalc.symkernel import hilbert_numerator


def _binom(a: int, b: int) -> int:
    """Generalized binomial coefficient, upper index possibly negative."""
    if b < 0:
        return 0
    if a >= 0:
        return comb(a, b)
    return (-1) ** b * comb(b - a - 1, b)


def _expand_shifted(K: dict) -> dict:
    """K(1 - a1, 1 - a2) as a dict (i, j) -> coefficient."""
    out = {}
    for (p, q), c in K.items():
        for i in range(p + 1):
            for j in range(q + 1):
                v = c * comb(p, i) * comb(q, j) * (-1) ** (i + j)
                out[(i, j)] = out.get((i, j), 0) + v
    return {k: v for k, v in out.items() if v}


def bigraded_class(lead_monos, n_x: int, n_y: int) -> dict:
    """Multidegree {(i, j): m} of a bihomogeneous ideal from its leading monomials.

    ``m`` is the coefficient of H1^i H2^j in the class of the subvariety of
    P^(n_x - 1) x P^(n_y - 1).
    """
    degrees = [(1, 0)] * n_x + [(0, 1)] * n_y
    K = hilbert_numerator(lead_monos, degrees)
    shifted = _expand_shifted(K)
    low = min(i + j for i, j in shifted)
    return {k: v for k, v in shifted.items() if sum(k) == low}


def segre_untwisted(cone) -> ChowClass:
    """s(C) for a cone whose ideal is bihomogeneous in the standard sense.

    P(C + 1) sits in P^n x P^k (one extra fibre coordinate with no
    equations), and s(C)_m = deg(h^m xi^(delta - m) [P(C + 1)]).
    """
    amb = cone.ambient
    base = amb.base_ring
    nb, ny = base.nvars, len(amb.coords)
    monos = [g.lm() for g in cone.ideal.gb()]
    # the extra coordinate T does not occur; pad the exponent vectors
    monos = [m + (0,) for m in monos]
    cls = bigraded_class(monos, nb, ny + 1)
    n, k = nb - 1, ny
    codim = sum(next(iter(cls)))
    delta = n + k - codim
    coeffs = []
    for m in range(n + 1):
        # h^m xi^(delta - m) [Z] picks the coefficient of H1^(n - m) H2^(k - delta + m)
        coeffs.append(cls.get((n - m, k - delta + m), 0))
    return ChowClass(n, coeffs), delta


def twist(s_prime: ChowClass, delta: int, D: int) -> ChowClass:
    """s(C) from s(C'), C' = C (x) O(-D), C of dimension delta.

    s(C)_m = sum_{k >= m} binom(delta - 1 - m, k - m) (-D)^(k - m) s(C')_k.
    """
    n = s_prime.ambient_dim
    out = []
    for m in range(n + 1):
        v = mpq(0)
        for k in range(m, n + 1):
            v += _binom(delta - 1 - m, k - m) * (-D) ** (k - m) * s_prime[k]
        out.append(v)
    return ChowClass(n, out)


def segre_oracle(cone) -> ChowClass:
    twists = set(cone.ambient.twists)
    if len(twists) > 1:
        raise ValueError("oracle covers cones with one common twist only")
    D = twists.pop() if twists else 0
    s_prime, delta = segre_untwisted(cone)
    return twist(s_prime, delta, D) if D else s_prime


# Values derived by hand, frozen for the tests
FAT_POINT_SEGRE_DEGREE = 4          # blowup of (x, y)^2: s = -eta_*(E'^2), E' = 2E
CUBE_POINT_SEGRE_DEGREE = 9         # (x, y)^d gives d^2
CONIC_SEGRE = (-4, 2)               # c(O(2)|_X)^-1 cap [X], deg c_1 = 4
TWISTED_CUBIC_SEGRE = (-10, 3)      # c(N)^-1 cap [X], deg c_1(N) = 10
BEZOUT_22 = 4
