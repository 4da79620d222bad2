"""Segre classes of cones over projective schemes, pushed to A_*(P^n).

The cone C lives in the line space of O(w_1) + ... + O(w_k) over X in P^n
(the twists of its ambient).  We work on P(C + 1) inside the projective
bundle of O(w_1) + ... + O(w_k) + O, whose tautological class xi differs
from the class xi' cut out by the fibre forms of the multidegree slicer by
D h, D = max(w_i, 0):  xi = xi' - D h.  Then

    s(C)_m = deg(h^m xi^(delta - m) [P(C + 1)])
           = sum_j binom(delta - m, j) (-D)^(delta - m - j) M[delta - j][j].
"""

from __future__ import annotations

from math import comb

from ..linecone import Cone
from ..symkernel import Ideal, PolyRing
from .classes import ChowClass
from .multidegree import Multidegree, MultidegreeConfig, multidegree


class NotPure(ValueError):
    pass


def _fresh(taken, base: str) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def segre_from_multidegree(md: Multidegree, D: int) -> ChowClass:
    n, delta = md.n, md.dim
    out = []
    for m in range(n + 1):
        r = delta - m
        if r < 0:
            out.append(0)
            continue
        out.append(sum(comb(r, j) * (-D) ** (r - j) * md.entry(delta - j, j) for j in range(r + 1)))
    return ChowClass(n, out)


def cone_multidegree(cone: Cone, config: MultidegreeConfig | None = None) -> Multidegree:
    """Multidegree of P(C + 1) in the weighted sense described above."""
    amb = cone.ambient
    base = amb.base_ring
    T = _fresh(set(amb.ring.variables), "T0")
    ring = PolyRing(base.variables + amb.coords + (T,))
    J = Ideal(ring, [g.to(ring) for g in cone.ideal.gens])
    weights = list(amb.twists) + [0]
    cfg = config or MultidegreeConfig()
    if cfg.check_saturated:
        cfg = MultidegreeConfig(cfg.seed, cfg.coeff_bound, cfg.retries, False)
    return multidegree(J, base.variables, amb.coords + (T,), weights, cfg)


def segre_class(cone: Cone, config: MultidegreeConfig | None = None,
                expected_dim: int | None = None) -> ChowClass:
    """s(C) pushed forward to P^n; X must be given by homogeneous equations."""
    if not all(g.is_homogeneous() for g in cone.ambient.base_ideal.gens):
        raise ValueError("segre_class needs a projective base (homogeneous ideal)")
    md = cone_multidegree(cone, config)
    if expected_dim is not None and md.dim != expected_dim:
        raise NotPure(f"cone has dimension {md.dim}, expected {expected_dim}")
    D = max(list(cone.ambient.twists) + [0])
    return segre_from_multidegree(md, D)
