"""Random zero loci of sections of split bundles on P^n.

Components share a random factor now and then, so the zero locus is often
not a complete intersection and the normal cone carries excess.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..symkernel import Ideal, Poly, PolyRing, saturate
from .scheme import EmbeddedScheme, SectionOfBundle


@dataclass(frozen=True)
class SectionConfig:
    n: int = 2
    max_degree: int = 2
    max_summands: int = 3
    coeff_bound: int = 3
    max_tries: int = 50


def _form(ring: PolyRing, deg: int, rng: random.Random, bound: int, sparse: float = 0.5) -> Poly:
    out = ring.zero()
    while not out:
        out = ring.zero()
        for mono in combinations_with_replacement(range(ring.nvars), deg):
            if rng.random() < sparse:
                continue
            e = [0] * ring.nvars
            for i in mono:
                e[i] += 1
            out = out + Poly(ring, {tuple(e): rng.randint(-bound, bound)})
    return out


def random_section(seed, config: SectionConfig | None = None):
    """(X, SectionOfBundle) with X = V(s) nonempty."""
    cfg = config or SectionConfig()
    rng = random.Random(str(seed))
    ring = PolyRing([f"x{i}" for i in range(cfg.n + 1)])
    irr = Ideal(ring, ring.gens())
    for _ in range(cfg.max_tries):
        k = rng.randint(1, cfg.max_summands)
        twists = [rng.randint(1, cfg.max_degree) for _ in range(k)]
        shared = _form(ring, 1, rng, cfg.coeff_bound) if rng.random() < 0.5 else None
        sections = []
        for d in twists:
            if shared is not None and rng.random() < 0.7:
                s = shared * _form(ring, d - 1, rng, cfg.coeff_bound) if d > 1 else shared
            else:
                s = _form(ring, d, rng, cfg.coeff_bound)
            sections.append(s)
        sat = saturate(Ideal(ring, sections), irr)
        if sat.is_unit():   # V(s) is empty
            continue
        return EmbeddedScheme.projective(sat, assume_saturated=True), SectionOfBundle(twists, sections)
    raise RuntimeError("no nonempty zero locus found")
