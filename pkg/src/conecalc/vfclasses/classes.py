"""Fulton's class and the virtual fundamental class by two routes."""

from __future__ import annotations

from dataclasses import dataclass

from ..chowcalc import ChowClass, MultidegreeConfig, cap, segre_class
from ..linecone import Cone, free_space, full_cone, normal_cone
from ..symkernel import UnitIdealError, dimension_degree, minimal_generators
from .scheme import (Bundle, EmbeddedScheme, ExplicitCone, NotABundle, SectionOfBundle,
                     SmoothIdentity, as_bundle, check_section)


class PurityFailure(AssertionError):
    pass


@dataclass(frozen=True)
class VfcResult:
    vfc: ChowClass
    rank: int
    fulton: ChowClass | None
    cone_dimension: int | None
    route: str

    def to_json(self):
        return {
            "route": self.route,
            "rank": self.rank,
            "vfc": self.vfc.to_json(),
            "fulton": self.fulton.to_json() if self.fulton is not None else None,
            "cone_dimension": self.cone_dimension,
        }


def _rank0_cone(X: EmbeddedScheme) -> Cone:
    space = free_space(X.ring, [], X.ideal if X.ideal.gens else None)
    return full_cone(space)


def cone_dimension(cone: Cone, projective: bool = True) -> int:
    """Dimension of the cone, -1 when empty.

    Over a projective base this is the Krull dimension of the cone ideal
    minus one; over an affine base it is the Krull dimension itself.
    """
    try:
        krull, _ = dimension_degree(cone.ideal)
    except UnitIdealError:
        return -1
    return krull - 1 if projective else krull


def fulton_class(X: EmbeddedScheme, config: MultidegreeConfig | None = None) -> ChowClass:
    """c(T_M|_X) capped with the Segre class of the normal cone of X in M."""
    if X.is_whole_space():
        s = X.fundamental_class_of_ambient()
    else:
        # the cone does not depend on the generators; fewer make a smaller Rees algebra
        s = segre_class(normal_cone(X.ideal, minimal_generators(X.ideal)), config)
    return cap(X.tangent_chern, s)


def bundles(X: EmbeddedScheme, ns) -> tuple[Bundle, Bundle]:
    """(F_0, F_1) of a normal-space description."""
    n = X.n
    if isinstance(ns, SmoothIdentity):
        if ns.tangent is not None:
            dim = ns.dim if ns.dim is not None else _dimension(X)
            return Bundle(dim, chern_poly=ns.tangent), Bundle.split(())
        if not X.is_whole_space():
            raise ValueError("tangent series of X is needed unless X is the whole space")
        return Bundle(n, chern_poly=X.tangent_chern), Bundle.split(())
    if isinstance(ns, SectionOfBundle):
        return Bundle(n, chern_poly=X.tangent_chern), Bundle.split(ns.twists)
    if isinstance(ns, ExplicitCone):
        return as_bundle(ns.f0), as_bundle(ns.f1)
    raise TypeError(f"unsupported normal space data {type(ns).__name__}")


def _dimension(X: EmbeddedScheme) -> int:
    if X.is_whole_space():
        return X.n
    return dimension_degree(X.ideal)[0] - 1


def global_normal_cone(X: EmbeddedScheme, ns, check_purity: bool = True) -> Cone:
    """The cone C in F_1 attached to the normal space, checked to have dimension rk F_0."""
    if isinstance(ns, SmoothIdentity):
        cone = _rank0_cone(X)
    elif isinstance(ns, SectionOfBundle):
        check_section(X, ns)
        ring = X.ring
        cone = normal_cone(X.ideal, [s.to(ring) for s in ns.sections], twists=list(ns.twists))
    elif isinstance(ns, ExplicitCone):
        cone = ns.cone.saturate()
    else:
        raise TypeError(f"unsupported normal space data {type(ns).__name__}")
    if check_purity:
        f0, _ = bundles(X, ns)
        d = cone_dimension(cone)
        if d != f0.rank:
            raise PurityFailure(f"cone has dimension {d}, but rk F0 = {f0.rank}")
    return cone


def fulton_via_normal_space(X: EmbeddedScheme, ns,
                            config: MultidegreeConfig | None = None) -> ChowClass:
    f0, _ = bundles(X, ns)
    cone = global_normal_cone(X, ns)
    return cap(f0.chern(X.n), segre_class(cone, config))


def _virtual_rank(f0: Bundle, f1: Bundle) -> int:
    return f0.rank - f1.rank


def vfc_direct(X: EmbeddedScheme, ns, config: MultidegreeConfig | None = None) -> VfcResult:
    """Dimension-d part of c(F_1) capped with s(C), d = rk F_0 - rk F_1."""
    f0, f1 = bundles(X, ns)
    if isinstance(ns, ExplicitCone) and not ns.cone.ambient.is_vector_bundle:
        raise NotABundle("F_1 must be a vector bundle")
    d = _virtual_rank(f0, f1)
    cone = global_normal_cone(X, ns)
    full = cap(f1.chern(X.n), segre_class(cone, config))
    vfc = full.part(d) if 0 <= d <= X.n else ChowClass.zero(X.n)
    return VfcResult(vfc, d, None, cone_dimension(cone), "direct")


def vfc_closed_formula(X: EmbeddedScheme, ns,
                       config: MultidegreeConfig | None = None) -> VfcResult:
    """Dimension-d part of c(F_1) c(F_0)^-1 capped with Fulton's class of X."""
    f0, f1 = bundles(X, ns)
    d = _virtual_rank(f0, f1)
    n = X.n
    fulton = fulton_class(X, config)
    c = f1.chern(n) * f0.chern(n).inverse()
    full = cap(c, fulton)
    vfc = full.part(d) if 0 <= d <= n else ChowClass.zero(n)
    return VfcResult(vfc, d, fulton, None, "closed-formula")


def minimal_rank_parts(X: EmbeddedScheme, ns, config: MultidegreeConfig | None = None):
    """All dimension parts of c(F_1) capped with s(C), for the minimality check."""
    _, f1 = bundles(X, ns)
    cone = global_normal_cone(X, ns)
    return cap(f1.chern(X.n), segre_class(cone, config))

