"""Two-term complexes of linear spaces, commutative squares, going up and down.

Conventions: a complex is ``E0 --D--> E1``; a square ``F -> E`` consists of
``phi0: F0 -> E0`` and ``phi1: F1 -> E1`` with ``phi1 D' = D phi0``.  On the
sheaf side this is ``E^{-1} -> E^0`` mapping to ``F^{-1} -> F^0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..symkernel import (Ideal, ModuleMap, PresentedModule, equal, kernel_vectors, lift,
                         map_diagnostics)
from .cones import Cone, EConeAction, is_econe, pushforward_ideal
from .spaces import LinSpaceHom, LinearSpace, direct_sum, hstack


class SquareDoesNotCommute(ValueError):
    pass


class NotApplicable(ValueError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("going down is not applicable: " + "; ".join(self.failed))


class CertificateFailure(AssertionError):
    pass


class LemmaViolation(AssertionError):
    pass


@dataclass(eq=False)
class TwoTermComplex:
    E0: LinearSpace
    E1: LinearSpace
    D: LinSpaceHom

    def __post_init__(self):
        if self.D.source.coords != self.E0.coords or self.D.target.coords != self.E1.coords:
            raise ValueError("differential does not match the complex")

    def action(self, cone: Cone) -> EConeAction:
        return EConeAction(self.E0, cone, self.D)


@dataclass(eq=False)
class ComplexSquare:
    source_complex: TwoTermComplex
    target_complex: TwoTermComplex
    phi0: LinSpaceHom
    phi1: LinSpaceHom
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        F, E = self.source_complex, self.target_complex
        if self.phi0.source.coords != F.E0.coords or self.phi0.target.coords != E.E0.coords:
            raise ValueError("phi0 does not match the complexes")
        if self.phi1.source.coords != F.E1.coords or self.phi1.target.coords != E.E1.coords:
            raise ValueError("phi1 does not match the complexes")
        if self.check and not self.phi1.compose(F.D).equals(E.D.compose(self.phi0)):
            raise SquareDoesNotCommute("phi1 o D' != D o phi0")

    def compose(self, first: "ComplexSquare") -> "ComplexSquare":
        """``self o first``."""
        return ComplexSquare(first.source_complex, self.target_complex,
                             self.phi0.compose(first.phi0), self.phi1.compose(first.phi1),
                             check=False)

    def homotopic(self, K: LinSpaceHom) -> "ComplexSquare":
        """Psi0 = Phi0 + K D', Psi1 = Phi1 + D K for ``K: F1 -> E0``."""
        F, E = self.source_complex, self.target_complex
        return ComplexSquare(F, E, self.phi0 + K.compose(F.D), self.phi1 + E.D.compose(K),
                             check=False)


# --------------------------------------------------------------------------
# cohomology and the exactness lemma

@dataclass
class ComplexDiagnostics:
    h0_inj: bool
    h0_surj: bool
    hm1_inj: bool
    hm1_surj: bool
    exact_at_F0: bool
    exact_at_middle: bool
    exact_at_Em1: bool

    @property
    def h0_iso(self) -> bool:
        return self.h0_inj and self.h0_surj

    @property
    def quasi_iso(self) -> bool:
        return self.h0_iso and self.hm1_inj and self.hm1_surj

    def as_dict(self):
        return {"h0_iso": self.h0_iso, "h0_inj": self.h0_inj, "h0_surj": self.h0_surj,
                "hm1_inj": self.hm1_inj, "hm1_surj": self.hm1_surj,
                "exactness": [self.exact_at_F0, self.exact_at_middle, self.exact_at_Em1]}

    def __getitem__(self, key):
        return self.as_dict()[key]


def _cokernel(d: ModuleMap) -> PresentedModule:
    tgt = d.target
    return PresentedModule(tgt.ring, tgt.n_generators, tgt.relations + d.matrix, tgt.ideal)


def _kernel(d: ModuleMap):
    src = d.source
    kv = [v for v in kernel_vectors(d) if not src.is_zero_element(v)]
    from ..symkernel import syzygies
    rels = syzygies(src.ring, kv, src.n_generators, src.relations, src.ideal) if kv else []
    return kv, PresentedModule(src.ring, len(kv), tuple(rels), src.ideal)


def cohomology_flags(square: ComplexSquare):
    """(h0_inj, h0_surj, hm1_inj, hm1_surj) from the induced maps on H^0, H^-1."""
    F, E = square.source_complex, square.target_complex
    d = E.D.sheaf_map()        # E^{-1} -> E^0
    dp = F.D.sheaf_map()       # F^{-1} -> F^0
    phi0 = square.phi0.sheaf_map()   # E^0 -> F^0
    phim1 = square.phi1.sheaf_map()  # E^{-1} -> F^{-1}
    Q, Qp = _cokernel(d), _cokernel(dp)
    h0 = map_diagnostics(ModuleMap(Q, Qp, phi0.matrix, check=False))
    kv, K = _kernel(d)
    kvp, Kp = _kernel(dp)
    src = dp.source
    cols = []
    for v in kv:
        c = lift(src.ring, kvp, src.n_generators, phim1.apply(v), src.relations, src.ideal)
        if c is None:
            raise LemmaViolation("H^-1 map does not land in the kernel of d'")
        cols.append(c)
    hm1 = map_diagnostics(ModuleMap(K, Kp, cols, check=False))
    return h0.injective, h0.surjective, hm1.injective, hm1.surjective


def exactness_flags(square: ComplexSquare):
    """Exactness of 0 -> E^-1 -> E^0 + F^-1 -> F^0 -> 0 at F^0, middle, E^-1."""
    F, E = square.source_complex, square.target_complex
    d = E.D.sheaf_map()
    dp = F.D.sheaf_map()
    phi0 = square.phi0.sheaf_map()
    phim1 = square.phi1.sheaf_map()
    Em1, E0s, Fm1, F0s = d.source, d.target, dp.source, dp.target
    mid = E0s.direct_sum(Fm1)
    alpha = ModuleMap(Em1, mid, [a + b for a, b in zip(d.matrix, phim1.matrix)], check=False)
    beta_cols = list(phi0.matrix) + [tuple(-p for p in c) for c in dp.matrix]
    beta = ModuleMap(mid, F0s, beta_cols, check=False)
    bd = map_diagnostics(beta)
    ad = map_diagnostics(alpha)
    exact_mid = all(mid.submodule_contains(alpha.matrix, v) for v in bd.kernel_vectors)
    return bd.surjective, exact_mid, ad.injective


def complex_diagnostics(square: ComplexSquare) -> ComplexDiagnostics:
    h0i, h0s, hi, hs = cohomology_flags(square)
    e0, em, e1 = exactness_flags(square)
    diag = ComplexDiagnostics(h0i, h0s, hi, hs, e0, em, e1)
    if e0 != h0s or em != (h0i and hs) or e1 != hi:
        raise LemmaViolation(f"exactness flags disagree with cohomology flags: {diag}")
    return diag


def is_quasi_iso(square: ComplexSquare) -> bool:
    return complex_diagnostics(square).quasi_iso


def applicability(square: ComplexSquare):
    """Names of the failed going-down conditions (empty when applicable)."""
    failed = []
    if not square.source_complex.E0.is_vector_bundle:
        failed.append("F0 is not a vector bundle")
    diag = complex_diagnostics(square)
    if not diag.exact_at_F0:
        failed.append("(i) H^0 not surjective: not exact at F^0")
    if not diag.exact_at_middle:
        failed.append("(ii) H^0 not injective or H^-1 not surjective: not exact in the middle")
    return failed


# --------------------------------------------------------------------------
# going up and down

def going_up(square: ComplexSquare, cone: Cone, verify: bool = False) -> Cone:
    """Phi^!(C) = Phi1^{-1}(C), an F0-cone in F1."""
    E1 = square.target_complex.E1
    if cone.ambient.coords != E1.coords:
        raise ValueError("cone does not live in the target degree-1 space")
    F1 = square.source_complex.E1
    out = Cone(F1, square.phi1.pullback_ideal_gens(cone.ideal.gens))
    if verify and not is_econe(square.source_complex.action(out)):
        raise CertificateFailure("pull-back is not an F0-cone")
    return out


@dataclass
class GoingDownResult:
    cone: Cone
    sum_space: LinearSpace
    q: LinSpaceHom
    sum_cone_ideal: Ideal


def _sum_space(E0: LinearSpace, F1: LinearSpace):
    taken = set(F1.ring.variables)
    names = []
    for c in E0.coords:
        n = c
        while n in taken:
            n = "_" + n
        taken.add(n)
        names.append(n)
    E0r = E0.renamed(names) if tuple(names) != E0.coords else E0
    return E0r, direct_sum(E0r, F1)


def going_down_full(square: ComplexSquare, cone: Cone, check_applicable: bool = True
                    ) -> GoingDownResult:
    F, E = square.source_complex, square.target_complex
    if cone.ambient.coords != F.E1.coords:
        raise ValueError("cone does not live in the source degree-1 space")
    if check_applicable:
        failed = applicability(square)
        if failed:
            raise NotApplicable(failed)
    E0r, S = _sum_space(E.E0, F.E1)
    Dr = LinSpaceHom(E0r, E.E1, E.D.matrix, check=False)
    q = hstack(S, Dr, square.phi1)
    # ideal of E0 + C: the cone ideal together with E0's relations
    sum_gens = [g.to(S.ring) for g in cone.ideal.gens]
    sum_gens += [r.to(S.ring) for r in E0r.linear_relations]
    sum_ideal = Ideal(S.ring, sum_gens)
    pre = pushforward_ideal(q, sum_ideal)
    out = Cone(E.E1, pre.gens)
    back = Ideal(S.ring, q.pullback_ideal_gens(out.ideal.gens) + S.defining_gens())
    if not equal(back, sum_ideal):
        raise CertificateFailure("q^-1(pushed cone) != E0 + C")
    return GoingDownResult(out, S, q, sum_ideal)


def going_down(square: ComplexSquare, cone: Cone, check_applicable: bool = True) -> Cone:
    """(Phi)_!(C): the unique cone in E1 with q^-1(result) = E0 + C."""
    return going_down_full(square, cone, check_applicable).cone


@dataclass(eq=False)
class DerivedMorphism:
    """F -> E in the derived category as a roof F -> G <- E."""

    intermediate: TwoTermComplex
    theta: ComplexSquare   # E -> G, a quasi-isomorphism
    psi: ComplexSquare     # F -> G
    check: bool = True

    def __post_init__(self):
        G = self.intermediate
        if self.theta.target_complex.E1.coords != G.E1.coords:
            raise ValueError("theta must land in the intermediate complex")
        if self.psi.target_complex.E1.coords != G.E1.coords:
            raise ValueError("psi must land in the intermediate complex")
        if self.check and not is_quasi_iso(self.theta):
            raise NotApplicable(["theta is not a quasi-isomorphism"])


def going_down_derived(morphism: DerivedMorphism, cone: Cone) -> Cone:
    """Theta^!(Psi_!(C))."""
    return going_up(morphism.theta, going_down(morphism.psi, cone))
