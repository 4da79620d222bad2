"""Executable laws of going up and down on seeded random instances.

Every suite has a generator producing a dict of named objects and a checker
returning ``(passed, details)``.  Instances round-trip through JSON so a
failing one can be replayed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .complexes import (CertificateFailure, LemmaViolation, NotApplicable,
                        complex_diagnostics, going_down, going_down_full, going_up)
from .cones import Cone, is_econe
from .randgen import (APPLICABLE_KINDS, GENERIC_KINDS, QUASI_ISO_KINDS, InstanceGenerator)
from .serialize import decode_objects, encode_objects
from .spaces import LinSpaceHom, zero_hom
from ..symkernel import map_diagnostics

DEFAULT_SEED = 20240101
DEFAULT_COUNT = 100


@dataclass
class Law:
    name: str
    generate: Callable[[InstanceGenerator], dict]
    check: Callable[[dict], tuple]
    statement: str = ""


def _corrupt(cone: Cone) -> Cone:
    """Mutation hook: a cone that is guaranteed to differ from ``cone``.

    Adds the first ambient coordinate not already in the ideal; a cone that
    contains the zero section in every coordinate loses it instead.
    """
    amb = cone.ambient
    gens = list(cone.ideal.gens)
    for y in amb.coords:
        v = amb.ring.var(y)
        if not cone.contains(v):
            return Cone(amb, gens + [v])
    if not cone.contains(amb.ring.one()):
        return Cone(amb, gens + [amb.ring.one()])
    return Cone(amb, [amb.ring.var(y) for y in amb.coords])


def _same(a: Cone, b: Cone, mutate: bool):
    if mutate:
        b = _corrupt(b)
    return a.equals(b)


# ----------------------------------------------------------------------------
# generators

def gen_gu_homotopy(g: InstanceGenerator):
    sq, _ = g.square(GENERIC_KINDS, perturb=False)
    return {"square": sq, "K": g.homotopy(sq), "cone": g.econe(sq.target_complex)}


def gen_gd_homotopy(g: InstanceGenerator):
    sq, _ = g.square(APPLICABLE_KINDS, perturb=False)
    return {"square": sq, "K": g.homotopy(sq), "cone": g.econe(sq.source_complex)}


def gen_gu_functorial(g: InstanceGenerator):
    phi, _ = g.square(GENERIC_KINDS, steps=1)
    psi, _ = g.square(GENERIC_KINDS, source=phi.target_complex, steps=1)
    return {"phi": phi, "psi": psi, "cone": g.econe(psi.target_complex)}


def gen_gd_functorial(g: InstanceGenerator):
    psi, _ = g.square(APPLICABLE_KINDS, steps=1)
    phi, _ = g.square(APPLICABLE_KINDS, source=psi.target_complex, steps=1)
    return {"psi": psi, "phi": phi, "cone": g.econe(psi.source_complex)}


def gen_left_inverse(g: InstanceGenerator):
    sq, _ = g.square(APPLICABLE_KINDS)
    return {"square": sq, "cone": g.econe(sq.source_complex)}


def gen_quasi_iso(g: InstanceGenerator):
    sq, _ = g.square(QUASI_ISO_KINDS)
    return {"square": sq, "cone": g.econe(sq.source_complex),
            "target_cone": g.econe(sq.target_complex)}


def gen_exact_sequence(g: InstanceGenerator):
    sq, _ = g.square(APPLICABLE_KINDS)
    return {"square": sq, "cone": g.econe(sq.source_complex)}


def gen_lemma(g: InstanceGenerator):
    sq, flags = g.square(GENERIC_KINDS)
    return {"square": sq, "expected": {"h0_iso": flags.h0_iso, "hm1_surj": flags.hm1_surj,
                                       "hm1_inj": flags.hm1_inj}}


# ----------------------------------------------------------------------------
# checkers

def check_gu_homotopy(o, mutate=False):
    sq, K, C = o["square"], o["K"], o["cone"]
    a = going_up(sq, C)
    b = going_up(sq.homotopic(K), C)
    return _same(a, b, mutate), {"phi": str(a), "psi": str(b)}


def check_gd_homotopy(o, mutate=False):
    sq, K, C = o["square"], o["K"], o["cone"]
    a = going_down(sq, C)
    b = going_down(sq.homotopic(K), C)
    return _same(a, b, mutate), {"phi": str(a), "psi": str(b)}


def check_gu_functorial(o, mutate=False):
    phi, psi, C = o["phi"], o["psi"], o["cone"]
    a = going_up(psi.compose(phi), C)
    b = going_up(phi, going_up(psi, C))
    return _same(a, b, mutate), {"composite": str(a), "iterated": str(b)}


def check_gd_functorial(o, mutate=False):
    psi, phi, C = o["psi"], o["phi"], o["cone"]
    a = going_down(phi.compose(psi), C)
    b = going_down(phi, going_down(psi, C))
    return _same(a, b, mutate), {"composite": str(a), "iterated": str(b)}


def check_left_inverse(o, mutate=False):
    sq, C = o["square"], o["cone"]
    back = going_up(sq, going_down(sq, C))
    return _same(C, back, mutate), {"input": str(C), "roundtrip": str(back)}


def check_quasi_iso(o, mutate=False):
    sq, C, Cbar = o["square"], o["cone"], o["target_cone"]
    if not complex_diagnostics(sq).quasi_iso:
        return False, {"error": "square is not a quasi-isomorphism"}
    up_down = going_up(sq, going_down(sq, C))
    down_up = going_down(sq, going_up(sq, Cbar))
    ok = C.equals(up_down) and _same(Cbar, down_up, mutate)
    return ok, {"source_roundtrip": str(up_down), "target_roundtrip": str(down_up)}


def check_exact_sequence(o, mutate=False):
    """0 -> F0 -> E0 + C -> Cbar -> 0 for the pushed cone."""
    sq, C = o["square"], o["cone"]
    res = going_down_full(sq, C)
    F, E = sq.source_complex, sq.target_complex
    S, q = res.sum_space, res.q
    # q^-1(Cbar) = E0 + C, recomputed from the returned cone
    back = Cone(S, q.pullback_ideal_gens(res.cone.ideal.gens))
    target = Cone(S, res.sum_cone_ideal.gens)
    if mutate:
        target = _corrupt(target)
    preimage_ok = back.equals(target)
    # F0 -> E0 + F1 is (Phi0, -D'); q kills it and it is a closed embedding
    rows = list(sq.phi0.matrix) + [tuple(-p for p in row) for row in F.D.matrix]
    incl = LinSpaceHom(F.E0, S, rows, check=False)
    composite_zero = q.compose(incl).equals(zero_hom(F.E0, E.E1))
    mono = map_diagnostics(incl.sheaf_map()).surjective
    econe = is_econe(E.action(res.cone))
    ok = preimage_ok and composite_zero and mono and econe
    return ok, {"preimage": preimage_ok, "q_kills_F0": composite_zero,
                "F0_embeds": mono, "pushed_is_econe": econe}


def check_lemma(o, mutate=False):
    sq, expected = o["square"], o["expected"]
    try:
        d = complex_diagnostics(sq)
    except LemmaViolation as exc:
        return False, {"error": str(exc)}
    got = {"h0_iso": d.h0_iso, "hm1_surj": d.hm1_surj, "hm1_inj": d.hm1_inj}
    if mutate:
        got["h0_iso"] = not got["h0_iso"]
    ok = all(v is None or got[k] == v for k, v in expected.items())
    if mutate and all(v is None for v in expected.values()):
        ok = False
    return ok, {"flags": d.as_dict(), "expected": expected}


LAWS = {
    "going-up-homotopy": Law("going-up-homotopy", gen_gu_homotopy, check_gu_homotopy,
                             "Phi^!(C) = Psi^!(C) for homotopic squares"),
    "going-down-homotopy": Law("going-down-homotopy", gen_gd_homotopy, check_gd_homotopy,
                               "Phi_!(C) = Psi_!(C) for homotopic applicable squares"),
    "going-up-functoriality": Law("going-up-functoriality", gen_gu_functorial,
                                  check_gu_functorial, "(Psi Phi)^! = Phi^! Psi^!"),
    "going-down-functoriality": Law("going-down-functoriality", gen_gd_functorial,
                                    check_gd_functorial, "(Phi Psi)_! = Phi_! Psi_!"),
    "left-inverse": Law("left-inverse", gen_left_inverse, check_left_inverse,
                        "Phi^! Phi_! C = C"),
    "quasi-iso-roundtrip": Law("quasi-iso-roundtrip", gen_quasi_iso, check_quasi_iso,
                               "going up and down are inverse for quasi-isomorphisms"),
    "exact-sequence": Law("exact-sequence", gen_exact_sequence, check_exact_sequence,
                          "q^-1(Phi_! C) = E0 + C with F0 acting freely"),
    "exactness-lemma": Law("exactness-lemma", gen_lemma, check_lemma,
                           "exactness flags agree with cohomology flags"),
}


def instance_seed(seed: int, suite: str, index: int) -> str:
    return f"{seed}:{suite}:{index}"


def make_instance(suite: str, seed: int, index: int) -> dict:
    g = InstanceGenerator(instance_seed(seed, suite, index))
    objs = LAWS[suite].generate(g)
    data = encode_objects(g.base, g.base_ideal, objs)
    data["suite"] = suite
    data["seed"] = seed
    data["index"] = index
    return data


def run_instance(data: dict, mutate: bool = False):
    """Check one serialized instance; exceptions count as failures."""
    suite = data["suite"]
    objs = decode_objects(data)
    try:
        return LAWS[suite].check(objs, mutate)
    except (CertificateFailure, LemmaViolation, NotApplicable) as exc:
        return False, {"error": f"{type(exc).__name__}: {exc}"}
