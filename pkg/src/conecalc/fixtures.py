"""Named example jobs and the fat-point T1 construction."""

from __future__ import annotations

import copy
from dataclasses import dataclass

from .linecone import Cone, LinSpaceHom, normal_cone, linspace_from_module
from .symkernel import Ideal, ModuleMap, PolyRing, PresentedModule, map_diagnostics

SCHEMA_VERSION = 1

P2 = ["x0", "x1", "x2"]
P3 = ["x0", "x1", "x2", "x3"]

FIXTURES = {
    "fat-point": {
        "schema_version": SCHEMA_VERSION,
        "task": "normal-cone",
        "ring": {"variables": ["X", "Y"], "kind": "affine"},
        "ideal": ["X^2", "X*Y", "Y^2"],
        "params": {"coords": ["A", "B", "C"], "tangent_action": True, "t1": True},
    },
    "conic": {
        "schema_version": SCHEMA_VERSION,
        "task": "vfc",
        "ring": {"variables": P2, "kind": "projective"},
        "ideal": ["x0*x2 - x1^2"],
        "params": {"normal_space": {"kind": "section", "twists": [2],
                                    "sections": ["x0*x2 - x1^2"]}},
    },
    "twisted-cubic": {
        "schema_version": SCHEMA_VERSION,
        "task": "fulton",
        "ring": {"variables": P3, "kind": "projective"},
        "ideal": ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        "params": {},
    },
    "double-line": {
        "schema_version": SCHEMA_VERSION,
        "task": "vfc",
        "ring": {"variables": P2, "kind": "projective"},
        "ideal": ["x0^2"],
        "params": {"normal_space": {"kind": "section", "twists": [2], "sections": ["x0^2"]}},
    },
    "p2-smooth": {
        "schema_version": SCHEMA_VERSION,
        "task": "vfc",
        "ring": {"variables": P2, "kind": "projective"},
        "ideal": [],
        "params": {"normal_space": {"kind": "smooth"}},
    },
}


def fixture(name: str) -> dict:
    return copy.deepcopy(FIXTURES[name])


@dataclass
class T1Data:
    """N_{X|M} -> T_1(X) for an affine X, with the normal cone inside N."""

    cone: Cone
    differential: ModuleMap       # I/I^2 -> Omega_M|_X
    kernel_vectors: list          # generators of the kernel, in the conormal basis
    q: LinSpaceHom                # N -> T_1


def t1_data(ideal: Ideal, coords=None, t1_prefix: str = "Z") -> T1Data:
    """The epimorphism from the normal space onto T_1 and the normal cone.

    T_1(X) is the linear space of the kernel K of d: I/I^2 -> Omega_M|_X;
    the inclusion K -> I/I^2 is the sheaf map of N -> T_1.
    """
    ring = ideal.ring
    gens = list(ideal.gens)
    cone = normal_cone(ideal, gens, coords)
    N = cone.ambient
    omega = PresentedModule.free(ring, ring.nvars, ideal)
    jac = [[g.diff(v) for v in ring.variables] for g in gens]
    d = ModuleMap(N.sheaf, omega, jac)
    kv = map_diagnostics(d).kernel_vectors
    kmod = map_diagnostics(d).kernel
    names = [f"{t1_prefix}{i + 1}" for i in range(len(kv))]
    T1 = linspace_from_module(kmod, names)
    q = LinSpaceHom(N, T1, [list(v) for v in kv])
    return T1Data(cone, d, kv, q)


def fat_point_ring() -> PolyRing:
    return PolyRing(["X", "Y"])
