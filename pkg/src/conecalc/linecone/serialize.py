"""JSON form of linear spaces, homomorphisms, complexes, squares and cones."""

from __future__ import annotations

from ..symkernel import Ideal, PolyRing, PresentedModule
from .complexes import ComplexSquare, TwoTermComplex
from .cones import Cone
from .spaces import LinSpaceHom, LinearSpace


def _sid(space: LinearSpace) -> str:
    return ",".join(space.coords)


class Encoder:
    def __init__(self, base: PolyRing, base_ideal: Ideal):
        self.base = base
        self.base_ideal = base_ideal
        self.spaces = {}

    def space(self, s: LinearSpace) -> str:
        sid = _sid(s)
        if sid not in self.spaces:
            self.spaces[sid] = {
                "coords": list(s.coords),
                "twists": list(s.twists),
                "relations": [[str(p) for p in r] for r in s.sheaf.relations],
            }
        return sid

    def hom(self, h: LinSpaceHom):
        return {"source": self.space(h.source), "target": self.space(h.target),
                "matrix": [[str(p) for p in row] for row in h.matrix]}

    def complex(self, c: TwoTermComplex):
        return {"E0": self.space(c.E0), "E1": self.space(c.E1), "D": self.hom(c.D)}

    def square(self, sq: ComplexSquare):
        return {"source": self.complex(sq.source_complex), "target": self.complex(sq.target_complex),
                "phi0": self.hom(sq.phi0), "phi1": self.hom(sq.phi1)}

    def cone(self, c: Cone):
        return {"ambient": self.space(c.ambient), "ideal": [str(g) for g in c.ideal.gens]}

    def encode(self, obj):
        if isinstance(obj, ComplexSquare):
            return {"kind": "square", **self.square(obj)}
        if isinstance(obj, Cone):
            return {"kind": "cone", **self.cone(obj)}
        if isinstance(obj, LinSpaceHom):
            return {"kind": "hom", **self.hom(obj)}
        if isinstance(obj, TwoTermComplex):
            return {"kind": "complex", **self.complex(obj)}
        if isinstance(obj, (bool, int, str, type(None))):
            return {"kind": "value", "value": obj}
        if isinstance(obj, dict):
            return {"kind": "value", "value": obj}
        raise TypeError(f"cannot serialize {type(obj).__name__}")

    def header(self):
        return {"variables": list(self.base.variables),
                "ideal": [str(g) for g in self.base_ideal.gens]}


def encode_objects(base: PolyRing, base_ideal: Ideal, objects: dict) -> dict:
    enc = Encoder(base, base_ideal)
    objs = {k: enc.encode(v) for k, v in objects.items()}
    return {"base": enc.header(), "spaces": enc.spaces, "objects": objs}


class Decoder:
    def __init__(self, data: dict):
        b = data["base"]
        self.base = PolyRing(b["variables"])
        self.base_ideal = Ideal(self.base, [self.base(g) for g in b.get("ideal", [])])
        self.raw = data["spaces"]
        self.spaces = {}

    def space(self, sid: str) -> LinearSpace:
        if sid not in self.spaces:
            d = self.raw[sid]
            rels = tuple(tuple(self.base(p) for p in r) for r in d["relations"])
            mod = PresentedModule(self.base, len(d["coords"]), rels, self.base_ideal)
            self.spaces[sid] = LinearSpace(self.base, self.base_ideal, mod, d["coords"],
                                           d.get("twists"))
        return self.spaces[sid]

    def hom(self, d) -> LinSpaceHom:
        return LinSpaceHom(self.space(d["source"]), self.space(d["target"]), d["matrix"])

    def complex(self, d) -> TwoTermComplex:
        return TwoTermComplex(self.space(d["E0"]), self.space(d["E1"]), self.hom(d["D"]))

    def square(self, d) -> ComplexSquare:
        return ComplexSquare(self.complex(d["source"]), self.complex(d["target"]),
                             self.hom(d["phi0"]), self.hom(d["phi1"]))

    def cone(self, d) -> Cone:
        amb = self.space(d["ambient"])
        return Cone(amb, [amb.ring(g) for g in d["ideal"]])

    def decode(self, d):
        kind = d["kind"]
        if kind == "value":
            return d["value"]
        return getattr(self, kind)(d)


def decode_objects(data: dict) -> dict:
    dec = Decoder(data)
    return {k: dec.decode(v) for k, v in data["objects"].items()}
