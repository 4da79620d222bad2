"""Polynomial rings over Q and their elements."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .orders import Order, make_order

ORDER_KINDS = ("lex", "grevlex", "elim", "elimw")


class RingMismatch(ValueError):
    pass


class PolyRing:
    """Ordered variables, a term order tag and per-variable weights.

    ``order`` is ``"lex"``, ``"grevlex"``, ``"elim"`` or ``"elimw"``; the last two need
    ``block``, the variable names eliminated (compared first).  ``weights``
    maps a grading name to a per-variable weight tuple, e.g. the cone
    grading ``{"cone": (0, 0, 1, 1)}``.
    """

    def __init__(self, variables: Sequence[str], order: str = "grevlex",
                 block: Sequence[str] = (), weights: Mapping[str, Sequence[int]] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if order not in ORDER_KINDS:
            raise ValueError(f"unknown order {order!r}")
        self.order_kind = order
        self.block = tuple(block)
        missing = [v for v in self.block if v not in self.variables]
        if missing:
            raise ValueError(f"elimination block has undeclared variables {missing}")
        if order in ("elim", "elimw") and not self.block:
            raise ValueError("elimination order needs a nonempty block")
        self.weights = {k: tuple(int(w) for w in v) for k, v in (weights or {}).items()}
        for name, w in self.weights.items():
            if len(w) != len(self.variables) or min(w, default=0) < 0:
                raise ValueError(f"bad weights for grading {name!r}")
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)
        blk = tuple(sorted(self.index[v] for v in self.block))
        self.order: Order = make_order(self.nvars, order, blk)

    # identity -------------------------------------------------------------
    def _sig(self):
        return (self.variables, self.order_kind, self.block)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        extra = f", block={list(self.block)}" if self.block else ""
        return f"PolyRing({list(self.variables)}, {self.order_kind}{extra})"

    # constructors -----------------------------------------------------------
    def with_order(self, order: str, block: Sequence[str] = ()) -> "PolyRing":
        return PolyRing(self.variables, order, block, self.weights)

    def extend(self, names: Sequence[str], order: str | None = None,
               block: Sequence[str] = ()) -> "PolyRing":
        return PolyRing(self.variables + tuple(names), order or "grevlex", block)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = mpq(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): mpq(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return text.to(self)
        if isinstance(text, str):
            from .parse import poly_parse
            return poly_parse(text, self)
        return self.const(text)

    def weight(self, grading: str, exps) -> int:
        return sum(w * e for w, e in zip(self.weights[grading], exps))


class Poly:
    """An immutable polynomial: a map exponent tuple -> nonzero rational."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = {e: mpq(c) for e, c in terms.items() if c}
        self._hash = None

    # basic protocol -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.variables == other.ring.variables and self.terms == other.terms
        if isinstance(other, (int, mpq)):
            return self.terms == ({(0,) * self.ring.nvars: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parse import poly_str
        return f"Poly({poly_str(self)!r})"

    def __str__(self):
        from .parse import poly_str
        return poly_str(self)

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring.variables != self.ring.variables:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if len(self.terms) * len(other.terms) > _PACK_THRESHOLD:
            return _packed_mul(self, other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = mpq(c)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exps) -> "Poly":
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): c
                                for e, c in self.terms.items()})

    # order-dependent data -------------------------------------------------------
    def sorted_terms(self, ring: PolyRing | None = None):
        order = (ring or self.ring).order
        return sorted(self.terms.items(), key=lambda t: order.encode(t[0]), reverse=True)

    def lm(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        order = self.ring.order
        return max(self.terms, key=order.encode)

    def lc(self):
        return self.terms[self.lm()]

    def monic(self) -> "Poly":
        return self.scale(1 / self.lc()) if self.terms else self

    # structure ------------------------------------------------------------------
    def degree(self, grading: str | None = None) -> int:
        if not self.terms:
            return -1
        if grading is None:
            return max(sum(e) for e in self.terms)
        return max(self.ring.weight(grading, e) for e in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index[n] for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous(self, grading: str | None = None) -> bool:
        if grading is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {self.ring.weight(grading, e) for e in self.terms}
        return len(degs) <= 1

    def is_homogeneous_in(self, names: Iterable[str]) -> bool:
        idx = [self.ring.index[n] for n in names]
        return len({sum(e[i] for i in idx) for e in self.terms}) <= 1

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            used.update(self.ring.variables[i] for i, a in enumerate(e) if a)
        return used

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def diff(self, name: str) -> "Poly":
        i = self.ring.index[name]
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return Poly(self.ring, t)

    # ring changes ---------------------------------------------------------------
    def to(self, ring: PolyRing, rename: Mapping[str, str] | None = None) -> "Poly":
        """Re-embed into ``ring`` matching variables by (optionally renamed) name."""
        rename = rename or {}
        src = self.ring.variables
        pos = []
        for i, v in enumerate(src):
            name = rename.get(v, v)
            j = ring.index.get(name)
            pos.append(j)
        t = {}
        n = ring.nvars
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    j = pos[i]
                    if j is None:
                        raise RingMismatch(f"variable {src[i]!r} not in {ring}")
                    ne[j] += a
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        return Poly(ring, t)

    def subs(self, images: Mapping[str, "Poly"], ring: PolyRing | None = None) -> "Poly":
        """Substitute variables by polynomials of ``ring`` (default: own ring).

        Variables absent from ``images`` are mapped by name into ``ring``.
        """
        ring = ring or self.ring
        src = self.ring.variables
        imgs = []
        for v in src:
            if v in images:
                p = images[v]
                if p.ring.variables != ring.variables:
                    p = p.to(ring)
                imgs.append(p)
            else:
                imgs.append(ring.var(v) if v in ring.index else None)
        # variables sent to a single variable only shift exponents; the
        # terms are grouped by their exponents in the remaining variables
        n = ring.nvars
        shift = {}
        for i, p in enumerate(imgs):
            if p is not None and len(p.terms) == 1:
                (e, c), = p.terms.items()
                if c == 1 and sum(e) == 1:
                    shift[i] = e.index(1)
        heavy = [i for i in range(len(src)) if i not in shift]
        groups = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in heavy)
            mono = [0] * n
            for i, j in shift.items():
                mono[j] += e[i]
            g = groups.setdefault(key, {})
            mono = tuple(mono)
            g[mono] = g.get(mono, 0) + c
        cache = {}

        def power(i, a):
            k = (i, a)
            if k not in cache:
                if imgs[i] is None:
                    raise RingMismatch(f"no image for variable {src[i]!r}")
                cache[k] = imgs[i] ** a
            return cache[k]

        acc = {}
        for key, mono_part in groups.items():
            prod = ring.one()
            for i, a in zip(heavy, key):
                if a:
                    prod = prod * power(i, a)
            for e, c in (prod * Poly(ring, mono_part)).terms.items():
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return Poly(ring, acc)

    def keyed(self, order: Order | None = None) -> dict:
        order = order or self.ring.order
        return {order.encode(e): c for e, c in self.terms.items()}

    @classmethod
    def from_keyed(cls, ring: PolyRing, d: Mapping[int, object]) -> "Poly":
        order = ring.order
        return cls(ring, {order.decode(k): c for k, c in d.items()})


_PACK_THRESHOLD = 64


def _packed_mul(f: "Poly", g: "Poly") -> "Poly":
    """Product with exponent vectors packed into one integer each."""
    n = f.ring.nvars
    top = max(max((max(e) for e in f.terms), default=0) + max((max(e) for e in g.terms), default=0), 1)
    bits = top.bit_length() + 1
    shifts = [bits * i for i in range(n)]

    def pack(e):
        k = 0
        for a, s in zip(e, shifts):
            k |= a << s
        return k

    fa = [(pack(e), c) for e, c in f.terms.items()]
    ga = [(pack(e), c) for e, c in g.terms.items()]
    t = {}
    get = t.get
    for k1, c1 in fa:
        for k2, c2 in ga:
            k = k1 + k2
            t[k] = get(k, 0) + c1 * c2
    mask = (1 << bits) - 1
    out = {}
    for k, c in t.items():
        if c:
            out[tuple((k >> s) & mask for s in shifts)] = c
    return Poly(f.ring, out)


class RingMap:
    """A k-algebra map given by one image per source variable."""

    def __init__(self, source: PolyRing, target: PolyRing, images: Sequence[Poly],
                 graded: str | None = None):
        if len(images) != source.nvars:
            raise ValueError("need one image per source variable")
        self.source = source
        self.target = target
        self.images = tuple(target(p) for p in images)
        if graded is not None:
            for v, img in zip(source.variables, self.images):
                w = source.weights[graded][source.index[v]]
                if img and (not img.is_homogeneous(graded) or img.degree(graded) != w):
                    raise ValueError(f"image of {v} does not respect grading {graded!r}")

    def __call__(self, f: Poly) -> Poly:
        return f.subs(dict(zip(self.source.variables, self.images)), self.target)
