"""Chow classes pushed forward to P^n and truncated Chern series in h."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq


class DimensionMismatch(ValueError):
    pass


class NonUnitInverse(ArithmeticError):
    pass


def _q(x) -> mpq:
    return mpq(x) if not isinstance(x, str) else mpq(x)


def q_str(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ChowClass:
    """sum_m coeffs[m] [P^m] in A_*(P^n)."""

    ambient_dim: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(_q(x) for x in self.coeffs)
        if len(c) != self.ambient_dim + 1:
            raise DimensionMismatch(f"need {self.ambient_dim + 1} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int) -> "ChowClass":
        return cls(n, (0,) * (n + 1))

    @classmethod
    def linear(cls, n: int, dim: int, degree=1) -> "ChowClass":
        """degree * [P^dim]."""
        c = [0] * (n + 1)
        if 0 <= dim <= n:
            c[dim] = degree
        return cls(n, c)

    @classmethod
    def from_dict(cls, n: int, d) -> "ChowClass":
        c = [0] * (n + 1)
        for k, v in d.items():
            c[int(k)] = _q(v)
        return cls(n, c)

    def __getitem__(self, m: int):
        return self.coeffs[m] if 0 <= m <= self.ambient_dim else mpq(0)

    def _check(self, other: "ChowClass"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("classes live in different projective spaces")

    def __add__(self, other: "ChowClass") -> "ChowClass":
        self._check(other)
        return ChowClass(self.ambient_dim, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        self._check(other)
        return ChowClass(self.ambient_dim, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ChowClass(self.ambient_dim, [-a for a in self.coeffs])

    def scale(self, c) -> "ChowClass":
        return ChowClass(self.ambient_dim, [c * a for a in self.coeffs])

    def part(self, dim: int) -> "ChowClass":
        """The dimension-``dim`` component; zero outside 0..n."""
        return ChowClass.linear(self.ambient_dim, dim, self[dim])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def degree(self):
        """Coefficient of the point class."""
        return self.coeffs[0]

    def top_dimension(self) -> int:
        nz = [m for m, c in enumerate(self.coeffs) if c]
        return max(nz) if nz else -1

    def to_json(self):
        return {"ambient": self.ambient_dim,
                "coeffs": {str(m): q_str(c) for m, c in enumerate(self.coeffs)}}

    @classmethod
    def from_json(cls, d) -> "ChowClass":
        return cls.from_dict(int(d["ambient"]), d["coeffs"])

    def __str__(self):
        def coeff(c):
            return "" if c == 1 else "-" if c == -1 else q_str(c)
        terms = [f"{coeff(c)}[P^{m}]" for m, c in reversed(list(enumerate(self.coeffs))) if c]
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class ChernPoly:
    """Truncated series coeffs[0] + coeffs[1] h + ... + coeffs[n] h^n."""

    ambient_dim: int
    coeffs: tuple

    def __post_init__(self):
        c = [_q(x) for x in self.coeffs][: self.ambient_dim + 1]
        c += [mpq(0)] * (self.ambient_dim + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one(cls, n: int) -> "ChernPoly":
        return cls(n, (1,))

    @classmethod
    def of_twists(cls, n: int, twists: Sequence[int]) -> "ChernPoly":
        """c(O(d_1) + ... + O(d_k)) = prod (1 + d_i h)."""
        out = cls.one(n)
        for d in twists:
            out = out * cls(n, (1, d))
        return out

    @classmethod
    def projective_tangent(cls, n: int) -> "ChernPoly":
        return cls.of_twists(n, [1] * (n + 1))

    def __getitem__(self, j: int):
        return self.coeffs[j] if 0 <= j <= self.ambient_dim else mpq(0)

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("Chern series on different projective spaces")

    def __mul__(self, other: "ChernPoly") -> "ChernPoly":
        self._check(other)
        n = self.ambient_dim
        out = [mpq(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return ChernPoly(n, out)

    def inverse(self) -> "ChernPoly":
        if self.coeffs[0] != 1:
            raise NonUnitInverse("only series with constant term 1 are inverted")
        n = self.ambient_dim
        inv = [mpq(1)] + [mpq(0)] * n
        for k in range(1, n + 1):
            inv[k] = -sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
        return ChernPoly(n, inv)

    def to_json(self):
        return {"ambient": self.ambient_dim, "coeffs": [q_str(c) for c in self.coeffs]}

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(q_str(c) if j == 0 else f"{q_str(c)}*h^{j}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class VirtualBundle:
    """plus - minus, each a list of line-bundle twists or an explicit ChernPoly."""

    plus: object = ()
    minus: object = ()

    @staticmethod
    def _rank(part):
        return len(part) if not isinstance(part, ChernPoly) else None

    @property
    def rank(self):
        a, b = self._rank(self.plus), self._rank(self.minus)
        return None if a is None or b is None else a - b

    @staticmethod
    def _chern(part, n: int) -> ChernPoly:
        if isinstance(part, ChernPoly):
            if part.ambient_dim != n:
                raise DimensionMismatch("Chern series on different projective spaces")
            return part
        return ChernPoly.of_twists(n, part)

    def chern(self, n: int) -> ChernPoly:
        return self._chern(self.plus, n) * self._chern(self.minus, n).inverse()


def chern_arith(kind: str, *args, ambient_dim: int | None = None) -> ChernPoly:
    """Dispatcher: total(twists) | inverse(c) | product(c, ...) | of_virtual(plus, minus)."""
    if kind == "total":
        (twists,) = args
        return ChernPoly.of_twists(ambient_dim, twists)
    if kind == "inverse":
        (c,) = args
        return c.inverse()
    if kind == "product":
        out = args[0]
        for c in args[1:]:
            out = out * c
        return out
    if kind == "of_virtual":
        if len(args) == 1:
            return args[0].chern(ambient_dim)
        plus, minus = args
        return VirtualBundle(plus, minus).chern(ambient_dim)
    raise ValueError(f"unknown Chern operation {kind!r}")


def cap(c: ChernPoly, a: ChowClass) -> ChowClass:
    """c ∩ a: capping with h^j lowers dimension by j."""
    if c.ambient_dim != a.ambient_dim:
        raise DimensionMismatch("Chern series and class on different projective spaces")
    n = a.ambient_dim
    return ChowClass(n, [sum(c[j] * a[m + j] for j in range(n + 1 - m)) for m in range(n + 1)])
