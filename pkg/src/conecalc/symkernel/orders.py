"""Packed integer encoding of monomials under a matrix term order.

A monomial with exponent vector ``e`` is stored as a single Python int::

    key(e) = [row_0 . e + OFF] ... [row_{R-1} . e + OFF] [e_0] ... [e_{n-1}]

The leading fields are the order rows (32 bits each, offset so that negative
weights are allowed), the trailing fields are the raw exponents (16 bits
each, top bit reserved as a guard).  Consequences:

* integer comparison of keys is the monomial order (the raw exponent
  fields, read most-significant first, break ties lexicographically);
* ``key(a + b) == key(a) + key(b) - order.const``, so multiplying a
  polynomial by a monomial is a shift of every key;
* divisibility is one subtraction with the guard bits.
"""

from __future__ import annotations

from functools import lru_cache

EXP_BITS = 16
EXP_MAX = (1 << (EXP_BITS - 1)) - 1
ROW_BITS = 32
ROW_OFF = 1 << (ROW_BITS - 1)


class ExponentOverflow(ArithmeticError):
    pass


class Order:
    """A term order on ``nvars`` variables given by integer weight rows.

    Ties after all rows are broken by lex on the raw exponents, so any list
    of rows (even an empty one) defines a total monomial order as long as
    the first nonzero entry of every column is positive.
    """

    __slots__ = ("nvars", "rows", "name", "const", "low", "guard",
                 "_shifts", "_row_shift", "_units")

    def __init__(self, nvars: int, rows, name: str = "custom"):
        self.nvars = nvars
        self.rows = tuple(tuple(int(w) for w in r) for r in rows)
        for r in self.rows:
            if len(r) != nvars:
                raise ValueError("order row has wrong length")
        self.name = name
        self._shifts = tuple(EXP_BITS * (nvars - 1 - i) for i in range(nvars))
        self._row_shift = EXP_BITS * nvars
        nrows = len(self.rows)
        self.const = sum(ROW_OFF << (self._row_shift + ROW_BITS * (nrows - 1 - r))
                         for r in range(nrows))
        self.low = (1 << (EXP_BITS * nvars)) - 1
        self.guard = sum((1 << (EXP_BITS - 1)) << s for s in self._shifts)
        # key(e) = const + sum_i e_i * units[i], by additivity of keys
        self._units = tuple(self._encode_slow([1 if j == i else 0 for j in range(nvars)])
                            - self.const for i in range(nvars))

    def __eq__(self, other):
        return isinstance(other, Order) and (self.nvars, self.rows) == (other.nvars, other.rows)

    def __hash__(self):
        return hash((self.nvars, self.rows))

    def __repr__(self):
        return f"Order({self.name}, nvars={self.nvars})"

    def encode(self, exps) -> int:
        if max(exps, default=0) > EXP_MAX:
            raise ExponentOverflow(f"exponent {max(exps)} exceeds {EXP_MAX}")
        key = self.const
        for e, u in zip(exps, self._units):
            if e:
                key += e * u
        return key

    def _encode_slow(self, exps) -> int:
        key = 0
        for e, s in zip(exps, self._shifts):
            if e > EXP_MAX:
                raise ExponentOverflow(f"exponent {e} exceeds {EXP_MAX}")
            key |= e << s
        nrows = len(self.rows)
        for r, row in enumerate(self.rows):
            v = ROW_OFF
            for w, e in zip(row, exps):
                if w:
                    v += w * e
            key += v << (self._row_shift + ROW_BITS * (nrows - 1 - r))
        return key

    def decode(self, key: int) -> tuple:
        return tuple((key >> s) & 0xFFFF for s in self._shifts)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b & self.low) | g) - (a & self.low)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))

    def degree(self, key: int) -> int:
        return sum(self.decode(key))


def grevlex_rows(n: int, indices=None):
    idx = list(range(n)) if indices is None else list(indices)
    if not idx:
        return []
    rows = []
    first = [0] * n
    for i in idx:
        first[i] = 1
    rows.append(first)
    for i in reversed(idx[1:]):
        r = [0] * n
        r[i] = -1
        rows.append(r)
    return rows


@lru_cache(maxsize=None)
def make_order(nvars: int, kind: str, block: tuple = (), weights: tuple = (),
               last: int = -1) -> Order:
    """Build one of the supported orders.

    kind: ``lex``, ``grevlex``, ``elim`` (``block`` indices are eliminated
    and compared first, grevlex inside each block), ``elimw`` (degree in
    the block first, then grevlex on everything; also an elimination order
    and far kinder to coefficients in module computations) or ``wrevlex`` (weight
    vector ``weights`` first, then smallest power of variable ``last``,
    then grevlex; used for quotients by a variable of a weighted-homogeneous
    ideal).
    """
    if kind == "lex":
        return Order(nvars, [], "lex")
    if kind == "grevlex":
        return Order(nvars, grevlex_rows(nvars), "grevlex")
    if kind == "elim":
        blk = sorted(block)
        rest = [i for i in range(nvars) if i not in set(blk)]
        rows = grevlex_rows(nvars, blk) + grevlex_rows(nvars, rest)
        return Order(nvars, rows, f"elim{tuple(blk)}")
    if kind == "elimw":
        blk = set(block)
        ind = [1 if i in blk else 0 for i in range(nvars)]
        return Order(nvars, [ind] + grevlex_rows(nvars), f"elimw{tuple(sorted(blk))}")
    if kind == "wrevlex":
        r = [0] * nvars
        r[last] = -1
        return Order(nvars, [list(weights), r] + grevlex_rows(nvars), f"wrevlex[{last}]")
    raise ValueError(f"unknown order kind {kind!r}")
