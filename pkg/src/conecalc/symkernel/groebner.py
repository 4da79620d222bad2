"""Buchberger's algorithm on packed-key polynomials.

Polynomials here are plain dicts ``{key: mpq}`` in the encoding of
:mod:`conecalc.symkernel.orders`.  The public wrappers in
:mod:`conecalc.symkernel.ideal` convert to and from :class:`Poly`.
"""

from __future__ import annotations

from gmpy2 import gcd, lcm, mpq, mpz

from .orders import Order

DEFAULT_PAIR_LIMIT = 500_000


class GroebnerLimitError(RuntimeError):
    """Raised when Buchberger exceeds its configured pair budget."""


def monic(f: dict) -> dict:
    lt = max(f)
    c = f[lt]
    if c == 1:
        return f
    inv = 1 / c
    return {k: v * inv for k, v in f.items()}


def reduce(f: dict, basis, order: Order, tail: bool = True) -> dict:
    """Remainder of ``f`` on division by ``basis``.

    ``basis`` is a sequence of ``(lm, g)`` with ``g`` monic and ``lm`` its
    leading key.  With ``tail=False`` only the leading term is reduced.
    """
    f = dict(f)
    rem = {}
    low, guard = order.low, order.guard
    divs = [((lm & low), lm, g) for lm, g in basis]
    while f:
        lt = max(f)
        c = f[lt]
        probe = (lt & low) | guard
        for lml, lm, g in divs:
            if (probe - lml) & guard == guard:
                delta = lt - lm
                get = f.get
                for k, cg in g.items():
                    nk = k + delta
                    v = get(nk)
                    if v is None:
                        f[nk] = -c * cg
                    else:
                        v -= c * cg
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
                break
        else:
            rem[lt] = c
            del f[lt]
            if not tail:
                rem.update(f)
                break
    return rem


# Internally Buchberger runs on primitive integer polynomials: rational
# monic arithmetic suffers badly from coefficient swell in module problems.

def _content(f: dict):
    g = mpz(0)
    for v in f.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _primitive(f: dict) -> dict:
    g = _content(f)
    if f[max(f)] < 0:
        g = -g
    if g == 1:
        return f
    return {k: v // g for k, v in f.items()}


def _to_int(f: dict) -> dict:
    den = mpz(1)
    for v in f.values():
        den = lcm(den, mpq(v).denominator)
    return _primitive({k: mpz(mpq(v) * den) for k, v in f.items()})


def _to_monic(f: dict) -> dict:
    c = f[max(f)]
    return {k: mpq(v, c) for k, v in f.items()}


def _ireduce(f: dict, basis, order: Order, tail: bool = True) -> dict:
    """Integer analogue of :func:`reduce`; returns a primitive remainder."""
    f = dict(f)
    rem = {}
    low, guard = order.low, order.guard
    divs = [((lm & low), lm, g, g[lm]) for lm, g in basis]
    steps = 0
    while f:
        lt = max(f)
        c = f[lt]
        probe = (lt & low) | guard
        for lml, lm, g, gc in divs:
            if (probe - lml) & guard == guard:
                d = gcd(c, gc)
                a, b = gc // d, c // d
                if a != 1:
                    f = {k: a * v for k, v in f.items()}
                    if rem:
                        rem = {k: a * v for k, v in rem.items()}
                delta = lt - lm
                get = f.get
                for k, cg in g.items():
                    nk = k + delta
                    v = get(nk)
                    if v is None:
                        f[nk] = -b * cg
                    else:
                        v -= b * cg
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
                steps += 1
                if steps % 8 == 0 and f:
                    cc = gcd(_content(f), _content(rem)) if rem else _content(f)
                    if cc > 1:
                        f = {k: v // cc for k, v in f.items()}
                        rem = {k: v // cc for k, v in rem.items()}
                break
        else:
            rem[lt] = c
            del f[lt]
            if not tail:
                rem.update(f)
                break
    return _primitive(rem) if rem else rem


# Arithmetic over Z/p, used for counting points of generic slices.

def _mod_monic(f: dict, p: int) -> dict:
    inv = pow(int(f[max(f)]), -1, p)
    return {k: v * inv % p for k, v in f.items()}


def _to_mod(f: dict, p: int) -> dict:
    out = {}
    for k, v in f.items():
        q = mpq(v)
        r = int(q.numerator) * pow(int(q.denominator), -1, p) % p
        if r:
            out[k] = r
    return _mod_monic(out, p) if out else out


def _mreduce(f: dict, basis, order: Order, p: int, tail: bool = True) -> dict:
    """:func:`reduce` over Z/p; ``basis`` elements are monic."""
    f = dict(f)
    rem = {}
    low, guard = order.low, order.guard
    divs = [((lm & low), lm, g) for lm, g in basis]
    while f:
        lt = max(f)
        c = f[lt]
        probe = (lt & low) | guard
        for lml, lm, g in divs:
            if (probe - lml) & guard == guard:
                delta = lt - lm
                get = f.get
                for k, cg in g.items():
                    nk = k + delta
                    v = (get(nk, 0) - c * cg) % p
                    if v:
                        f[nk] = v
                    else:
                        f.pop(nk, None)
                break
        else:
            rem[lt] = c
            del f[lt]
            if not tail:
                rem.update(f)
                break
    return _mod_monic(rem, p) if rem else rem


def _mspoly(f: dict, lf: int, g: dict, lg: int, L: int, p: int) -> dict:
    df = L - lf
    dg = L - lg
    s = {k + df: c for k, c in f.items()}
    get = s.get
    for k, c in g.items():
        nk = k + dg
        v = (get(nk, 0) - c) % p
        if v:
            s[nk] = v
        else:
            s.pop(nk, None)
    return s


def _spoly(f: dict, lf: int, g: dict, lg: int, L: int) -> dict:
    fc, gc = f[lf], g[lg]
    d = gcd(fc, gc)
    a, b = gc // d, fc // d
    df = L - lf
    dg = L - lg
    s = {k + df: a * c for k, c in f.items()}
    get = s.get
    for k, c in g.items():
        nk = k + dg
        v = get(nk)
        if v is None:
            s[nk] = -b * c
        else:
            v -= b * c
            if v:
                s[nk] = v
            else:
                del s[nk]
    return s


def _sugar(f: dict, order: Order) -> int:
    return max(order.degree(k) for k in f)


def groebner(polys, order: Order, pair_limit: int = DEFAULT_PAIR_LIMIT, positions=None,
             modulus: int | None = None):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Normal selection strategy with sugar, Gebauer-Moeller installation of
    the product and chain criteria.  Output is a list of monic dicts sorted
    by decreasing leading monomial, so it is a canonical form of the ideal
    for the given order.

    ``positions`` (variable indices) switches to module mode: every input
    is linear in those variables and only pairs whose leading monomials
    share the same one are formed.  The result is the Groebner basis of the
    module, i.e. of the ideal plus all quadratic monomials in the block,
    without those monomials.

    With ``modulus`` a prime p the computation runs over Z/p and the output
    holds monic polynomials with int coefficients in [0, p).
    """
    if modulus is None:
        red, spoly, finish = _ireduce, _spoly, _to_monic
        polys = [_to_int(p) for p in polys if p]
    else:
        P = modulus
        red = lambda f, basis, order, tail=True: _mreduce(f, basis, order, P, tail)  # noqa: E731
        spoly = lambda f, lf, g, lg, L: _mspoly(f, lf, g, lg, L, P)  # noqa: E731
        finish = lambda f: f  # noqa: E731
        polys = [_to_mod(p, P) for p in polys if p]
        polys = [p for p in polys if p]
    if not polys:
        return []
    store = []   # (lm, poly, sugar, lm_exps)
    active = []  # indices into store forming the current basis
    pairs = []   # (sugar, lcm, i, j)

    def position(e):
        for i in positions:
            if e[i]:
                return i
        return None

    def install(h, sugar):
        lh = max(h)
        eh = order.decode(lh)
        store.append((lh, h, sugar, eh))
        ih = len(store) - 1
        lcm_of = {}
        cand = []
        ph = position(eh) if positions else None
        for ig in active:
            eg = store[ig][3]
            if ph is not None and eg[ph] == 0:
                continue
            lcm_of[ig] = order.encode(tuple(map(max, eh, eg)))
            cand.append(ig)
        # chain criterion among new pairs (Gebauer-Moeller M and F)
        keep = []
        for ig in cand:
            eg = store[ig][3]
            cop = not any(a and b for a, b in zip(eh, eg))
            L = lcm_of[ig]
            if cop:
                keep.append((ig, L, True))
                continue
            dominated = False
            for ig2 in cand:
                if ig2 == ig:
                    continue
                L2 = lcm_of[ig2]
                if L2 != L and order.divides(L2, L):
                    dominated = True
                    break
                if L2 == L and ig2 < ig:
                    dominated = True
                    break
            if not dominated:
                keep.append((ig, L, False))
        # product criterion: a coprime pair kills every pair with its lcm
        coprime_lcms = {L for ig, L, cop in keep if cop}
        new_pairs = []
        for ig, L, cop in keep:
            if cop or L in coprime_lcms:
                continue
            sg = store[ig][2]
            s = max(sugar, sg + order.degree(L) - order.degree(store[ig][0]))
            s = max(s, sugar + order.degree(L) - order.degree(lh))
            new_pairs.append((s, L, ig, ih))
        # B criterion on old pairs
        kept_old = []
        for p in pairs:
            _, L, i, j = p
            if order.divides(lh, L):
                Li = lcm_of.get(i)
                Lj = lcm_of.get(j)
                if Li is None:
                    Li = order.lcm(store[i][0], lh)
                if Lj is None:
                    Lj = order.lcm(store[j][0], lh)
                if Li != L and Lj != L:
                    continue
            kept_old.append(p)
        pairs[:] = kept_old + new_pairs
        active[:] = [ig for ig in active if not order.divides(lh, store[ig][0])] + [ih]

    for p in sorted(polys, key=max):
        basis = [(store[i][0], store[i][1]) for i in active]
        h = red(p, basis, order, tail=False) if basis else p
        if h:
            install(h, _sugar(p, order))

    processed = 0
    while pairs:
        idx = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        s, L, i, j = pairs.pop(idx)
        processed += 1
        if processed > pair_limit:
            raise GroebnerLimitError(f"pair budget {pair_limit} exhausted")
        sp = spoly(store[i][1], store[i][0], store[j][1], store[j][0], L)
        if not sp:
            continue
        basis = [(store[k][0], store[k][1]) for k in active]
        h = red(sp, basis, order)
        if h:
            install(h, s)

    # minimalize then interreduce
    elems = sorted(((store[i][0], store[i][1]) for i in active), key=lambda t: t[0])
    minimal = []
    for lm, g in elems:
        if not any(order.divides(lm2, lm) for lm2, _ in minimal):
            minimal.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        # lm is not divisible by any other leading monomial, so only the
        # tail is touched
        r = red(g, others, order) if others else g
        out.append(finish(r))
    out.sort(key=max, reverse=True)
    return out


def normal_form(f: dict, gb, order: Order) -> dict:
    return reduce(f, [(max(g), g) for g in gb], order)
