import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from conecalc.symkernel import (Ideal, ModuleMap, Poly, PolyRing, PolySyntaxError,
                                PresentedModule, RingMap, UnitIdealError, UnknownVariable,
                                buchberger, contained, dimension_degree, dimension_degree_mod,
                                eliminate, equal, ideal_ops, ideal_sum, intersect, lift,
                                map_diagnostics, membership, minimal_generators, module_gb,
                                poly_parse, poly_str,
                                power, preimage, product, quotient, saturate, syzygies)
from conecalc.symkernel.groebner import groebner
from conecalc.symkernel.poly import _packed_mul
from strategies import forms, nonzero_polys, polys

R2 = PolyRing(["x", "y"])
R3 = PolyRing(["x", "y", "z"])


# ---------------------------------------------------------------- grammar

def test_parse_reads_terms():
    p = poly_parse("x^2 - 2*x*y", R2)
    assert p.terms == {(2, 0): 1, (1, 1): -2}


def test_parse_zero():
    assert not poly_parse("0", R2)


def test_parse_binomial_identity_cancels():
    assert not poly_parse("(x+y)^2 - x^2 - y^2 - 2*x*y", R2)


def test_parse_rationals_and_unary_minus():
    p = poly_parse("-3/6*x + -(y)^2", R2)
    assert p.terms == {(1, 0): mpq(-1, 2), (0, 2): -1}


def test_caret_binds_tighter_than_unary_minus():
    assert poly_parse("-x^2", R2) == -(R2.var("x") ** 2)


def test_syntax_error_reports_position():
    with pytest.raises(PolySyntaxError) as exc:
        poly_parse("x + * y", R2)
    assert exc.value.pos == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as exc:
        poly_parse("x + w", R2)
    assert exc.value.name == "w"


@given(polys(R3, max_deg=4, max_terms=6, coeffs=st.fractions(max_denominator=7)))
def test_print_parse_roundtrip(p):
    assert poly_parse(poly_str(p), R3) == p


def test_printing_sorted_by_ring_order():
    assert poly_str(R2("y^2 + x")) == "y^2 + x"
    assert poly_str(R2.with_order("lex")("y^2 + x")) == "x + y^2"


# ---------------------------------------------------------------- Groebner bases

def test_gb_single_monomial():
    assert buchberger(Ideal(R2, ["x"])) == (R2("x"),)


def test_gb_fat_point_is_its_generators():
    assert set(Ideal(R2, ["x^2", "x*y", "y^2"]).gb()) == {R2("x^2"), R2("x*y"), R2("y^2")}


def test_gb_elimination_of_the_veronese():
    R = PolyRing(["x", "y", "A", "B", "C"], "elim", block=["x", "y"])
    gb = Ideal(R, ["A - x^2", "B - x*y", "C - y^2"]).gb()
    free = [g for g in gb if not g.variables_used() & {"x", "y"}]
    assert len(free) == 1 and free[0] == R("B^2 - A*C").monic()


def _sympy_gb(gens, ring):
    syms = sympy.symbols(ring.variables)
    exprs = [sympy.sympify(poly_str(g).replace("^", "**"), dict(zip(ring.variables, syms)))
             for g in gens]
    G = sympy.groebner(exprs, *syms, order="grevlex")
    out = set()
    for e in G.exprs:
        p = sympy.Poly(e, *syms)
        lc = p.LC(order="grevlex")
        out.add(Poly(ring, {m: mpq(int(c.p), int(c.q)) / mpq(int(lc.p), int(lc.q))
                            for m, c in p.terms()}))
    return out


def test_cyclic4_matches_sympy():
    R = PolyRing(list("abcd"))
    gens = [R(s) for s in ["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b",
                           "a*b*c*d-1"]]
    assert set(Ideal(R, gens).gb()) == _sympy_gb(gens, R)


@given(st.lists(nonzero_polys(R3, max_deg=3, max_terms=3), min_size=1, max_size=3))
def test_gb_matches_sympy(gens):
    assert set(Ideal(R3, gens).gb()) == _sympy_gb(gens, R3)


def _is_reduced(gb):
    order = gb[0].ring.order
    lms = [order.encode(g.lm()) for g in gb]
    for g in gb:
        if g.lc() != 1:
            return False
        for e in g.terms:
            for h in gb:
                if h is not g and all(a >= b for a, b in zip(e, h.lm())):
                    return False
    return len(set(lms)) == len(lms)


@given(st.lists(nonzero_polys(R3, max_deg=3, max_terms=3), min_size=1, max_size=3),
       st.sampled_from(["grevlex", "lex"]))
def test_gb_is_reduced_and_certified(gens, order):
    ring = R3.with_order(order)
    gens = [g.to(ring) for g in gens]
    I = Ideal(ring, gens)
    gb = I.gb()
    assert _is_reduced(gb)
    # every generator reduces to zero
    assert all(not I.reduce(g) for g in gens)
    # every basis element is a combination of the generators, with explicit cofactors
    vecs = [(g,) for g in gens]
    for b in gb:
        c = lift(ring, vecs, 1, (b,))
        assert c is not None
        assert sum((ci * gi for ci, gi in zip(c, gens)), ring.zero()) == b


@given(st.lists(nonzero_polys(R3, max_deg=3, max_terms=3), min_size=1, max_size=3))
def test_gb_is_deterministic(gens):
    a = Ideal(R3, gens).gb()
    b = Ideal(R3, list(gens)).gb()
    assert a == b


@given(st.lists(nonzero_polys(R3, max_deg=3, max_terms=3), min_size=1, max_size=3))
def test_mod_p_leading_terms_agree_with_rational(gens):
    order = R3.order
    I = Ideal(R3, gens)
    lead_q = sorted(g.lm() for g in I.gb())
    gb_p = groebner([g.keyed(order) for g in gens], order, modulus=2_147_483_647)
    lead_p = sorted(order.decode(max(g)) for g in gb_p)
    assert lead_q == lead_p


# ---------------------------------------------------------------- ideal operations

def test_saturate_example():
    assert equal(saturate(Ideal(R3, ["x*y", "x*z"]), Ideal(R3, ["x"])), Ideal(R3, ["y", "z"]))


def test_membership_example():
    assert membership(R2("x^2"), Ideal(R2, ["x"]))
    assert not membership(R2("y"), Ideal(R2, ["x"]))


def test_preimage_example():
    U = PolyRing(["u"])
    phi = RingMap(U, R2, [R2("x^2")])
    assert equal(preimage(phi, Ideal(R2, ["x^2"])), Ideal(U, ["u"]))


def test_ideal_ops_dispatch():
    I, J = Ideal(R2, ["x"]), Ideal(R2, ["y"])
    assert ideal_ops("equal", ideal_ops("product", I, J), Ideal(R2, ["x*y"]))
    assert ideal_ops("equal", ideal_ops("sum", I, J), Ideal(R2, ["x", "y"]))
    assert ideal_ops("equal", ideal_ops("power", ideal_ops("sum", I, J), 2),
                     Ideal(R2, ["x^2", "x*y", "y^2"]))
    assert ideal_ops("equal", ideal_ops("quotient", Ideal(R2, ["x*y"]), I), J)
    with pytest.raises(ValueError):
        ideal_ops("radical", I)


def test_intersection_and_quotient():
    I = intersect(Ideal(R2, ["x"]), Ideal(R2, ["y"]))
    assert equal(I, Ideal(R2, ["x*y"]))
    assert equal(quotient(Ideal(R2, ["x^2", "x*y"]), Ideal(R2, ["x"])), Ideal(R2, ["x", "y"]))


def test_eliminate_leaves_no_block_variable():
    I = Ideal(R3, ["x - y^2", "z - x*y"])
    E = eliminate(I, ["y"])
    assert E.gens and all("y" not in g.variables_used() for g in E.gens)
    assert equal(Ideal(R3, E.gens), Ideal(R3, ["z^2 - x^3"]))


ideals3 = st.lists(nonzero_polys(R3, max_deg=2, max_terms=3), min_size=1, max_size=3).map(
    lambda g: Ideal(R3, g))


@given(ideals3, ideals3)
def test_equal_is_reflexive_and_symmetric(I, J):
    assert equal(I, I)
    assert equal(I, ideal_sum(I, Ideal(R3, [])))
    assert equal(I, J) == equal(J, I)


@given(ideals3)
def test_saturation_is_idempotent(I):
    J = Ideal(R3, ["x"])
    S = saturate(I, J)
    assert equal(saturate(S, J), S)
    assert contained(I, S)


@given(ideals3, ideals3)
def test_product_inside_intersection(I, J):
    assert contained(product(I, J), intersect(I, J))


def test_power_of_maximal_ideal():
    assert equal(power(Ideal(R2, ["x", "y"]), 3),
                 Ideal(R2, ["x^3", "x^2*y", "x*y^2", "y^3"]))


# ---------------------------------------------------------------- dimension and degree

def test_dimension_degree_examples():
    assert dimension_degree(Ideal(R2, ["x^2", "x*y", "y^2"])) == (0, 3)
    assert dimension_degree(Ideal(R2, [])) == (2, 1)
    RA = PolyRing(["A", "B", "C"])
    assert dimension_degree(Ideal(RA, ["B^2 - A*C"])) == (2, 2)
    with pytest.raises(UnitIdealError):
        dimension_degree(Ideal(R2, ["1"]))


@given(st.lists(nonzero_polys(R2, max_deg=3, max_terms=3), min_size=1, max_size=2))
def test_adjoining_a_variable_adds_one_to_dimension(gens):
    I = Ideal(R2, gens)
    if I.is_unit():
        return
    d, deg = dimension_degree(I)
    assert dimension_degree(Ideal(R3, [g.to(R3) for g in gens])) == (d + 1, deg)


@given(st.lists(nonzero_polys(R3, max_deg=2, max_terms=3), min_size=1, max_size=3))
def test_mod_p_dimension_degree_agrees(gens):
    I = Ideal(R3, gens)
    if I.is_unit():
        with pytest.raises(UnitIdealError):
            dimension_degree_mod(gens, R3, 2_147_483_647)
        return
    assert dimension_degree_mod(gens, R3, 2_147_483_647) == dimension_degree(I)


# ---------------------------------------------------------------- modules

def test_free_module_has_no_syzygies():
    assert module_gb(PresentedModule.free(R2, 2)) == []


def test_koszul_syzygy():
    syz = syzygies(R2, [(R2("x"),), (R2("y"),)], 1)
    assert len(syz) == 1
    a, b = syz[0]
    assert a * R2("x") + b * R2("y") == 0
    assert {a, b} == {R2("y"), -R2("x")} or {a, b} == {-R2("y"), R2("x")}


def test_conormal_relations_of_fat_point():
    from conecalc.symkernel import conormal_module
    I = Ideal(R2, ["x^2", "x*y", "y^2"])
    gens = list(I.gens)
    mod = conormal_module(I)
    for v in [(R2("y"), R2("-x"), R2.zero()), (R2.zero(), R2("y"), R2("-x"))]:
        assert mod.submodule_contains(list(mod.relations), v)
    # every relation of I/I^2 pairs the generators into I^2
    I2 = power(I, 2)
    for r in mod.relations:
        assert membership(sum((a * g for a, g in zip(r, gens)), R2.zero()), I2)
    assert not mod.is_zero_element(mod.unit(0))


def test_identity_map_diagnostics():
    M = PresentedModule.free(R2, 2)
    one, z = R2.one(), R2.zero()
    d = map_diagnostics(ModuleMap(M, M, [(one, z), (z, one)]))
    assert d.injective and d.surjective and d.kernel.n_generators == 0 and d.cokernel.is_zero()


def test_multiplication_by_T():
    RT = PolyRing(["T"])
    M = PresentedModule.free(RT, 1)
    d = map_diagnostics(ModuleMap(M, M, [(RT("T"),)]))
    assert d.injective and not d.surjective
    # cokernel is k[T]/(T): T kills its generator, 1 does not
    assert d.cokernel.is_zero_element((RT("T"),)) and not d.cokernel.is_zero_element((RT.one(),))


def test_map_to_the_maximal_ideal_is_not_surjective():
    F2, F1 = PresentedModule.free(R2, 2), PresentedModule.free(R2, 1)
    d = map_diagnostics(ModuleMap(F2, F1, [(R2("x"),), (R2("y"),)]))
    assert not d.surjective and not d.injective
    assert len(d.kernel_vectors) == 1
    a, b = d.kernel_vectors[0]
    assert a * R2("x") + b * R2("y") == 0


@given(st.lists(st.lists(polys(R2, max_deg=2, max_terms=2), min_size=2, max_size=2),
                min_size=1, max_size=3))
def test_composing_with_identity_preserves_diagnostics(cols):
    src = PresentedModule.free(R2, len(cols))
    tgt = PresentedModule.free(R2, 2)
    f = ModuleMap(src, tgt, cols)
    one, z = R2.one(), R2.zero()
    ident = ModuleMap(tgt, tgt, [(one, z), (z, one)])
    a, b = map_diagnostics(f), map_diagnostics(ident.compose(f))
    assert (a.injective, a.surjective) == (b.injective, b.surjective)
    if a.injective and a.surjective:
        assert a.kernel.n_generators == 0 and a.cokernel.is_zero()


# ---------------------------------------------------------------- arithmetic fast paths

def _naive_mul(f, g):
    t = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            t[e] = t.get(e, 0) + c1 * c2
    return Poly(f.ring, t)


@given(polys(R3, max_deg=6, max_terms=12), polys(R3, max_deg=6, max_terms=12))
def test_packed_product_matches_schoolbook(f, g):
    assert _packed_mul(f, g) == _naive_mul(f, g)


@given(polys(R3, max_deg=4, max_terms=8), polys(R2, max_deg=2, max_terms=3),
       polys(R2, max_deg=2, max_terms=3))
def test_substitution_matches_evaluation(f, a, b):
    images = {"x": a, "y": R2("y"), "z": b}
    got = f.subs(images, R2)
    want = R2.zero()
    for e, c in f.terms.items():
        want = want + R2.const(c) * a ** e[0] * R2("y") ** e[1] * b ** e[2]
    assert got == want


def test_minimal_generators_of_a_complete_intersection():
    I = Ideal(R3, ["x*y - z^2", "x^2 - y*z"])
    assert len(I.gb()) > 2
    mins = minimal_generators(I)
    assert len(mins) == 2 and equal(Ideal(R3, mins), I)


@given(st.lists(nonzero_polys(R3, max_deg=3, max_terms=3), min_size=1, max_size=4))
def test_minimal_generators_generate(gens):
    I = Ideal(R3, gens)
    mins = minimal_generators(I)
    assert equal(Ideal(R3, mins), I)
    if I.is_homogeneous():
        # no element lies in the ideal of the others
        for i in range(len(mins)):
            assert not Ideal(R3, mins[:i] + mins[i + 1:]).contains(mins[i])


@given(st.lists(st.integers(1, 3).flatmap(lambda d: forms(R3, d)), min_size=1, max_size=4))
def test_minimal_generators_of_forms_are_minimal(gens):
    I = Ideal(R3, gens)
    mins = minimal_generators(I)
    assert equal(Ideal(R3, mins), I)
    for i in range(len(mins)):
        assert not Ideal(R3, mins[:i] + mins[i + 1:]).contains(mins[i])
