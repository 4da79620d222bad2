import importlib
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, settings, strategies as st

from conecalc.chowcalc import (ChernPoly, ChowClass, DimensionMismatch, GenericityError,
                               MultidegreeConfig, NonUnitInverse, NotBihomogeneous, NotSaturated,
                               VirtualBundle, cap, chern_arith, multidegree, segre_class)
from conecalc.linecone import Cone, free_space, full_cone, normal_cone, zero_cone
from conecalc.symkernel import Ideal, PolyRing, dimension_degree
from conecalc.vfclasses import SectionConfig, cone_dimension, random_section
from oracles import (CONIC_SEGRE, CUBE_POINT_SEGRE_DEGREE, FAT_POINT_SEGRE_DEGREE,
                     TWISTED_CUBIC_SEGRE, segre_oracle)

md_module = importlib.import_module("conecalc.chowcalc.multidegree")

P2 = PolyRing(["x0", "x1", "x2"])
P3 = PolyRing(["x0", "x1", "x2", "x3"])
CONIC = Ideal(P2, ["x0*x2 - x1^2"])
TWISTED_CUBIC = Ideal(P3, ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"])
# affine (x, y)^k homogenized into P^2 with w the hyperplane at infinity
PW = PolyRing(["w", "x", "y"])


def cls(*coeffs):
    """Class from coefficients listed from [P^0] upwards."""
    return ChowClass(len(coeffs) - 1, coeffs)


def cp(n, *coeffs):
    return ChernPoly(n, coeffs)


# ---------------------------------------------------------------- Chern series

def test_inverse_is_the_geometric_series():
    assert chern_arith("inverse", cp(2, 1, 1)) == cp(2, 1, -1, 1)


def test_total_chern_class_of_twists():
    assert chern_arith("total", [1, 1], ambient_dim=2) == cp(2, 1, 2, 1)


def test_virtual_bundle():
    assert chern_arith("of_virtual", [1, 1], [2], ambient_dim=2) == cp(2, 1, 0, 1)
    v = VirtualBundle(plus=[1, 1], minus=[2])
    assert v.rank == 1 and chern_arith("of_virtual", v, ambient_dim=2) == cp(2, 1, 0, 1)


def test_product_and_projective_tangent():
    assert chern_arith("product", cp(3, 1, 1), cp(3, 1, 1), cp(3, 1, 1), cp(3, 1, 1)) \
        == ChernPoly.projective_tangent(3) == cp(3, 1, 4, 6, 4)


def test_non_unit_inverse():
    with pytest.raises(NonUnitInverse):
        chern_arith("inverse", cp(2, 2, 1))


def test_mismatched_ambients():
    with pytest.raises(DimensionMismatch):
        cp(2, 1, 1) * cp(3, 1, 1)
    with pytest.raises(DimensionMismatch):
        cap(cp(2, 1), cls(0, 1))


def test_unknown_chern_operation():
    with pytest.raises(ValueError):
        chern_arith("sqrt", cp(2, 1))


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def series(n):
    return st.lists(fractions, min_size=n, max_size=n).map(lambda c: ChernPoly(n, [1] + c))


def classes(n):
    return st.lists(fractions, min_size=n + 1, max_size=n + 1).map(lambda c: ChowClass(n, c))


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(series(n), series(n), classes(n))))
def test_cap_is_associative(args):
    c, d, a = args
    assert cap(c, cap(d, a)) == cap(chern_arith("product", c, d), a)


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(series(n), classes(n))))
def test_inverse_undoes_cap(args):
    c, a = args
    assert cap(c.inverse(), cap(c, a)) == a
    assert cap(ChernPoly.one(c.ambient_dim), a) == a


# ---------------------------------------------------------------- classes

def test_cap_example():
    assert cap(cp(2, 1, 3, 3), cls(-4, 2, 0)) == cls(2, 2, 0)


def test_class_json_roundtrip():
    a = cls(mpq(-1, 3), 0, 5)
    j = a.to_json()
    assert j == {"ambient": 2, "coeffs": {"0": "-1/3", "1": "0", "2": "5"}}
    assert ChowClass.from_json(j) == a


def test_class_printing():
    assert str(cls(3, -1, 1)) == "[P^2] - [P^1] + 3[P^0]"
    assert str(ChowClass.zero(2)) == "0"


@given(st.integers(0, 4).flatmap(classes))
def test_parts_sum_to_the_class(a):
    total = ChowClass.zero(a.ambient_dim)
    for m in range(a.ambient_dim + 1):
        total = total + a.part(m)
    assert total == a


# ---------------------------------------------------------------- multidegrees

P1P1 = PolyRing(["x0", "x1", "y0", "y1"])


def test_multidegree_of_the_diagonal():
    md = multidegree(Ideal(P1P1, ["x0*y1 - x1*y0"]), ["x0", "x1"], ["y0", "y1"])
    assert md.dim == 1 and md.nonzero() == {(1, 0): 1, (0, 1): 1}


def test_multidegree_of_the_product():
    md = multidegree(Ideal(P1P1, []), ["x0", "x1"], ["y0", "y1"])
    assert md.dim == 2 and md.nonzero() == {(1, 1): 1}


def test_multidegree_of_a_bidegree_2_1_curve():
    md = multidegree(Ideal(P1P1, ["x0^2*y0 + x1^2*y1"]), ["x0", "x1"], ["y0", "y1"])
    # the class (2 H1 + H2) in P^1 x P^1 meets H2 twice and H1 once
    assert md.nonzero() == {(1, 0): 1, (0, 1): 2}


def test_multidegree_rejects_unsaturated_input():
    with pytest.raises(NotSaturated):
        multidegree(Ideal(P1P1, ["x0*y0", "x1*y0"]), ["x0", "x1"], ["y0", "y1"])


def test_multidegree_rejects_inhomogeneous_input():
    with pytest.raises(NotBihomogeneous):
        multidegree(Ideal(P1P1, ["x0*y0 + x1"]), ["x0", "x1"], ["y0", "y1"])


@settings(max_examples=10)
@given(st.integers(0, 10 ** 9))
def test_multidegree_does_not_depend_on_the_seed(seed):
    J = Ideal(P1P1, ["x0^2*y0 + x1^2*y1"])
    base = multidegree(J, ["x0", "x1"], ["y0", "y1"])
    assert multidegree(J, ["x0", "x1"], ["y0", "y1"], config=MultidegreeConfig(seed=seed)) == base


def test_seed_disagreement_is_a_genericity_failure(monkeypatch):
    calls = iter(range(10 ** 6))
    monkeypatch.setattr(md_module, "_attempt", lambda *a: (0, [[next(calls)]]))
    with pytest.raises(GenericityError, match="genericity failure"):
        multidegree(Ideal(P1P1, []), ["x0", "x1"], ["y0", "y1"])


# ---------------------------------------------------------------- Segre classes

@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_section_of_projective_space(n):
    R = PolyRing([f"x{i}" for i in range(n + 1)])
    s = segre_class(zero_cone(free_space(R, ["Y"], twists=[1])))
    assert s == ChowClass.linear(n, n)
    # c(T) cap s reproduces c(T_P^n) cap [P^n], whose coefficients are binomials
    want = ChowClass(n, [comb(n + 1, n - m) for m in range(n + 1)])
    assert cap(ChernPoly.projective_tangent(n), s) == want


def test_conic_segre_class():
    s = segre_class(normal_cone(CONIC))
    assert s == cls(*CONIC_SEGRE, 0)
    assert s == segre_oracle(normal_cone(CONIC))


def test_twisted_cubic_segre_class():
    C = normal_cone(TWISTED_CUBIC)
    assert segre_class(C) == cls(*TWISTED_CUBIC_SEGRE, 0, 0)
    assert segre_oracle(C) == segre_class(C)


@pytest.mark.parametrize("k, degree", [(2, FAT_POINT_SEGRE_DEGREE), (3, CUBE_POINT_SEGRE_DEGREE)])
def test_power_of_point_segre_degree(k, degree):
    gens = [f"x^{i}*y^{k - i}" for i in range(k + 1)]
    C = normal_cone(Ideal(PW, gens))
    s = segre_class(C)
    assert s == cls(degree, 0, 0)
    assert segre_oracle(C) == s


def test_segre_of_a_point_follows_the_square_law():
    for k in (1, 2, 4):
        C = normal_cone(Ideal(PW, [f"x^{i}*y^{k - i}" for i in range(k + 1)]))
        assert segre_class(C)[0] == k * k


@pytest.mark.parametrize("base, twists, fundamental", [
    (Ideal(P2, []), [1], cls(0, 0, 1)),
    (Ideal(P2, []), [1, 2], cls(0, 0, 1)),
    (CONIC, [2], cls(0, 2, 0)),
    (CONIC, [1, 1], cls(0, 2, 0)),
    (TWISTED_CUBIC, [2, 2], cls(0, 3, 0, 0)),
])
def test_segre_of_a_split_bundle_is_the_inverse_chern_class(base, twists, fundamental):
    L = free_space(base.ring, [f"Y{i}" for i in range(len(twists))], base, twists)
    n = base.ring.nvars - 1
    c = chern_arith("total", twists, ambient_dim=n)
    assert segre_class(full_cone(L)) == cap(chern_arith("inverse", c), fundamental)


def test_redundant_generators_do_not_change_the_segre_class():
    C = normal_cone(TWISTED_CUBIC)
    extra = [g * C.ring.var(v) for g in C.ideal.gens[:2] for v in ("x0", C.ambient.coords[0])]
    C2 = Cone(C.ambient, list(C.ideal.gens) + extra).saturate()
    assert segre_class(C2) == segre_class(C)


def test_segre_needs_a_projective_base():
    R = PolyRing(["x", "y"])
    with pytest.raises(ValueError):
        segre_class(normal_cone(Ideal(R, ["x - y^2"])))


section_seeds = st.integers(0, 10 ** 6)


@settings(max_examples=25)
@given(section_seeds, st.sampled_from([2, 3]))
def test_segre_matches_the_k_polynomial_oracle(seed, n):
    X, ns = random_section(seed, SectionConfig(n=n))
    assume(len(set(ns.twists)) == 1)
    C = normal_cone(X.ideal, ns.sections, twists=ns.twists)
    assert segre_class(C) == segre_oracle(C)


@settings(max_examples=25)
@given(section_seeds, st.sampled_from([2, 3]))
def test_segre_vanishes_above_the_support(seed, n):
    X, ns = random_section(seed, SectionConfig(n=n))
    C = normal_cone(X.ideal, ns.sections, twists=ns.twists)
    s = segre_class(C)
    assert cone_dimension(C) == n
    # nothing above dim X; the top part is a positive multiple of the top components
    d = dimension_degree(X.ideal)[0] - 1
    assert all(s[m] == 0 for m in range(d + 1, n + 1))
    assert s[d] > 0
