import pytest
from hypothesis import given, settings, strategies as st

from acikoszul.extend import (
    InhomogeneousElement,
    NotInMaximalIdeal,
    adjoin_sqrt,
    fresh_name,
    sqrt_tower,
)
from acikoszul.ring import (
    RingPresentation,
    is_aci,
    is_sop,
    m2_in_x,
    minimal_presentation,
    part_of_minimal_basis,
    standard_monomials_in_degree,
)
from conftest import corpus_ring

LINE = RingPresentation.from_strings(["y"], [])
PLANE = RingPresentation.from_strings("xy", [])
INTRO = RingPresentation.from_strings("xyz", ["x^2", "x*y", "x*z"])


def test_root_of_a_variable():
    ext = adjoin_sqrt(LINE, LINE.parse("y"))
    R = ext.result
    assert R.ring.names == ("X", "y")
    assert ext.doubled and R.ring.weights == (1, 2)
    assert R.dim == 1
    assert [str(g) for g in R.ideal] == ["X^2 - y"]


def test_even_degree_keeps_weights():
    ext = adjoin_sqrt(PLANE, PLANE.parse("x*y"))
    assert not ext.doubled
    assert ext.result.ring.weights == (1, 1, 1)


def test_pair_law_on_the_root():
    ext = adjoin_sqrt(PLANE, PLANE.parse("x^2 + y^2"))
    zero, one = PLANE.ring.zero(), PLANE.ring.one()
    assert ext.pair_multiply((zero, one), (zero, one)) == (ext.a, zero)
    X = ext.root
    assert ext.split(X * X) == (ext.a, zero)


def test_fresh_name_avoids_clashes():
    assert fresh_name(["x", "y"]) == "X"
    assert fresh_name(["X", "X_1"]) == "X_2"
    ext = adjoin_sqrt(RingPresentation.from_strings(["X"], []), RingPresentation.from_strings(["X"], []).parse("X^2"))
    assert ext.variable == "X_1"


def test_errors():
    with pytest.raises(NotInMaximalIdeal):
        adjoin_sqrt(PLANE, PLANE.parse("x + 1"))
    with pytest.raises(NotInMaximalIdeal):
        adjoin_sqrt(PLANE, PLANE.ring.zero())
    with pytest.raises(InhomogeneousElement):
        adjoin_sqrt(PLANE, PLANE.parse("x + y^2"))


def test_square_containment_passes_to_the_extension(ex39):
    R, x = ex39
    assert m2_in_x(R, x)
    ext = adjoin_sqrt(R, x[0])
    new_x = [ext.root] + [ext.embed(f) for f in x[1:]]
    assert m2_in_x(ext.result, new_x)
    assert is_sop(ext.result, new_x)


def test_tower_over_the_plane():
    T = sqrt_tower(PLANE, PLANE.ring.gens())
    R = T.result
    assert set(R.ring.names) == {"x", "y", "X1", "X2"}
    assert sorted(str(g) for g in R.ideal) == ["X1^2 - x", "X2^2 - y"]
    assert part_of_minimal_basis(R, T.roots)
    assert is_sop(R, T.roots)
    R_min, _ = minimal_presentation(R)
    assert R_min.nvars == 2 and R_min.ideal == ()


def test_tower_of_length_one_is_adjoin_sqrt():
    a = INTRO.parse("y")
    T = sqrt_tower(INTRO, [a], stem="X")
    ext = adjoin_sqrt(INTRO, a, "X1")
    assert T.result.ring == ext.result.ring
    assert T.result.ideal == ext.result.ideal
    assert T.roots == [ext.root]


def test_tower_over_intro():
    x = [INTRO.parse("y"), INTRO.parse("z")]
    T = sqrt_tower(INTRO, x)
    R = T.result
    assert T.doubled
    assert R.dim == 2
    assert is_sop(R, T.roots)
    assert m2_in_x(INTRO, x)
    assert m2_in_x(R, T.roots)
    assert part_of_minimal_basis(R, T.roots)


def test_push_maps_base_into_top(ex310):
    R, x = ex310
    T = sqrt_tower(R, x[:2])
    for g in R.ideal:
        assert not T.result.reduce(T.push(g))
    for root, f in zip(T.roots, x):
        assert not T.result.reduce(root * root - T.push(f))


# -- properties ------------------------------------------------------------------
def _base_elements(R, top=6):
    monos = [m for d in range(top + 1) for m in standard_monomials_in_degree(R.gb.leading_exponents(), R.ring.weights, d)]
    coeff = st.integers(-4, 4)
    return st.dictionaries(st.sampled_from(monos), coeff, max_size=4).map(R.ring.from_terms)


CASES = {
    "plane": (PLANE, "x^2 + x*y"),
    "intro": (INTRO, "y"),
    "cusp": (RingPresentation.from_strings("xy", ["x^3 - y^2"], [2, 3], 32003), "x*y"),
}


@pytest.mark.parametrize("case", sorted(CASES))
def test_pair_law_matches_normal_forms(case):
    R, a = CASES[case]
    ext = adjoin_sqrt(R, R.parse(a))
    elems = _base_elements(ext.base)

    @settings(max_examples=150)
    @given(elems, elems, elems, elems)
    def check(r, s, r2, s2):
        r, s, r2, s2 = (ext.base.reduce(v) for v in (r, s, r2, s2))
        product = ext.lift(r, s) * ext.lift(r2, s2)
        assert ext.split(product) == ext.pair_multiply((r, s), (r2, s2))

    check()


@pytest.mark.parametrize("case", sorted(CASES))
def test_extension_is_free_of_rank_two(case):
    R, a = CASES[case]
    ext = adjoin_sqrt(R, R.parse(a))
    base_leads = ext.base.gb.leading_exponents()
    top_leads = ext.result.gb.leading_exponents()
    wx = ext.result.ring.weights[0]
    wb = ext.base.ring.weights
    for d in range(12):
        top = standard_monomials_in_degree(top_leads, ext.result.ring.weights, d)
        expected = [(0,) + m for m in standard_monomials_in_degree(base_leads, wb, d)]
        expected += [(1,) + m for m in standard_monomials_in_degree(base_leads, wb, d - wx)] if d >= wx else []
        assert sorted(top) == sorted(expected)


@pytest.mark.parametrize("name", ["intro", "example39", "example310"])
def test_towers_over_corpus(name):
    R, x = corpus_ring(name)
    aci = is_aci(R)
    for l in range(1, min(3, len(x)) + 1):
        T = sqrt_tower(R, x[:l])
        top = T.result
        assert top.dim == R.dim
        new_x = T.roots + [T.push(f) for f in x[l:]]
        assert is_sop(top, new_x)
        assert part_of_minimal_basis(top, T.roots)
        small, _ = minimal_presentation(top)
        assert is_aci(small) == aci


def test_tower_validates_every_element():
    with pytest.raises(InhomogeneousElement):
        sqrt_tower(PLANE, [PLANE.parse("x"), PLANE.parse("x + y^2")])
    with pytest.raises(NotInMaximalIdeal):
        sqrt_tower(PLANE, [PLANE.parse("y + 1")])
