import pytest

from acikoszul.aci import (
    BadWitness,
    HypothesisNotMet,
    NotACI,
    SequenceHomology,
    TheoremViolation,
    acyclicity_certificate,
    analyze,
    chi2,
    classify_strong_hypothesis,
    depth,
    dutta_check,
    koszul_lengths,
    maximal_ideal_check,
    mult_defect_check,
    question1_verdict,
    serre_multiplicity,
    theorem_case,
    variables_annihilate,
)
from acikoszul.koszul import top_homology_index
from acikoszul.ring import NotSOP, RingPresentation, embdim_and_mu, socle_witnesses
from conftest import corpus_ring

INTRO = RingPresentation.from_strings("xyz", ["x^2", "x*y", "x*z"])
PLANE = RingPresentation.from_strings("xy", [])
CUBIC = RingPresentation.from_strings("abcd", ["a*c - b^2", "a*d - b*c", "b*d - c^2"], None, 32003)


def seq(R, *names):
    return [R.parse(t) for t in names]


# -- depth and multiplicity ------------------------------------------------------
def test_depth_examples(ex39):
    assert depth(INTRO) == 0
    assert depth(ex39[0]) == 4
    assert depth(PLANE) == 2
    assert depth(CUBIC) == 2


def test_serre_multiplicity_examples(ex310):
    assert serre_multiplicity(INTRO, seq(INTRO, "y", "z")) == 1
    assert serre_multiplicity(*ex310) == 3
    x = seq(CUBIC, "a", "d")
    assert serre_multiplicity(CUBIC, x) == koszul_lengths(CUBIC, x)[0] == 3


def test_serre_multiplicity_needs_sop():
    with pytest.raises(NotSOP):
        serre_multiplicity(INTRO, seq(INTRO, "x", "y"))


def test_chi2_values(ex39, ex310):
    assert chi2(INTRO, seq(INTRO, "y", "z")) == 1
    assert chi2(*ex39) == 1
    assert chi2(*ex310) == 0


# -- Dutta-type bound -------------------------------------------------------------
def test_dutta_examples(ex39, ex310):
    assert dutta_check(*ex39) == (1, True)
    x = seq(CUBIC, "a", "d")
    assert dutta_check(CUBIC, x) == (3, True)
    # not an almost complete intersection: the check refuses, lengths still give 4 - 1
    with pytest.raises(NotACI):
        dutta_check(*ex310)
    ls = koszul_lengths(*ex310)
    assert ls[0] - ls[1] == 3


# -- e >= dim - depth -------------------------------------------------------------
def test_mult_defect_examples(ex39):
    assert mult_defect_check(INTRO, seq(INTRO, "y", "z")) is False
    assert mult_defect_check(*ex39) is True
    assert mult_defect_check(CUBIC, seq(CUBIC, "a", "d")) is True
    assert mult_defect_check(PLANE, seq(PLANE, "x", "y")) is True


def test_theorem_case_rule():
    assert theorem_case(CUBIC, 9, 3)
    assert theorem_case(CUBIC, 2, 6)
    assert not theorem_case(CUBIC, 3, 4)


# -- socle annihilation ----------------------------------------------------------
def test_question1_passes_on_corpus(ex39, ex310):
    rep = question1_verdict(*ex39)
    assert rep.passed and rep.status == "ok" and rep.first_homology_ok
    assert sorted(rep.witnesses) == ["Z1", "Z2"]
    rep = question1_verdict(*ex310, require_aci=False)
    assert rep.passed and sorted(rep.witnesses) == ["Z1", "Z2", "Z3"]
    with pytest.raises(NotACI):
        question1_verdict(*ex310)


def test_question1_vacuous_on_cohen_macaulay_aci():
    rep = question1_verdict(CUBIC, seq(CUBIC, "a", "d"))
    assert rep.passed
    assert all(v == 0 for v in koszul_lengths(CUBIC, seq(CUBIC, "a", "d"))[1:])


def test_question1_observation_on_intro():
    rep = question1_verdict(INTRO, seq(INTRO, "y", "z"), require_aci=False)
    assert rep.witnesses == ["x"] and rep.passed


def test_residual_certificate_on_example39(ex39):
    R, x = ex39
    hom = SequenceHomology(R, x)
    for z in socle_witnesses(R, x):
        cert = acyclicity_certificate(R, x, z, hom)
        assert cert.verdict and cert.h0_ok and cert.colon_length == 1
        assert cert.annihilates == [True] * 6


def test_residual_certificate_regular_sequence():
    x = seq(PLANE, "x^2", "y")
    cert = acyclicity_certificate(PLANE, x, PLANE.parse("x"))
    assert cert.verdict and cert.annihilates == [True, True]


def test_residual_rejects_bad_witness(ex39):
    R, x = ex39
    with pytest.raises(BadWitness):
        acyclicity_certificate(R, x, R.parse("Y1"))
    with pytest.raises(BadWitness):
        acyclicity_certificate(R, x, R.ring.one())
    with pytest.raises(BadWitness):
        acyclicity_certificate(PLANE, seq(PLANE, "x^3", "y"), PLANE.parse("x"))


# -- strong hypothesis ------------------------------------------------------------
def test_strong_hypothesis_example39(ex39):
    rep = classify_strong_hypothesis(*ex39)
    assert rep.ok
    assert rep.embdim - rep.dim == 2
    assert rep.length_R_mod_x == 3
    assert rep.e_x == 2 and not rep.is_cm


def test_strong_hypothesis_rejects_non_aci(ex310):
    with pytest.raises(HypothesisNotMet) as info:
        classify_strong_hypothesis(*ex310)
    assert info.value.precondition == "is_aci"


def test_strong_hypothesis_cohen_macaulay_branch():
    rep = classify_strong_hypothesis(CUBIC, seq(CUBIC, "a", "d"))
    assert rep.ok and rep.is_cm and rep.e_x == 3 and rep.length_R_mod_x == 3


def test_strong_hypothesis_preconditions_named():
    R = RingPresentation.from_strings("xyz", ["x^2", "x*y", "y^2"])
    with pytest.raises(HypothesisNotMet) as info:
        classify_strong_hypothesis(R, seq(R, "z^2"))
    assert info.value.precondition == "m2_in_x"


def test_maximal_ideal_kills_homology(ex39, ex310):
    assert variables_annihilate(*ex39) == []
    assert maximal_ideal_check(*ex39)
    assert maximal_ideal_check(*ex310)


def test_violation_carries_instance_dump():
    err = TheoremViolation("dutta_check", {"lhs": 0}, {"vars": ["x"]})
    assert err.check == "dutta_check" and err.instance == {"vars": ["x"]}
    assert "dutta_check" in str(err)


# -- full reports -----------------------------------------------------------------
def test_analyze_intro():
    rep = analyze(INTRO, seq(INTRO, "y", "z"))
    assert (rep.dim, rep.depth, rep.e, rep.e_x) == (2, 0, 1, 1)
    assert rep.hilbert_numerator == [1, 1, -2, 1]
    assert (rep.embdim, rep.mu_I, rep.pd_over_A) == (3, 3, 3)
    assert not rep.is_aci and not rep.is_cm
    assert rep.mult_defect_ok is False
    assert rep.koszul_lengths == [2, 2, 1]


def test_analyze_example39(ex39):
    rep = analyze(*ex39)
    assert (rep.dim, rep.depth, rep.embdim, rep.mu_I) == (6, 4, 8, 3)
    assert rep.is_aci and not rep.is_cm
    assert rep.koszul_lengths == [3, 2, 1, 0, 0, 0, 0]
    assert (rep.e_x, rep.chi2, rep.dutta_lhs) == (2, 1, 1)
    assert rep.dutta_ok and rep.mult_defect_ok and rep.question1_ok
    assert rep.maximal_ideal_annihilates
    assert rep.strong_hypothesis["ok"]
    assert rep.e is None and rep.notes


def test_analyze_example310(ex310):
    rep = analyze(*ex310)
    assert (rep.dim, rep.depth, rep.e_x, rep.length_R_mod_x) == (4, 3, 3, 4)
    assert rep.m2_in_x and not rep.is_cm and not rep.is_aci
    assert (rep.embdim, rep.mu_I) == (7, 6)
    assert rep.koszul_lengths == [4, 1, 0, 0, 0]
    assert rep.strong_hypothesis is None


# -- corpus-wide invariants -------------------------------------------------------
CORPUS = ["intro", "example39", "example310"]


@pytest.mark.parametrize("name", CORPUS)
def test_auslander_buchsbaum(name):
    R, _ = corpus_ring(name)
    embdim, _ = embdim_and_mu(R)
    pd = top_homology_index(R, R.ring.gens(), reduce=False)
    assert pd + depth(R) == embdim


@pytest.mark.parametrize("name", CORPUS)
def test_chi2_rigidity(name):
    R, x = corpus_ring(name)
    if chi2(R, x) == 0:
        assert all(v == 0 for v in koszul_lengths(R, x)[2:])


@pytest.mark.parametrize("name", ["example39"])
def test_socle_witnesses_kill_first_homology(name):
    R, x = corpus_ring(name)
    hom = SequenceHomology(R, x)
    assert all(hom[1].annihilates(z) for z in socle_witnesses(R, x))
