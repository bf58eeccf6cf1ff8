"""Composite invariants and verdicts: depth, multiplicity via Koszul
homology, the annihilation question for socle witnesses, and the
acyclicity criterion for residual approximation complexes."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .fileformat import PresentationFile
from .gb import colon_element
from .koszul import (
    HomologyModule,
    KoszulComplex,
    graded_annihilates,
    homology,
    suggested_bound,
    top_homology_index,
)
from .poly import Polynomial
from .ring import (
    ParameterSequence,
    RingPresentation,
    _elements,
    embdim_and_mu,
    hilbert,
    is_aci,
    is_sop,
    length,
    m2_in_x,
    part_of_minimal_basis,
    require_sop,
    socle_witnesses,
)
from .syntax import format_poly


class TheoremViolation(RuntimeError):
    """A check backed by a proved statement came out false.

    ``instance`` is a presentation-file dictionary that re-runs standalone.
    """

    def __init__(self, check: str, details: dict, instance: dict):
        super().__init__(f"theorem violation in {check}: {details}")
        self.check = check
        self.details = details
        self.instance = instance


class EngineDisagreement(RuntimeError):
    """The Groebner route and the graded linear-algebra route disagree."""


class NotACI(ValueError):
    pass


class BadWitness(ValueError):
    pass


class HypothesisNotMet(ValueError):
    def __init__(self, precondition: str):
        super().__init__(f"precondition not met: {precondition}")
        self.precondition = precondition


def instance_dump(R: RingPresentation, x=None, z=None) -> dict:
    return PresentationFile.from_presentation(R, _elements(x) if x is not None else None, z).to_dict()


# -- Koszul homology of a sequence, computed once ------------------------------
class SequenceHomology:
    """Lazily computed H_i(x; R) for all i."""

    def __init__(self, R: RingPresentation, x):
        self.R = R
        self.x = _elements(x)
        self.complex = KoszulComplex(R, self.x)
        self._h: dict[int, HomologyModule] = {}

    def __getitem__(self, i: int) -> HomologyModule:
        if i not in self._h:
            self._h[i] = homology(self.complex, i)
        return self._h[i]

    @property
    def n(self) -> int:
        return self.complex.n

    def lengths(self) -> list:
        return [self[i].length for i in range(self.n + 1)]


def _homology(R, x, hom: SequenceHomology | None) -> SequenceHomology:
    return hom if hom is not None else SequenceHomology(R, x)


# -- basic composite invariants -------------------------------------------------
def depth(R: RingPresentation) -> int:
    """embdim minus the top index of nonvanishing Koszul homology on the variables."""
    if getattr(R, "_depth", None) is None:
        R.check_minimal()
        R._depth = R.nvars - top_homology_index(R, R.ring.gens())
    return R._depth


def koszul_lengths(R: RingPresentation, x, hom: SequenceHomology | None = None) -> list[int]:
    require_sop(R, x)
    return _homology(R, x, hom).lengths()


def serre_multiplicity(R: RingPresentation, x, hom: SequenceHomology | None = None) -> int:
    ls = koszul_lengths(R, x, hom)
    if any(v == math.inf for v in ls):
        raise AssertionError("infinite Koszul homology for a system of parameters")
    e = sum((-1) ** i * v for i, v in enumerate(ls))
    if e <= 0:
        raise TheoremViolation("serre_multiplicity", {"lengths": ls}, instance_dump(R, x))
    return e


def chi2(R: RingPresentation, x, hom: SequenceHomology | None = None) -> int:
    ls = koszul_lengths(R, x, hom)
    return sum((-1) ** (j - 2) * ls[j] for j in range(2, len(ls)))


def dutta_check(R: RingPresentation, x, hom: SequenceHomology | None = None, strict: bool = True) -> tuple[int, bool]:
    """lhs = l(R/(x)) - l(H_1(x, R)) and whether lhs >= 1."""
    if not is_aci(R):
        raise NotACI("dutta_check needs an almost complete intersection")
    hom = _homology(R, x, hom)
    ls = koszul_lengths(R, x, hom)
    lhs = ls[0] - ls[1]
    ok = lhs >= 1
    if not ok and strict:
        raise TheoremViolation("dutta_check", {"lhs": lhs, "lengths": ls}, instance_dump(R, x))
    return lhs, ok


def theorem_case(R: RingPresentation, e_x: int, dim: int) -> bool:
    """Whether e >= dim - depth is a proved statement for this ACI instance.

    Proven for dim <= 2, e <= 2 and dim = 3 in equal characteristic; since
    e(x, R) >= e(R), e(x, R) <= 2 forces e(R) <= 2.
    """
    return dim <= 3 or e_x <= 2


def mult_defect_check(R: RingPresentation, x, hom: SequenceHomology | None = None, strict: bool = True) -> bool:
    e = serre_multiplicity(R, x, hom)
    d = R.dim
    ok = e >= d - depth(R)
    if not ok and strict and is_aci(R) and theorem_case(R, e, d):
        details = {"e_x": e, "dim": d, "depth": depth(R)}
        raise TheoremViolation("mult_defect_check", details, instance_dump(R, x))
    return ok


# -- the annihilation question ----------------------------------------------------
@dataclass
class Question1Report:
    witnesses: list[str]
    failures: list[dict] = field(default_factory=list)
    first_homology_ok: bool = True
    status: str = "ok"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)


def question1_verdict(R: RingPresentation, x, hom: SequenceHomology | None = None, require_aci: bool = True, strict: bool = True) -> Question1Report:
    """Check that every socle witness z of (x) kills H_i(x, R) for i >= 1.

    A failure at i = 1 contradicts a theorem and raises; failures at higher
    indices are re-checked by the graded oracle and then reported as
    candidates.
    """
    aci = is_aci(R)
    if require_aci and not aci:
        raise NotACI("question1_verdict needs an almost complete intersection")
    require_sop(R, x)
    hom = _homology(R, x, hom)
    zs = socle_witnesses(R, x)
    report = Question1Report([format_poly(z) for z in zs])
    for z in zs:
        for i in range(1, hom.n + 1):
            H = hom[i]
            if H.annihilates(z):
                continue
            bound = suggested_bound(H)
            confirmed = not graded_annihilates(R, _elements(x), i, z, bound)
            if not confirmed:
                raise EngineDisagreement(f"H_{i}: Groebner route says {z} does not annihilate, graded oracle says it does")
            failure = {"z": format_poly(z), "i": i, "confirmed_by_oracle": True}
            report.failures.append(failure)
            if i == 1:
                report.first_homology_ok = False
    if report.failures:
        if not aci:
            report.status = "observation"
        else:
            report.status = "violation" if not report.first_homology_ok else "candidate"
        if strict and aci and not report.first_homology_ok:
            raise TheoremViolation("first_homology_annihilator", {"failures": report.failures}, instance_dump(R, x))
    return report


def variables_annihilate(R: RingPresentation, x, hom: SequenceHomology | None = None) -> list[int]:
    """Indices i >= 1 where some variable fails to kill H_i(x, R)."""
    hom = _homology(R, x, hom)
    bad = []
    for i in range(1, hom.n + 1):
        H = hom[i]
        if not all(H.annihilates(v) for v in R.ring.gens()):
            bad.append(i)
    return bad


def strong_hypothesis_holds(R: RingPresentation, x) -> bool:
    return is_sop(R, x) and m2_in_x(R, x) and part_of_minimal_basis(R, x)


def maximal_ideal_check(R: RingPresentation, x, hom: SequenceHomology | None = None, strict: bool = True) -> bool:
    """Under m^2 in (x) with x part of a minimal basis, m kills every H_i, i >= 1."""
    if not strong_hypothesis_holds(R, x):
        raise HypothesisNotMet("m^2 in (x) with x an s.o.p. and part of a minimal basis")
    bad = variables_annihilate(R, x, hom)
    if bad and strict:
        raise TheoremViolation("maximal_ideal_annihilates", {"indices": bad}, instance_dump(R, x))
    return not bad


# -- residual approximation complexes --------------------------------------------
@dataclass
class AcyclicityCertificate:
    witness: str
    annihilates: list[bool]
    colon_length: int
    h0_ok: bool
    verdict: bool

    def to_dict(self) -> dict:
        return asdict(self)


def acyclicity_certificate(R: RingPresentation, x, z: Polynomial, hom: SequenceHomology | None = None) -> AcyclicityCertificate:
    """Per-index annihilation verdicts a_i = [z kills H_i(x, R)], i = 1..n.

    The residual complex is acyclic exactly when all a_i hold; it is not
    materialized.  The H_0 identity requires (x) : z = m, i.e. the colon has
    colength one.
    """
    elems = _elements(x)
    J = R.extend_ideal(elems)
    if not J.normal_form(z):
        raise BadWitness(f"{z} lies in (x)")
    col = colon_element(J, z)
    col_len = length(R, col)
    if col_len != 1:
        raise BadWitness(f"(x) : {z} is not the maximal ideal (colength {col_len})")
    hom = _homology(R, x, hom)
    flags = [hom[i].annihilates(z) for i in range(1, hom.n + 1)]
    return AcyclicityCertificate(format_poly(z), flags, col_len, True, all(flags))


# -- strong hypothesis classification -------------------------------------------
@dataclass
class StrongHypothesisReport:
    embdim: int
    dim: int
    defect_ok: bool
    length_R_mod_x: int
    length_ok: bool
    e_x: int
    is_cm: bool
    multiplicity_ok: bool

    @property
    def ok(self) -> bool:
        return self.defect_ok and self.length_ok and self.multiplicity_ok

    def to_dict(self) -> dict:
        return asdict(self) | {"ok": self.ok}


def check_strong_preconditions(R: RingPresentation, x) -> None:
    if not is_aci(R):
        raise HypothesisNotMet("is_aci")
    if not is_sop(R, x):
        raise HypothesisNotMet("is_sop")
    if not m2_in_x(R, x):
        raise HypothesisNotMet("m2_in_x")
    if not part_of_minimal_basis(R, x):
        raise HypothesisNotMet("part_of_minimal_basis")


def classify_strong_hypothesis(R: RingPresentation, x, hom: SequenceHomology | None = None, strict: bool = True) -> StrongHypothesisReport:
    check_strong_preconditions(R, x)
    embdim, _ = embdim_and_mu(R)
    d = R.dim
    hom = _homology(R, x, hom)
    ls = koszul_lengths(R, x, hom)
    e = serre_multiplicity(R, x, hom)
    cm = depth(R) == d
    rep = StrongHypothesisReport(
        embdim=embdim,
        dim=d,
        defect_ok=embdim - d <= 2,
        length_R_mod_x=ls[0],
        length_ok=ls[0] == embdim - d + 1,
        e_x=e,
        is_cm=cm,
        multiplicity_ok=(cm and e == 3) or e <= 2,
    )
    if strict and not rep.ok:
        raise TheoremViolation("classify_strong_hypothesis", rep.to_dict(), instance_dump(R, x))
    return rep


# -- full report --------------------------------------------------------------------
@dataclass
class InvariantReport:
    dim: int
    embdim: int
    mu_I: int
    depth: int
    pd_over_A: int
    is_aci: bool
    is_cm: bool
    e: int | None = None
    hilbert_numerator: list[int] | None = None
    sop: list[str] | None = None
    sop_verified: bool | None = None
    length_R_mod_x: int | None = None
    koszul_lengths: list[int] | None = None
    e_x: int | None = None
    chi2: int | None = None
    m2_in_x: bool | None = None
    minimal_basis: bool | None = None
    dutta_lhs: int | None = None
    dutta_ok: bool | None = None
    mult_defect_ok: bool | None = None
    question1_ok: bool | None = None
    question1: dict | None = None
    maximal_ideal_annihilates: bool | None = None
    strong_hypothesis: dict | None = None
    socle_witnesses: list[str] | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def analyze(R: RingPresentation, x=None, strict: bool = True) -> InvariantReport:
    embdim, mu = embdim_and_mu(R)
    d = R.dim
    dep = depth(R)
    aci = mu == embdim - d + 1
    rep = InvariantReport(dim=d, embdim=embdim, mu_I=mu, depth=dep, pd_over_A=embdim - dep, is_aci=aci, is_cm=dep == d)
    if R.ring.is_standard_graded:
        h = hilbert(R)
        rep.e, rep.hilbert_numerator = h.multiplicity, list(h.numerator)
    else:
        rep.notes.append("weighted grading: only e(x,R) is reported; it bounds e(R) from above")
    if x is None:
        return rep
    if isinstance(x, ParameterSequence):
        rep.sop = [format_poly(f) for f in x.elements]
    else:
        rep.sop = [format_poly(f) for f in x]
    rep.sop_verified = is_sop(R, x)
    rep.m2_in_x = m2_in_x(R, x)
    rep.minimal_basis = part_of_minimal_basis(R, x)
    if not rep.sop_verified:
        rep.notes.append("given sequence is not a system of parameters")
        return rep
    hom = SequenceHomology(R, x)
    ls = koszul_lengths(R, x, hom)
    rep.koszul_lengths = ls
    rep.length_R_mod_x = ls[0]
    rep.e_x = serre_multiplicity(R, x, hom)
    rep.chi2 = chi2(R, x, hom)
    rep.mult_defect_ok = mult_defect_check(R, x, hom, strict)
    rep.socle_witnesses = [format_poly(z) for z in socle_witnesses(R, x)]
    if aci:
        rep.dutta_lhs, rep.dutta_ok = dutta_check(R, x, hom, strict)
    else:
        rep.notes.append("not an almost complete intersection: the socle-annihilation check is informational")
    q1 = question1_verdict(R, x, hom, require_aci=False, strict=strict and aci)
    rep.question1_ok, rep.question1 = q1.passed, q1.to_dict()
    if rep.m2_in_x and rep.minimal_basis:
        rep.maximal_ideal_annihilates = maximal_ideal_check(R, x, hom, strict)
        if aci:
            rep.strong_hypothesis = classify_strong_hypothesis(R, x, hom, strict).to_dict()
    return rep
