"""Random instance generators and the search loop.

Every instance is drawn from ``random.Random(f"{seed}:{index}")`` so a run is
reproducible instance by instance, independent of how many workers are used.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .aci import (
    SequenceHomology,
    chi2,
    classify_strong_hypothesis,
    depth,
    dutta_check,
    instance_dump,
    koszul_lengths,
    maximal_ideal_check,
    mult_defect_check,
    question1_verdict,
    serre_multiplicity,
    strong_hypothesis_holds,
    theorem_case,
)
from .poly import Polynomial, PolyRing
from .ring import (
    RingPresentation,
    UnitIdeal,
    embdim_and_mu,
    is_sop,
    standard_monomials_in_degree,
)

FAMILIES = ("common_factor", "prime_containment", "determinantal", "strong", "twisted_cubic")


@dataclass(frozen=True)
class SearchConfig:
    chars: tuple[int, ...] = (32003,)
    max_vars: int = 5
    max_deg: int = 3
    count: int = 10
    seed: int = 0
    families: tuple[str, ...] = FAMILIES
    attempts: int = 40


# -- random forms -----------------------------------------------------------------
def _coeff(rng: random.Random) -> int:
    return rng.choice([-3, -2, -1, 1, 2, 3])


def random_form(ring: PolyRing, degree: int, rng: random.Random, max_terms: int = 4, among=None) -> Polynomial:
    """Random weighted-homogeneous form of the given degree (maybe zero)."""
    weights = ring.weights if among is None else [ring.weights[i] for i in among]
    monos = standard_monomials_in_degree([], weights, degree)
    if not monos:
        return ring.zero()
    k = rng.randint(1, min(max_terms, len(monos)))
    terms = {}
    for m in rng.sample(monos, k):
        if among is not None:
            full = [0] * ring.nvars
            for i, e in zip(among, m):
                full[i] = e
            m = tuple(full)
        terms[m] = _coeff(rng)
    return ring.from_terms(terms)


def random_linear_forms(ring: PolyRing, count: int, rng: random.Random) -> list[Polynomial]:
    lin = [i for i, w in enumerate(ring.weights) if w == min(ring.weights)]
    out = []
    for _ in range(count):
        out.append(ring.from_terms({tuple(int(i == j) for i in range(ring.nvars)): _coeff(rng) for j in rng.sample(lin, rng.randint(1, len(lin)))}))
    return out


def _names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def _find_sop(R: RingPresentation, rng: random.Random, tries: int = 8):
    d = R.dim
    if d == 0:
        return None
    gens = R.ring.gens()
    for attempt in range(tries):
        if attempt < 2:
            cand = rng.sample(gens, d)
        else:
            cand = random_linear_forms(R.ring, d, rng)
        if is_sop(R, cand):
            return cand
    return None


# -- families of almost complete intersections ----------------------------------------
def gen_common_factor(rng, char, max_vars, max_deg):
    n = rng.randint(3, max_vars)
    ring = PolyRing(_names(n), None, char)
    l = random_linear_forms(ring, 1, rng)[0]
    d = rng.randint(1, max_deg - 1)
    q1, q2 = random_form(ring, d, rng), random_form(ring, d, rng)
    gens = [l * q1, l * q2]
    if rng.random() < 0.6:
        gens.append(random_form(ring, rng.randint(2, max_deg), rng))
    return ring, gens


def gen_prime_containment(rng, char, max_vars, max_deg):
    n = rng.randint(3, max_vars)
    ring = PolyRing(_names(n), None, char)
    h = rng.randint(1, min(3, n - 1))
    P = rng.sample(range(n), h)
    gens = []
    for _ in range(h + 1):
        d = rng.randint(2, max_deg)
        f = ring.zero()
        for v in P:
            f = f + ring.gen(v) * random_form(ring, d - 1, rng, max_terms=3)
        gens.append(f)
    return ring, gens


def gen_determinantal(rng, char, max_vars, max_deg):
    n = rng.randint(3, max_vars)
    ring = PolyRing(_names(n), None, char)
    top = rng.randint(1, max(1, max_deg - 1))
    M = [[random_form(ring, 1 if r == 0 else top, rng, max_terms=2) for _ in range(3)] for r in range(2)]
    gens = [M[0][i] * M[1][j] - M[0][j] * M[1][i] for i, j in itertools.combinations(range(3), 2)]
    return ring, gens


def gen_strong(rng, char, max_vars, max_deg):
    """(Z2^2 + l p s^2, Z1^2 + m p t^2, Z1 Z2 + v p s t) with v^2 = l m: height
    two, and modulo the y-variables the relations contain (Z1, Z2)^2."""
    d = rng.randint(1, max(1, max_vars - 2))
    ys = [f"y{i + 1}" for i in range(d)]
    base = PolyRing(ys, [2] * d, char)
    p = base.one() if rng.random() < 0.5 else random_form(base, 2 * rng.randint(1, 2), rng, max_terms=2)
    s = random_form(base, 2 * rng.randint(1, max_deg), rng, max_terms=2)
    t = random_form(base, 2 * rng.randint(1, max_deg), rng, max_terms=2)
    if not (p and s and t):
        return None
    lam, nu = _coeff(rng), _coeff(rng)
    a, b, c = p * s * s * lam, p * t * t, p * s * t * nu
    b = b * Fraction(nu * nu, lam)
    deg = lambda f: f.weighted_degree()  # noqa: E731
    wz2, wz1 = deg(a) // 2, deg(b) // 2
    ring = PolyRing(ys + ["Z1", "Z2"], [2] * d + [wz1, wz2], char)
    emb = {i: i for i in range(d)}

    def up(f):
        return f.substitute({}, ring, emb)

    Z1, Z2 = ring.gen(d), ring.gen(d + 1)
    gens = [Z2 * Z2 + up(a), Z1 * Z1 + up(b), Z1 * Z2 + up(c)]
    return ring, gens, [ring.gen(i) for i in range(d)]


def gen_twisted_cubic(rng, char, max_vars, max_deg):
    """2x2 minors of [[a, b, c], [b, c, d]] (scaled), Cohen-Macaulay with e = 3."""
    extra = rng.randint(0, max(0, max_vars - 4))
    ring = PolyRing(["a", "b", "c", "d"] + [f"u{i + 1}" for i in range(extra)], None, char)
    a, b, c, d = (ring.gen(i) for i in range(4))
    lam, mu = _coeff(rng), _coeff(rng)
    M = [[a * lam, b, c], [b, c, d * mu]]
    gens = [M[0][i] * M[1][j] - M[0][j] * M[1][i] for i, j in itertools.combinations(range(3), 2)]
    sop = [a, d] + [ring.gen(4 + i) for i in range(extra)]
    return ring, gens, sop


GENERATORS = {
    "common_factor": gen_common_factor,
    "prime_containment": gen_prime_containment,
    "determinantal": gen_determinantal,
    "strong": gen_strong,
    "twisted_cubic": gen_twisted_cubic,
}


@dataclass
class Instance:
    family: str
    R: RingPresentation
    x: list[Polynomial]
    attempts: int = 1
    notes: list[str] = field(default_factory=list)


def random_aci(rng: random.Random, config: SearchConfig) -> Instance:
    """Draw until an almost complete intersection with a verified s.o.p. appears."""
    for attempt in range(1, config.attempts + 1):
        family = rng.choice(config.families)
        char = rng.choice(config.chars)
        out = GENERATORS[family](rng, char, config.max_vars, config.max_deg)
        if out is None:
            continue
        ring, gens, *given = out
        gens = [g for g in gens if g]
        if not gens or any(not g.is_homogeneous() for g in gens):
            continue
        try:
            R = RingPresentation(ring, gens)
        except UnitIdeal:
            continue
        try:
            embdim, mu = embdim_and_mu(R)
        except ValueError:
            continue
        if R.dim < 1 or mu != embdim - R.dim + 1:
            continue
        x = given[0] if given else _find_sop(R, rng)
        if x is None or not is_sop(R, x):
            continue
        return Instance(family, R, list(x), attempt)
    raise RuntimeError(f"no almost complete intersection found in {config.attempts} attempts")


def random_graded_instance(rng: random.Random, max_vars: int = 4, max_deg: int = 3, char: int = 32003, attempts: int = 40):
    """Any quotient by 1-3 random forms together with a verified s.o.p."""
    for _ in range(attempts):
        n = rng.randint(2, max_vars)
        weights = [rng.choice([1, 1, 2]) for _ in range(n)]
        if 1 not in weights:
            weights[0] = 1
        ring = PolyRing(_names(n), weights, char)
        gens = [random_form(ring, rng.randint(2, max_deg), rng) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if g and all(sum(e) >= 2 for e, _ in g.terms())]
        if not gens:
            continue
        R = RingPresentation(ring, gens)
        if R.dim < 1 or R.gb.is_unit():
            continue
        x = _find_sop(R, rng)
        if x is not None:
            return R, x
    raise RuntimeError("no graded instance with a system of parameters found")


# -- evaluation ---------------------------------------------------------------------
def evaluate(inst: Instance) -> dict:
    """Run every check on one instance without raising on violations."""
    R, x = inst.R, inst.x
    hom = SequenceHomology(R, x)
    embdim, mu = embdim_and_mu(R)
    d, dep = R.dim, depth(R)
    ls = koszul_lengths(R, x, hom)
    e = serre_multiplicity(R, x, hom)
    lhs, dutta_ok = dutta_check(R, x, hom, strict=False)
    md_ok = mult_defect_check(R, x, hom, strict=False)
    q1 = question1_verdict(R, x, hom, strict=False)
    rec = {
        "family": inst.family,
        "instance": instance_dump(R, x),
        "dim": d,
        "embdim": embdim,
        "mu": mu,
        "depth": dep,
        "is_cm": dep == d,
        "lengths": ls,
        "e_x": e,
        "chi2": chi2(R, x, hom),
        "dutta": {"lhs": lhs, "ok": dutta_ok},
        "mult_defect": {"ok": md_ok, "theorem_case": theorem_case(R, e, d)},
        "question1": q1.to_dict(),
        "strong": None,
    }
    violations = []
    if not dutta_ok:
        violations.append("dutta")
    if not md_ok and theorem_case(R, e, d):
        violations.append("mult_defect")
    if not q1.first_homology_ok:
        violations.append("first_homology_annihilator")
    if strong_hypothesis_holds(R, x):
        rep = classify_strong_hypothesis(R, x, hom, strict=False)
        m_ok = maximal_ideal_check(R, x, hom, strict=False)
        rec["strong"] = rep.to_dict() | {"maximal_ideal_annihilates": m_ok}
        if not rep.ok:
            violations.append("strong_hypothesis")
        if not m_ok:
            violations.append("maximal_ideal_annihilates")
    rec["violations"] = violations
    if violations:
        rec["status"] = "violation"
    elif q1.failures:
        rec["status"] = "candidate"
    else:
        rec["status"] = "ok"
    return rec


def run_one(config: SearchConfig, index: int) -> dict:
    rng = random.Random(f"{config.seed}:{index}")
    inst = random_aci(rng, config)
    rec = {"index": index, "seed": config.seed}
    rec.update(evaluate(inst))
    return rec


def search(config: SearchConfig, jobs: int = 1):
    """Yield one record per instance, in index order."""
    if jobs <= 1:
        for i in range(config.count):
            yield run_one(config, i)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(run_one, [config] * config.count, range(config.count))
