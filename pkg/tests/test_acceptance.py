"""Acceptance suite: the ten primary criteria at their stated scope, exact tolerance."""

from __future__ import annotations

from collections import Counter

from artifact.harness import SweepConfig, run_verify
from artifact.jhfactor import JHMultiset
from artifact.oracle import q_jh
from artifact.predictor import q_structure

PS = (3, 5, 7)


def _run(**kw):
    records, code = run_verify(SweepConfig(**kw))
    status = Counter(r.status for r in records)
    fails = [r for r in records if r.status == "fail"]
    return records, code, status, fails


def _detail(status, fails):
    text = ", ".join(f"{k}={v}" for k, v in sorted(status.items()))
    if fails:
        text += f"; first fail: {fails[0]}"
    return text


def test_criterion_1_dimensions(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=400, suites=("dims",))
    ok = code == 0 and not fails and status["pass"] > 0
    assert criterion(1, "dim_x_ri = brute-force dim, p in {3,5,7}, r <= 400", ok, _detail(status, fails))


def test_criterion_2_equality(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=300, suites=("equality",))
    ok = code == 0 and not fails and status["pass"] > 0
    assert criterion(2, "monomials_equal = brute-force subspace equality, r <= 300", ok, _detail(status, fails))


def test_criterion_3_filtration(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=300, suites=("filtration",))
    ms = {(r.p, r.j) for r in records if r.suite == "filtration:codim" and r.status == "pass"}
    ok = code == 0 and not fails and ms == {(p, m) for p in PS for m in range(1, p + 1)}
    assert criterion(3, "both V_r^(m) constructions agree and codim = m(p+1), m <= p, r <= 300", ok, _detail(status, fails))


def test_criterion_4_principal_series(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=150, suites=("principal",))
    kinds = Counter(r.suite for r in records if r.status == "pass")
    ind_total = sum((p - 1) ** 2 for p in PS)
    ok = (
        code == 0
        and not fails
        and kinds["principal:ind"] == ind_total == kinds["principal:ind-split"]
        and kinds["principal:split"] > 0
        and any(r.predicted == "true" for r in records if r.suite == "principal:split")
    )
    assert criterion(4, "principal series factors and levels, split iff a = 2m mod (p-1)", ok, _detail(status, fails))


def test_criterion_5_successive_and_singular(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=300, suites=("successive", "singular"))
    suites = {r.suite for r in records if r.status == "pass"}
    ok = code == 0 and not fails and suites == {"successive", "singular"}
    assert criterion(5, "successive and singular quotients = oracle JH, r <= 300", ok, _detail(status, fails))


def test_criterion_6_q_structure(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=400, suites=("qstruct", "irred"))
    spot = q_structure(42, 2, 5) == JHMultiset.of(5, (2, 0)) == q_jh(42, 2, 5)
    ok = code == 0 and not fails and spot
    assert criterion(6, "Q(i) = oracle JH and irreducibility, r <= 400; (5,42,2) gives V2", ok, _detail(status, fails))


def test_criterion_7_periodicity(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=1, suites=("periodicity",))
    v_iso = [r for r in records if r.suite == "periodicity:Vn-Vm:iso"]
    structural = sum(1 for r in records if r.status == "structural-only")
    ok = (
        code == 0
        and not fails
        and len(v_iso) == 100 * len(PS)
        and all(r.status == "pass" and r.observed == "witnessed" for r in v_iso)
    )
    assert criterion(7, "periodicity: dims and JH equal, V-quotient isos witnessed", ok, _detail(status, fails) + f"; structural-only={structural}")


def test_criterion_8_x_r_minus_p(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=300, suites=("xrp",))
    iso = [r for r in records if r.suite == "xrp:iso"]
    capped = [r for r in iso if "above cap" in r.observed]
    ok = (
        code == 0
        and not fails
        and all(r.status == "pass" for r in iso if r not in capped)
        and all(r.status == "structural-only" for r in capped)
        and len(iso) == sum(300 - 2 * p for p in PS)
    )
    assert criterion(8, "X_{r-p}: case, dim, corollary, JH and witnessed iso to X_{s-1,s}", ok, _detail(status, fails) + f"; above cap={len(capped)}")


def test_criterion_9_identities(criterion):
    records, code, status, fails = _run(ps=PS, r_min=1, r_max=1, suites=("identities",))
    per = Counter((r.p, r.suite) for r in records)
    names = {"binomial-sum", "det", "interval", "power-sum", "lucas", "G_r"}
    enough = all(per[(p, f"identities:{n}")] >= 500 for p in PS for n in names)
    ok = code == 0 and not fails and enough
    assert criterion(9, "combinatorial identities, >= 500 instances each per p", ok, _detail(status, fails))


def test_criterion_10_doty(criterion):
    records, code, status, fails = _run(ps=(3, 5), r_min=1, r_max=200, suites=("doty",))
    inclusions = sum(1 for r in records if r.observed == "inclusion=true")
    ok = code == 0 and not fails and inclusions > 0
    assert criterion(10, "doty_necessary holds for every brute-force inclusion, p in {3,5}, r <= 200", ok, _detail(status, fails) + f"; inclusions={inclusions}")
