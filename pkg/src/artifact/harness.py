"""Verification engine: predictor-vs-oracle sweeps, reports and lattice export."""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import oracle, predictor
from .jhfactor import (
    JHInconsistency,
    JHLabel,
    JHMultiset,
    jh_multiset,
    modules_isomorphic,
    set_aux_prime,
    socle_labels,
    splits_two_factor,
)
from .modarith import (
    bracket,
    closed_binomial_sum,
    in_interval,
    interval_members,
    lucas_binomial,
    matrix_det_closed_form,
    power_sum,
    sigma_shift_case,
)
from .polyrep import (
    GAMMA,
    principal_series,
    q_module,
    special_polynomials,
    theta_constructions_agree,
    theta_divides,
    theta_level,
    theta_segment,
    x_filtration,
)
from .predictor import NotApplicable

SUITES = (
    "dims",
    "equality",
    "filtration",
    "principal",
    "successive",
    "singular",
    "qstruct",
    "irred",
    "xrp",
    "periodicity",
    "identities",
    "doty",
)
STATUSES = ("pass", "fail", "not-applicable", "structural-only")
COLUMNS = ("p", "r", "i", "j", "suite", "status", "predicted", "observed", "elapsed_ms")
ISO_CAP = 2500  # largest ambient dimension used for the X_{s-1,s} side of an iso check


@dataclass(frozen=True)
class CheckRecord:
    p: int
    r: int | None
    i: int | None
    j: int | None
    suite: str
    status: str
    predicted: str
    observed: str
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and (self.predicted == "" or self.observed == ""):
            raise ValueError("fail records must carry both values")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in COLUMNS}


@dataclass
class SweepConfig:
    ps: tuple[int, ...] = (3,)
    r_min: int = 0
    r_max: int = 0
    i_values: tuple[int, ...] | None = None
    suites: tuple[str, ...] = ("dims",)
    fmt: str = "jsonl"
    out: str | None = None
    seed: int = 0
    aux_prime: int | None = None
    threads: int = 1
    samples: int = 500  # identities per p
    periodicity_samples: int = 100

    def __post_init__(self):
        self.ps = tuple(int(p) for p in self.ps)
        for p in self.ps:
            if p < 3 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"p must be an odd prime, got {p}")
        if self.r_max < self.r_min:
            raise ValueError(f"r range is reversed: {self.r_min} > {self.r_max}")
        bad = set(self.suites) - set(SUITES)
        if bad:
            raise ValueError(f"unknown suites: {sorted(bad)}")
        if self.fmt not in ("jsonl", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise ValueError("threads must be positive")


# serialization

def _ser(x: object) -> str:
    if x is None:
        return ""
    if isinstance(x, JHMultiset):
        return str(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _record(p, r, i, j, suite, predicted, observed, ok, t0, status=None) -> CheckRecord:
    if status is None:
        status = "pass" if ok else "fail"
    return CheckRecord(p, r, i, j, suite, status, _ser(predicted), _ser(observed), round((time.perf_counter() - t0) * 1000, 3))


def _na(p, r, i, j, suite, why, t0) -> CheckRecord:
    return CheckRecord(p, r, i, j, suite, "not-applicable", "", why, round((time.perf_counter() - t0) * 1000, 3))


def _compare(p, r, i, j, suite, predict: Callable[[], object], observe: Callable[[], object]) -> CheckRecord:
    """Run one predictor-vs-oracle comparison, mapping errors to records."""
    t0 = time.perf_counter()
    try:
        want = predict()
    except NotApplicable as exc:
        return _na(p, r, i, j, suite, str(exc), t0)
    except JHInconsistency as exc:
        return _record(p, r, i, j, suite, f"inconsistent: {exc}", _safe(observe), False, t0)
    got = observe()
    return _record(p, r, i, j, suite, want, got, want == got, t0)


def _safe(fn: Callable[[], object]) -> object:
    try:
        return fn()
    except Exception as exc:  # the diagnostic still goes into the record
        return f"error: {exc}"


def write_records(records: Iterable[CheckRecord], fmt: str, stream) -> None:
    if fmt == "jsonl":
        for rec in records:
            stream.write(json.dumps(rec.to_dict(), sort_keys=False) + "\n")
    else:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(COLUMNS)
        for rec in records:
            w.writerow(["" if v is None else v for v in rec.to_dict().values()])


def read_records(text: str, fmt: str = "jsonl") -> list[CheckRecord]:
    if fmt == "jsonl":
        return [CheckRecord(**json.loads(line)) for line in text.splitlines() if line.strip()]
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        ints = {k: (int(row[k]) if row[k] != "" else None) for k in ("p", "r", "i", "j")}
        out.append(CheckRecord(ints["p"], ints["r"], ints["i"], ints["j"], row["suite"], row["status"], row["predicted"], row["observed"], float(row["elapsed_ms"])))
    return out


# per-(p, r) suites

def _is(config: SweepConfig, lo: int, hi: int) -> list[int]:
    vals = range(lo, hi + 1) if config.i_values is None else config.i_values
    return [i for i in vals if lo <= i <= hi]


def suite_dims(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    return [
        _compare(p, r, i, None, "dims", lambda: predictor.dim_x_ri(r, i, p), lambda: oracle.dim_x(r, i, p))
        for i in _is(config, 0, p - 1)
    ]


def suite_equality(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    out = []
    for i in _is(config, 1, p - 1):
        for j in range(i):
            out.append(_compare(p, r, i, j, "equality", lambda: predictor.monomials_equal(r, i, j, p), lambda: oracle.monomials_equal(r, i, j, p)))
    return out


def suite_filtration(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    out = []
    for m in range(1, p + 1):
        t0 = time.perf_counter()
        ok = theta_constructions_agree(r, m, p)
        out.append(_record(p, r, None, m, "filtration:constructions", True, ok, ok, t0))
        t0 = time.perf_counter()
        if r < m * (p + 1) - 1:
            out.append(_na(p, r, None, m, "filtration:codim", "needs r >= m(p+1)-1", t0))
            continue
        codim = theta_level(r, m, p).codim
        out.append(_record(p, r, None, m, "filtration:codim", m * (p + 1), codim, codim == m * (p + 1), t0))
    return out


def suite_principal_levels(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    """Each level V_r^(m)/V_r^(m+1): its factors, and split iff a = 2m mod (p-1)."""
    out = []
    a = bracket(r, p) if r > 0 else 0
    for m in range(p):
        t0 = time.perf_counter()
        if r < m * (p + 1):
            out.append(_na(p, r, None, m, "principal:level", "level is zero", t0))
            continue
        seg = theta_segment(r, m, m + 1, p)
        want = predictor.level_jh(r, m, p)
        got = jh_multiset(seg)
        out.append(_record(p, r, None, m, "principal:level", want, got, want == got, t0))
        if r - m * (p + 1) >= p:
            t0 = time.perf_counter()
            k = bracket(a - 2 * m, p)
            top = JHLabel(p - 1 - k, (a - m) % (p - 1))
            want_split = (a - 2 * m) % (p - 1) == 0
            got_split = splits_two_factor(seg, top)
            out.append(_record(p, r, None, m, "principal:split", want_split, got_split, want_split == got_split, t0))
    return out


def suite_successive(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    return [
        _compare(p, r, i, None, "successive", lambda: predictor.successive_quotient(r, i, p), lambda: oracle.successive_jh(r, i, p))
        for i in _is(config, 1, p - 1)
    ]


def suite_singular(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    out = []
    for i in _is(config, 0, p - 1):
        for j in range(p):
            out.append(_compare(p, r, i, j, "singular", lambda: predictor.singular_quotient(r, i, j, p), lambda: oracle.singular_jh(r, i, j, p)))
    return out


def suite_qstruct(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    return [
        _compare(p, r, i, None, "qstruct", lambda: predictor.q_structure(r, i, p), lambda: oracle.q_jh(r, i, p))
        for i in _is(config, 0, p - 1)
    ]


def _oracle_irreducible(r: int, i: int, p: int) -> bool:
    return len(oracle.q_jh(r, i, p)) == 1


def suite_irred(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    return [
        _compare(p, r, i, None, "irred", lambda: predictor.q_irreducible(r, i, p), lambda: _oracle_irreducible(r, i, p))
        for i in _is(config, 1, p - 1)
    ]


def _digit_case(r: int, p: int) -> str:
    r0, r1 = r % p, (r // p) % p
    if r0 == 0:
        return "divide"
    return "middle" if r1 != 0 else "upper"


def suite_xrp(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    t0 = time.perf_counter()
    if r < 2 * p + 1:
        return [_na(p, r, p, None, "xrp:case", "needs r >= 2p+1", t0)]
    pred = predictor.xrp_structure(r, p)
    sigma = {"lower": "divide", "equal": "middle", "upper": "upper"}[sigma_shift_case(r, p)]
    digit = _digit_case(r, p)
    out = [_record(p, r, p, None, "xrp:case", pred.case, f"{sigma}/{digit}", pred.case == sigma == digit, t0)]
    X = oracle.xrp_module(r, p)

    t0 = time.perf_counter()
    if pred.dim is None:
        out.append(_na(p, r, p, None, "xrp:dim", f"no dimension formula for s={pred.s}", t0))
    else:
        out.append(_record(p, r, p, None, "xrp:dim", pred.dim, X.dim, pred.dim == X.dim, t0))
    out.append(_compare(p, r, p, None, "xrp:corollary", lambda: predictor.dim_x_r_minus_p(r, p), lambda: X.dim))

    t0 = time.perf_counter()
    if pred.jh is None:
        out.append(_na(p, r, p, None, "xrp:jh", f"no factor formula for s={pred.s}", t0))
    else:
        got = jh_multiset(X)
        out.append(_record(p, r, p, None, "xrp:jh", pred.jh, got, pred.jh == got, t0))

    t0 = time.perf_counter()
    target = f"X_{pred.s}-1 ({pred.case})"
    if pred.s + 1 > ISO_CAP:
        out.append(_record(p, r, p, None, "xrp:iso", target, f"ambient {pred.s + 1} above cap", True, t0, "structural-only"))
    else:
        res = modules_isomorphic(X, oracle.x_s_minus_1_module(pred.s, p), GAMMA, seed=config.seed)
        status = {"witnessed": "pass", "structural": "structural-only"}.get(res.mode, "fail")
        if not res.isomorphic:
            status = "fail"
        out.append(_record(p, r, p, None, "xrp:iso", target, res.mode, True, t0, status))
    return out


def suite_doty(p: int, r: int, config: SweepConfig) -> list[CheckRecord]:
    """Whenever X_{r-j} lies in X_{r-i}, the carry-pattern condition must hold."""
    out = []
    top = min(p, r)
    if r < p:
        top = min(p - 1, r)
    spaces = {i: oracle.x_space(r, i, p) for i in range(top + 1)}
    for i in spaces:
        for j in spaces:
            if i == j:
                continue
            t0 = time.perf_counter()
            inside = spaces[j].issubset(spaces[i])
            nec = predictor.doty_necessary(r, i, j, p)
            out.append(_record(p, r, i, j, "doty", f"necessary={_ser(nec)}", f"inclusion={_ser(inside)}", nec or not inside, t0))
    return out


# per-p suites

def suite_principal_series(p: int, config: SweepConfig) -> list[CheckRecord]:
    out = []
    for i in range(p - 1):
        for j in range(p - 1):
            t0 = time.perf_counter()
            ind = principal_series(p, i, j)
            want = predictor.induced_jh(i, j, p)
            got = jh_multiset(ind)
            out.append(_record(p, None, i, j, "principal:ind", want, got, want == got, t0))
            t0 = time.perf_counter()
            want_split = i == j
            got_split = socle_labels(ind) == got
            out.append(_record(p, None, i, j, "principal:ind-split", want_split, got_split, want_split == got_split, t0))
    return out


def _iso_status(A, B, seed: int) -> tuple[str, str]:
    res = modules_isomorphic(A, B, GAMMA, seed=seed)
    if not res.isomorphic:
        return "fail", res.mode
    if res.mode == "witnessed":
        return "pass", res.mode
    return "structural-only", res.mode


def periodicity_samples(p: int, count: int, seed: int) -> list[tuple[int, int, int, int, int]]:
    """Deterministic (r, s, n, m, i) tuples with r = s + p(p-1)."""
    rng = random.Random(f"periodicity:{seed}:{p}")
    out = []
    while len(out) < count:
        m = rng.randrange(1, p + 1)
        n = rng.randrange(0, m)
        i = rng.randrange(0, p)
        lo = m * (p + 1) - 1
        s = rng.randrange(lo, lo + 2 * p * (p - 1))
        out.append((s + p * (p - 1), s, n, m, i))
    return out


def suite_periodicity(p: int, config: SweepConfig) -> list[CheckRecord]:
    out = []
    for r, s, n, m, i in periodicity_samples(p, config.periodicity_samples, config.seed):
        claim = predictor.periodicity_claim(r, s, n, m, i, p)
        pairs = {
            "V^(n)/V^(m)": lambda x: oracle.v_segment_module(x, n, m, p),
            "X^(n)/X^(m)": lambda x: oracle.x_segment_module(x, i, n, m, p),
            "Q(i)": lambda x: q_module(x, i, p),
        }
        for what in claim.claims:
            build = pairs[what]
            tag = what.replace("^", "").replace("(", "").replace(")", "").replace("/", "-")
            t0 = time.perf_counter()
            A, B = build(r), build(s)
            out.append(_record(p, r, i, n, f"periodicity:{tag}:dim", f"s={s} m={m} dim={B.dim}", f"dim={A.dim}", A.dim == B.dim, t0))
            t0 = time.perf_counter()
            ja, jb = jh_multiset(A), jh_multiset(B)
            out.append(_record(p, r, i, n, f"periodicity:{tag}:jh", jb, ja, ja == jb, t0))
            t0 = time.perf_counter()
            if A.dim != B.dim or ja != jb:
                out.append(_record(p, r, i, n, f"periodicity:{tag}:iso", "isomorphic", "factors differ", False, t0))
                continue
            status, mode = _iso_status(A, B, config.seed)
            out.append(_record(p, r, i, n, f"periodicity:{tag}:iso", "isomorphic", mode, True, t0, status))
    return out


def _brute_G(r: int, p: int) -> list[int]:
    a = bracket(r, p)
    out = [0] * (r + 1)
    for lam in range(p):
        for j in range(r + 1):
            out[j] += math.comb(r, j) * (pow(lam, r - j) if (lam, r - j) != (0, 0) else 1)
    if a == p - 1:
        out[0] += 1
    return [x % p for x in out]


def _valid_interval_pairs(p: int) -> list[tuple[int, int]]:
    return [(a, i) for a in range(1, p) for i in range(1, p) if i not in (a, p - 1)]


def _valid_det_triples(p: int) -> list[tuple[int, int, int]]:
    return [(a, i, j) for i in range(p) for j in range(i, p + i) for a in range(i + j, p + i)]


def suite_identities(p: int, config: SweepConfig) -> list[CheckRecord]:
    rng = random.Random(f"identities:{config.seed}:{p}")
    n = config.samples
    out = []

    for _ in range(n):
        t0 = time.perf_counter()
        r = rng.randrange(p, 400)
        b = rng.randrange(1, p)
        m = rng.randrange(0, min(r, 3 * p))
        want, got = closed_binomial_sum(r, b, m, p), oracle.binomial_sum(r, b, m, p)
        out.append(_record(p, r, b, m, "identities:binomial-sum", want, got, want == got, t0))

    triples = _valid_det_triples(p)
    for _ in range(n):
        t0 = time.perf_counter()
        a, i, j = rng.choice(triples)
        r = rng.randrange(2 * p, 2 * p + 20 * p)
        want = matrix_det_closed_form(a, i, j, r, p)
        got = oracle.det_mod(oracle.det_matrix(a, i, j, r), p)
        out.append(_record(p, r, i, j, "identities:det", want, got, want == got, t0))

    pairs = _valid_interval_pairs(p)
    for _ in range(n if pairs else 0):
        t0 = time.perf_counter()
        a, i = rng.choice(pairs)
        r = rng.randrange(2 * p, 10**5)
        s = bracket(a - i, p)
        I, J = interval_members("I", a, i, p), interval_members("J", a, i, p)
        if i < s:
            bi, bj = math.comb(r - s - 1, i) % p == 0, math.comb(r - s, i) % p == 0
        else:
            bi, bj = math.comb(r - s, i + 1) % p == 0, math.comb(r - s + 1, i + 1) % p == 0
        want = (in_interval(I, r % p), in_interval(J, r % p))
        out.append(_record(p, r, i, a, "identities:interval", want, (bi, bj), want == (bi, bj), t0))

    for _ in range(n):
        t0 = time.perf_counter()
        i = rng.randrange(0, 5000)
        want, got = power_sum(i, p), oracle.power_sum(i, p)
        out.append(_record(p, None, i, None, "identities:power-sum", want, got, want == got, t0))

    for _ in range(n):
        t0 = time.perf_counter()
        top = rng.randrange(0, 5001)
        k = rng.randrange(0, top + 1)
        want, got = lucas_binomial(top, k, p), math.comb(top, k) % p
        out.append(_record(p, top, k, None, "identities:lucas", want, got, want == got, t0))

    for _ in range(n):
        t0 = time.perf_counter()
        r = rng.randrange(p, 300)
        a = bracket(r, p)
        G = special_polynomials(r, 1, p).G_r
        coeffs_ok = list(G.coeffs) == _brute_G(r, p)
        in_xa = x_filtration(oracle.x_space(r, 0, p), r, a, p).contains(G.array())
        in_vp, in_va = theta_divides(G, p), theta_divides(G, a + 1)
        vanish = math.comb(r, a) % p == 0
        ok = coeffs_ok and in_xa and in_vp == in_va == vanish
        got = f"coeffs={_ser(coeffs_ok)} X^(a)={_ser(in_xa)} V^(p)={_ser(in_vp)} V^(a+1)={_ser(in_va)}"
        out.append(_record(p, r, None, a, "identities:G_r", f"C(r,a)=0:{_ser(vanish)}", got, ok, t0))
    return out


PER_R: dict[str, Callable[[int, int, SweepConfig], list[CheckRecord]]] = {
    "dims": suite_dims,
    "equality": suite_equality,
    "filtration": suite_filtration,
    "principal": suite_principal_levels,
    "successive": suite_successive,
    "singular": suite_singular,
    "qstruct": suite_qstruct,
    "irred": suite_irred,
    "xrp": suite_xrp,
    "doty": suite_doty,
}
PER_P: dict[str, Callable[[int, SweepConfig], list[CheckRecord]]] = {
    "principal": suite_principal_series,
    "periodicity": suite_periodicity,
    "identities": suite_identities,
}


def _tasks(config: SweepConfig) -> list[tuple[str, int, int | None]]:
    # degree 0 carries no filtration, so the sweep starts at r = 1
    rs = range(max(config.r_min, 1), config.r_max + 1)
    if not rs:
        return []
    tasks: list[tuple[str, int, int | None]] = []
    for suite in SUITES:
        if suite not in config.suites:
            continue
        for p in config.ps:
            if suite in PER_P:
                tasks.append((suite, p, None))
            if suite in PER_R:
                tasks.extend((suite, p, r) for r in rs)
    return tasks


def _run_task(task: tuple[str, int, int | None], config: SweepConfig) -> list[CheckRecord]:
    suite, p, r = task
    try:
        if r is None:
            return PER_P[suite](p, config)
        return PER_R[suite](p, r, config)
    except Exception as exc:  # an oracle hard failure becomes a fail record
        return [CheckRecord(p, r, None, None, suite, "fail", "no error", f"{type(exc).__name__}: {exc}")]


def iter_records(config: SweepConfig) -> list[CheckRecord]:
    """All records of a sweep, in task order whatever the thread count."""
    tasks = _tasks(config)
    if config.aux_prime is not None:
        set_aux_prime(config.aux_prime)
    try:
        if config.threads == 1:
            chunks = [_run_task(t, config) for t in tasks]
        else:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                chunks = list(pool.map(lambda t: _run_task(t, config), tasks))
    finally:
        if config.aux_prime is not None:
            set_aux_prime(None)
    return [rec for chunk in chunks for rec in chunk]


def run_verify(config: SweepConfig, stream=None) -> tuple[list[CheckRecord], int]:
    """Run the selected suites; the exit code is 0 iff no record failed."""
    records = iter_records(config)
    if stream is not None:
        write_records(records, config.fmt, stream)
    elif config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            write_records(records, config.fmt, fh)
    code = 1 if any(rec.status == "fail" for rec in records) else 0
    return records, code


def summarize(records: Sequence[CheckRecord]) -> dict[str, dict[str, int]]:
    """Counts per suite and status."""
    out: dict[str, dict[str, int]] = {}
    for rec in records:
        row = out.setdefault(rec.suite, {s: 0 for s in STATUSES})
        row[rec.status] += 1
    return out


# lattice export

@dataclass
class LatticeNode:
    ident: str
    dim: int
    members: list[int] = field(default_factory=list)


def emit_lattice(p: int, r: int, max_i: int) -> str:
    """DOT graph of the distinct X_{r-i}, 0 <= i <= max_i, with covering inclusions."""
    if not 0 <= max_i <= p:
        raise ValueError(f"max_i must lie in [0, p], got {max_i}")
    top = min(max_i, r) if max_i < p else max_i
    spaces = {i: oracle.x_space(r, i, p) for i in range(top + 1)}
    nodes: list[tuple[LatticeNode, object]] = []
    for i, S in spaces.items():
        for node, T in nodes:
            if T == S:
                node.members.append(i)
                break
        else:
            nodes.append((LatticeNode(f"Xr-{i}", S.dim, [i]), S))

    below = {
        (a, b)
        for a, (_, A) in enumerate(nodes)
        for b, (_, B) in enumerate(nodes)
        if a != b and A.issubset(B)
    }
    covers = [(a, b) for a, b in sorted(below) if not any((a, c) in below and (c, b) in below for c in range(len(nodes)))]

    lines = [f'digraph "X_{r} p={p}" {{', "  rankdir=BT;"]
    for node, _ in nodes:
        label = f"dim {node.dim}\\ni = {','.join(map(str, node.members))}"
        lines.append(f'  "{node.ident}" [label="{label}"];')
    for a, b in covers:
        small, big = nodes[a][0], nodes[b][0]
        agree = all(predictor.doty_necessary(r, i, j, p) for i in big.members for j in small.members if i <= r and j <= r)
        lines.append(f'  "{small.ident}" -> "{big.ident}" [label="doty {"agrees" if agree else "disagrees"}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def explain_q(p: int, r: int, i: int, compare: bool = False) -> str:
    """The recursion tree for Q(i); with compare, the oracle factors and any difference are appended."""
    text = predictor.explain_q(r, i, p)
    if not compare:
        return text
    want = predictor.q_tree(r, i, p).result
    got = oracle.q_jh(r, i, p)
    lines = [text, f"oracle: {got}"]
    if want == got:
        lines.append("agrees with the oracle")
    else:
        missing = JHMultiset(p, Counter(got.counts()) - Counter(want.counts()))
        extra = JHMultiset(p, Counter(want.counts()) - Counter(got.counts()))
        lines.append(f"DIFFERS: predicted extra {extra}; predicted missing {missing}")
    return "\n".join(lines)


def config_from_file(path: str) -> dict[str, str]:
    """Read a flat key=value file; blank lines and # comments are skipped."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out
