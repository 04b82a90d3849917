"""Closed-form predictions for the monomial lattice and the Q(i) quotients.

Every public function raises NotApplicable when asked about parameters
outside the hypotheses of the result it implements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .jhfactor import JHInconsistency, JHMultiset
from .modarith import (
    Ordering,
    bracket,
    carry_pattern,
    interval_members,
    lex_compare,
    sigma_p,
)


class NotApplicable(ValueError):
    """The parameters fall outside the window of every applicable result."""


@dataclass(frozen=True)
class StructureReport:
    kind: str  # dimension, equality, jh-multiset, iso-target, exact-sequence tree
    value: object
    window: str
    citation: str


def _need(cond: bool, why: str) -> None:
    if not cond:
        raise NotApplicable(why)


def _check_p(p: int) -> None:
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")


# basic JH building blocks

def lab(n: int, j: int, p: int) -> JHMultiset:
    return JHMultiset(p, {(n, j % (p - 1)): 1})


def empty(p: int) -> JHMultiset:
    return JHMultiset(p)


def induced_jh(m: int, n: int, p: int) -> JHMultiset:
    """Factors of ind(chi_1^m chi_2^n): socle V_[n-m] (x) D^m, cosocle V_{p-1-[n-m]} (x) D^n."""
    k = bracket(n - m, p)
    return lab(k, m, p) + lab(p - 1 - k, n, p)


def level_jh(r: int, m: int, p: int) -> JHMultiset:
    """Factors of V_r^(m) / V_r^(m+1), read off V_{r'} (x) D^m with r' = r - m(p+1)."""
    rp = r - m * (p + 1)
    if rp < 0:
        return empty(p)
    if rp <= p - 1:
        return lab(rp, m, p)
    return induced_jh(m, r - m, p)


def level_sub(r: int, m: int, p: int) -> JHMultiset:
    a = bracket(r, p)
    return lab(bracket(a - 2 * m, p), m, p)


def level_top(r: int, m: int, p: int) -> JHMultiset:
    a = bracket(r, p)
    return lab(p - 1 - bracket(a - 2 * m, p), a - m, p)


def segment_jh(r: int, n: int, m: int, p: int) -> JHMultiset:
    """Factors of V_r^(n) / V_r^(m)."""
    out = empty(p)
    for k in range(n, m):
        out = out + level_jh(r, k, p)
    return out


def v_jh(r: int, p: int) -> JHMultiset:
    """Factors of V_r, assembled level by level."""
    return segment_jh(r, 0, r // (p + 1) + 1, p)


def _sub(A: JHMultiset, B: JHMultiset, where: str) -> JHMultiset:
    try:
        return A - B
    except ValueError as exc:
        raise JHInconsistency(f"{where}: cannot remove {B} from {A}") from exc


# dimensions

def dim_x_r(r: int, p: int) -> int:
    _need(r >= 1, "dim X_r needs r >= 1")
    s = sigma_p(r, p)
    return s + 1 if s <= p - 1 else p + 1


def dim_x_r_minus_1(r: int, p: int) -> int:
    _need(r >= 2 * p + 1, "dim X_{r-1} needs r >= 2p+1")
    s = sigma_p(r, p)
    delta = 1 if r % p == 0 else 0
    return 2 * s + delta * (p + 2 - s) if s <= p else 2 * p + 2


def dim_x_ri(r: int, i: int, p: int) -> int:
    _check_p(p)
    if not 0 <= i <= p - 1:
        raise ValueError(f"dim_x_ri needs 0 <= i <= p-1, got {i}")
    if i == 0:
        return dim_x_r(r, p)
    r0 = r % p
    if r0 >= i:
        _need(r >= p, "needs r >= p")
        s, t = sigma_p(r - i, p), sigma_p(r - r0, p)
        if s < r0:
            return (r0 + 1) * (t + 1)
        if s <= p:
            return (i + 1) * (s + 1)
        return (i + 1) * (p + 1)
    if i == 1:
        return dim_x_r_minus_1(r, p)
    _need(r > (i + 1) * (p + 1), "needs r > (i+1)(p+1) when r0 < i")
    s, t = sigma_p(r - i, p), sigma_p(r - r0, p)
    if t >= p:
        return (i + 1) * (p + 1)
    if s >= p:
        return (i - r0) * (p + 1) + (t + 1) * (r0 + 1)
    return (p + r0 + 1) * t


# equalities

def monomials_equal(r: int, i: int, j: int, p: int) -> bool:
    """Whether X_{r-j} = X_{r-i} for 0 <= j < i <= p-1 and r >= p."""
    _check_p(p)
    if not 0 <= j < i <= p - 1:
        raise ValueError(f"monomials_equal needs 0 <= j < i <= p-1, got i={i} j={j}")
    _need(r >= p, "needs r >= p")
    r0 = r % p
    return not (j <= r0 <= i - 1) and sigma_p(r - j, p) <= p - 1 and sigma_p(r - r0, p) <= j


# successive and singular quotients

def successive_quotient(r: int, i: int, p: int) -> JHMultiset:
    """Factors of X_{r-i} / X_{r-(i-1)}."""
    _check_p(p)
    if not 1 <= i <= p - 1:
        raise ValueError(f"successive_quotient needs 1 <= i <= p-1, got {i}")
    _need(r >= p, "needs r >= p")
    r0, s = r % p, sigma_p(r - i, p)
    if r0 >= i:
        if s < r0:
            return empty(p)
        if s <= p - 1:
            return lab(p - 1 - bracket(2 * i - r, p), i, p)
        return induced_jh(r - i, i, p)
    _need(r > (i + 1) * (p + 1), "needs r > (i+1)(p+1) when r0 < i")
    if s < p - 1:
        return empty(p)
    if s == p - 1:
        return lab(p - 1 - i, i, p)
    return induced_jh(r - i, i, p)


def reduce_singular(r: int, i: int, j: int, p: int) -> int:
    """The index i' in {j, [a-j], 0} with X_{r-i}^(j)/X_{r-i}^(j+1) = X_{r-i'}^(j)/X_{r-i'}^(j+1)."""
    a = bracket(r, p)
    c = bracket(a - j, p)
    if (j <= i < c) or (c <= j <= i):
        return j
    if (c <= i < j) or (j <= c <= i):
        return c
    return 0


def _singular_base(r: int, i: int, j: int, p: int) -> tuple[JHMultiset, str]:
    """X_{r-i}^(j)/X_{r-i}^(j+1) for j in {i, [a-i]}, or i = 0."""
    a, r0 = bracket(r, p), r % p
    if i == 0:
        if j == a and r0 >= a:
            return lab(p - 1 - a, a, p), "singular-X_r"
        return empty(p), "singular-X_r"
    c = bracket(a - i, p)
    if i == a:
        # j in {a, p-1}
        if j == a and r0 >= a:
            return lab(p - 1 - a, a, p), "singular-i=a"
        if j == p - 1 and r0 == a - 1:
            return lab(a, 0, p), "singular-i=a"
        return empty(p), "singular-i=a"
    if i == p - 1:
        # a < p-1 here and j in {a, p-1}
        if j == a and a - 1 <= r0 <= p - 2:
            return level_jh(r, a, p), "singular-i=p-1"
        inner, _ = _singular_base(r, a, j, p)
        return inner, "singular-i=p-1"
    if i < c:
        I = interval_members("I", a, j, p)
        if r0 not in I:
            return lab(bracket(a - 2 * j, p), j, p), "singular-i<[a-i]"
        if j == c and (r - c - i) % p == 0:
            return level_jh(r, j, p), "singular-i<[a-i]"
        return empty(p), "singular-i<[a-i]"
    if i == c:
        J = interval_members("J", a, i, p)
        if r0 not in J:
            return level_jh(r, i, p), "singular-i=[a-i]"
        if r0 == i:
            return lab(0, i, p), "singular-i=[a-i]"
        if r0 == i - 1:
            return lab(p - 1, i, p), "singular-i=[a-i]"
        return empty(p), "singular-i=[a-i]"
    # [a-i] < i < p-1
    J = interval_members("J", a, j, p)
    cj = bracket(a - j, p)
    if r0 not in J:
        return level_jh(r, j, p), "singular-i>[a-i]"
    if r0 == cj - 1 and j >= cj:
        return lab(bracket(a - 2 * i, p), i, p), "singular-i>[a-i]"
    if r0 == cj and j <= cj:
        return lab(p - 1 - bracket(a - 2 * i, p), a - i, p), "singular-i>[a-i]"
    if r0 in interval_members("I", a, j, p) and (r - c - i) % p:
        return empty(p), "singular-i>[a-i]"
    raise JHInconsistency(f"singular quotient case table not exhaustive at r={r} i={i} j={j} p={p}")


def singular_quotient(r: int, i: int, j: int, p: int) -> JHMultiset:
    """Factors of X_{r-i}^(j) / X_{r-i}^(j+1)."""
    return singular_with_route(r, i, j, p)[0]


def singular_with_route(r: int, i: int, j: int, p: int) -> tuple[JHMultiset, str]:
    _check_p(p)
    if not (0 <= i <= p - 1 and 0 <= j <= p - 1):
        raise ValueError(f"singular_quotient needs 0 <= i, j <= p-1, got i={i} j={j}")
    _need(r >= p and r >= j * (p + 1) + p, "needs r >= j(p+1)+p")
    a = bracket(r, p)
    if j == 0:
        return (lab(a, 0, p) if i < a else level_jh(r, 0, p)), "structure-X(1)"
    base = reduce_singular(r, i, j, p)
    value, cite = _singular_base(r, base, j, p)
    return value, f"reduction(i'={base}) -> {cite}"


# the Q(i) recursion

@dataclass
class QNode:
    i: int
    citation: str
    kind: str  # "W" for 0 -> W -> Q(i) -> Q(child) -> 0, "P" for 0 -> W' -> P(i) -> Q(i) -> 0
    W: JHMultiset
    child: "QNode | None"
    result: JHMultiset
    notes: list[str] = field(default_factory=list)

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        head = f"{pad}Q({self.i}) = {self.result}   [{self.citation}]"
        out = [head]
        for n in self.notes:
            out.append(f"{pad}  {n}")
        if self.child is not None:
            out.extend(self.child.lines(indent + 1))
        return out


def _q_tree(r: int, i: int, p: int) -> QNode:
    a, r0 = bracket(r, p), r % p
    if i == 0:
        return QNode(0, "structure-Q(0)", "base", empty(p), None, lab(p - 1 - a, a, p))
    c = bracket(a - i, p)
    if i not in (a, p - 1):
        if i < c:
            child = _q_tree(r, i - 1, p)
            if r0 not in interval_members("I", a, i, p):
                W = level_top(r, i, p)
                note = f"r0={r0} not in I(a,i): W = cosocle of level {i}"
            else:
                W = level_jh(r, i, p)
                note = f"r0={r0} in I(a,i): W = level {i}"
            cite = "Q-i<[a-i]"
        elif i == c:
            child = _q_tree(r, i - 1, p)
            if r0 not in interval_members("J", a, i, p):
                W, note = empty(p), f"r0={r0} not in J(a,i): W = 0"
            elif r0 == i:
                W, note = lab(p - 1, i, p), "r0 = i: W = V_{p-1} (x) D^i"
            elif r0 == i - 1:
                W, note = lab(0, i, p), "r0 = i-1: W = V_0 (x) D^i"
            else:
                W, note = level_jh(r, i, p), f"W = level {i}"
            cite = "Q-i=[a-i]"
        else:
            child = _q_tree(r, c - 1, p)
            J = interval_members("J", a, i, p)
            if r0 not in J:
                W, note = empty(p), f"r0={r0} not in J(a,i): W = 0"
            elif r0 not in interval_members("I", a, c, p):
                t = bracket(a - r0, p)
                if t < r0 + 1:
                    W = segment_jh(r, t + 1, i + 1, p) + lab(bracket(a - 2 * r0, p), r0, p)
                    note = f"case (ii)(a): [a-r0]={t} < r0+1"
                elif t == r0 + 1:
                    W = segment_jh(r, t, i + 1, p)
                    note = f"case (ii)(b): [a-r0]={t} = r0+1"
                else:
                    W = segment_jh(r, t, i + 1, p) + lab(p - 1 - bracket(2 * r0 + 2 - a, p), r0 + 1, p)
                    note = f"case (ii)(c): [a-r0]={t} > r0+1"
            elif (r - c - i) % p:
                W, note = segment_jh(r, c, i + 1, p), "case (iii): W = V^([a-i])/V^(i+1)"
            else:
                raise JHInconsistency(f"Q({i}) case table not exhaustive at r={r} p={p}")
            cite = "Q-i>[a-i]"
        return QNode(i, cite, "W", W, child, W + child.result, [note])
    # i = a or i = p-1: go through P(i)
    child = _q_tree(r, i - 1, p)
    coker = _sub(level_jh(r, i, p), singular_quotient(r, i - 1, i, p), f"P({i}) cokernel")
    P = child.result + coker
    if i == a:
        if a == p - 1 and r0 == p - 2:
            Wp, note = lab(0, 0, p) + lab(p - 1, 0, p), "a = p-1, r0 = p-2: W' = V_0 + V_{p-1}"
        else:
            Wp, note = lab(p - 1 - a, a, p), "W' = V_{p-1-a} (x) D^a"
        cite = "Q-i=a"
    else:
        if r0 <= a - 2 or r0 == p - 1:
            Wp, note = empty(p), "W' = 0, Q(p-1) = P(p-1)"
        elif r0 == a - 1:
            Wp, note = level_jh(r, a, p), f"r0 = a-1: W' = level {a}"
        else:
            Wp, note = lab(a, 0, p), "W' = V_a"
        cite = "Q-i=p-1"
    result = _sub(P, Wp, f"Q({i}) from P({i})")
    notes = [f"P({i}) = Q({i - 1}) + {coker}", note]
    return QNode(i, cite, "P", Wp, child, result, notes)


def _q_window(r: int, i: int, p: int) -> None:
    _check_p(p)
    if not 0 <= i <= p - 1:
        raise ValueError(f"Q(i) needs 0 <= i <= p-1, got {i}")
    _need(r >= p and r >= i * (p + 1) + p, "needs r >= i(p+1)+p")


def q_tree(r: int, i: int, p: int) -> QNode:
    _q_window(r, i, p)
    return _q_tree(r, i, p)


def q_levelwise(r: int, i: int, p: int) -> JHMultiset:
    """Q(i) as the sum over levels m <= i of level m minus X_{r-i}^(m)/X_{r-i}^(m+1)."""
    _q_window(r, i, p)
    out = empty(p)
    for m in range(i + 1):
        out = out + _sub(level_jh(r, m, p), singular_quotient(r, i, m, p), f"level {m} of Q({i})")
    return out


@lru_cache(maxsize=4096)
def q_structure(r: int, i: int, p: int) -> JHMultiset:
    """Factors of Q(i); both routes are computed and must agree."""
    tree = q_tree(r, i, p).result
    flat = q_levelwise(r, i, p)
    if tree != flat:
        raise JHInconsistency(f"Q({i}) at r={r}, p={p}: recursion gives {tree}, levelwise sum gives {flat}")
    return tree


def explain_q(r: int, i: int, p: int) -> str:
    return "\n".join(q_tree(r, i, p).lines())


def q_irreducible(r: int, i: int, p: int) -> bool:
    _q_window(r, i, p)
    if i < 1:
        raise ValueError("q_irreducible needs i >= 1")
    a, r0 = bracket(r, p), r % p
    return (i in (a - 1, a) and r0 >= a) or (i == p - 1 and a == 1 and r0 == 0)


# X_{r-p}

@dataclass(frozen=True)
class XrpPrediction:
    case: str  # divide, middle or upper
    s: int
    dim: int | None
    jh: JHMultiset | None


def xrp_case(r: int, p: int) -> str:
    lo, hi = sigma_p(r - p, p), sigma_p(r - 1, p)
    return "divide" if lo < hi else "middle" if lo == hi else "upper"


def dim_x_r_minus_p(r: int, p: int) -> int:
    """Closed form for dim X_{r-p}, valid for r >= p(2p+1)."""
    _check_p(p)
    _need(r >= p * (2 * p + 1), "needs r >= p(2p+1)")
    n, u = 0, r
    while u % p == 0:
        n, u = n + 1, u // p
    s = sigma_p(r, p)
    delta = 1 if n >= 2 or sigma_p(r - p, p) > sigma_p(r - 1, p) else 0
    return 2 * s + delta * (p + 2 - s) if s <= p else 2 * p + 2


def _x_s_jh(s: int, p: int) -> JHMultiset:
    a = bracket(s, p)
    if sigma_p(s, p) == a:
        return lab(a, 0, p)
    return lab(a, 0, p) + lab(p - a - 1, a, p)


def _x_s_minus_1_jh(s: int, p: int) -> JHMultiset | None:
    if 1 <= s <= p - 1:
        return lab(s, 0, p)
    try:
        return _x_s_jh(s, p) + successive_quotient(s, 1, p)
    except NotApplicable:
        return None


def xrp_structure(r: int, p: int) -> XrpPrediction:
    _check_p(p)
    _need(r >= 2 * p + 1, "needs r >= 2p+1")
    case = xrp_case(r, p)
    s = {"divide": r // p, "middle": r, "upper": r * p}[case]
    if s >= 2 * p + 1:
        dim = dim_x_r_minus_1(s, p)
    elif 1 <= s <= p - 1:
        dim = s + 1
    else:
        try:
            dim = dim_x_ri(s, 1, p)
        except NotApplicable:
            dim = None
    if r % p:
        a = bracket(r, p)
        if a == 1:
            jh = v_jh(2 * p - 1, p)
            if sigma_p(r - p, p) > p - 1:
                jh = jh + lab(1, 0, p)
        else:
            jh = lab(a - 2, 1, p) + lab(a, 0, p)
            if sigma_p(r - 1, p) > a - 1:
                jh = jh + lab(p - a + 1, a - 1, p) + lab(p - a - 1, a, p)
            elif sigma_p(r - p, p) > a - 1:
                jh = jh + lab(p - a + 1, a - 1, p)
    else:
        jh = _x_s_minus_1_jh(s, p)
    return XrpPrediction(case, s, dim, jh)


# carry patterns

def doty_necessary(r: int, i: int, j: int, p: int) -> bool:
    """Necessary condition (over the algebraic closure) for X_{r-j} to lie in X_{r-i}."""
    if not (0 <= i <= r and 0 <= j <= r):
        raise ValueError("doty_necessary needs 0 <= i, j <= r")
    return lex_compare(carry_pattern(r, j, p), carry_pattern(r, i, p)) in (Ordering.LT, Ordering.EQ)


# periodicity

@dataclass(frozen=True)
class PeriodicityClaim:
    p: int
    r: int
    s: int
    n: int
    m: int
    i: int
    claims: tuple[str, ...]


def periodicity_claim(r: int, s: int, n: int, m: int, i: int, p: int) -> PeriodicityClaim:
    _check_p(p)
    if (r - s) % (p * (p - 1)) or r < s or s < m * (p + 1) - 1:
        raise ValueError("periodicity needs r = s mod p(p-1) and r >= s >= m(p+1)-1")
    if not (0 <= n < m <= p and 0 <= i <= p - 1):
        raise ValueError("periodicity needs 0 <= n < m <= p and 0 <= i <= p-1")
    claims = ["V^(n)/V^(m)", "X^(n)/X^(m)"]
    if s >= i * (p + 1) + p and s >= p:
        claims.append("Q(i)")
    return PeriodicityClaim(p, r, s, n, m, i, tuple(claims))


# reports

def report(kind: str, *args: int) -> StructureReport:
    """Wrap a prediction with its window and citation key."""
    table = {
        "dim": (dim_x_ri, "dimension", "i=0: r>=1; r0>=i: r>=p; i=1: r>=2p+1; r0<i: r>(i+1)(p+1)", "dimension corollaries"),
        "equal": (monomials_equal, "equality", "r>=p", "final X_{r-i}=X_{r-j}"),
        "successive": (successive_quotient, "jh-multiset", "r0>=i: r>=p; r0<i: r>(i+1)(p+1)", "successive quotients"),
        "singular": (singular_quotient, "jh-multiset", "r>=j(p+1)+p", "reduction + singular propositions"),
        "qstruct": (q_structure, "exact-sequence tree", "r>=i(p+1)+p", "structure of Q(i)"),
        "irred": (q_irreducible, "equality", "r>=i(p+1)+p", "irreducible Q(i)"),
        "xrp": (xrp_structure, "iso-target", "r>=2p+1", "trichotomy for X_{r-p}"),
    }
    fn, claim, window, cite = table[kind]
    return StructureReport(claim, fn(*args), window, cite)


__all__ = [
    "NotApplicable",
    "StructureReport",
    "QNode",
    "XrpPrediction",
    "PeriodicityClaim",
    "induced_jh",
    "level_jh",
    "segment_jh",
    "v_jh",
    "dim_x_ri",
    "dim_x_r_minus_p",
    "monomials_equal",
    "successive_quotient",
    "singular_quotient",
    "singular_with_route",
    "reduce_singular",
    "q_tree",
    "q_levelwise",
    "q_structure",
    "explain_q",
    "q_irreducible",
    "xrp_case",
    "xrp_structure",
    "doty_necessary",
    "periodicity_claim",
    "report",
]
