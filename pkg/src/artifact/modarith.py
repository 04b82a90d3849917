"""Base-p combinatorics used throughout the package.

Digit sums, the bracket reduction [n], Lucas binomials, power sums over F_p,
carry patterns and the residue intervals I(a, i) and J(a, i).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class DigitExpansion:
    """Base-p digits of a nonnegative integer, least significant first."""

    p: int
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(d * self.p**k for k, d in enumerate(self.digits))

    def __getitem__(self, k: int) -> int:
        return self.digits[k] if k < len(self.digits) else 0

    def __len__(self) -> int:
        return len(self.digits)


def digits(n: int, p: int) -> DigitExpansion:
    if n < 0:
        raise ValueError(f"digits needs n >= 0, got {n}")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return DigitExpansion(p, tuple(out))


def sigma_p(n: int, p: int) -> int:
    """Sum of the base-p digits of n."""
    return sum(digits(n, p).digits)


def bracket(n: int, p: int) -> int:
    """The representative of n mod (p-1) lying in {1, ..., p-1}."""
    if p < 3:
        raise ValueError("bracket needs p >= 3")
    return (n - 1) % (p - 1) + 1


def lucas_binomial(m: int, n: int, p: int) -> int:
    """C(m, n) mod p, digit by digit."""
    if m < 0 or n < 0:
        raise ValueError("lucas_binomial needs m, n >= 0")
    result = 1
    while n:
        m, mk = divmod(m, p)
        n, nk = divmod(n, p)
        if nk > mk:
            return 0
        result = result * math.comb(mk, nk) % p
    return result


def power_sum(i: int, p: int) -> int:
    """Sum of lambda**i over lambda in F_p, with 0**0 = 1. -1 is returned as p-1."""
    if i > 0 and i % (p - 1) == 0:
        return p - 1
    return 0


def closed_binomial_sum(r: int, b: int, m: int, p: int) -> int:
    """Closed form of sum over l = b mod (p-1) of C(r, l) C(l, m), mod p."""
    if m < 0 or not 1 <= b <= p - 1 or r <= m:
        raise ValueError(f"closed_binomial_sum: bad arguments r={r} b={b} m={m}")
    a = bracket(r, p)
    bm = bracket(b - m, p)
    inner = math.comb(bracket(a - m, p), bm) + (1 if bm == p - 1 else 0)
    return lucas_binomial(r, m, p) * inner % p


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class CarryPattern:
    """Carries of i + (r - i) in base p, least significant position first."""

    bits: tuple[int, ...]


def carry_pattern(r: int, i: int, p: int) -> CarryPattern:
    if not 0 <= i <= r:
        raise ValueError(f"carry_pattern needs 0 <= i <= r, got i={i} r={r}")
    x, y = digits(i, p), digits(r - i, p)
    width = max(len(digits(r, p)), 1)
    bits = []
    carry = 0
    for k in range(width):
        carry = 1 if x[k] + y[k] + carry >= p else 0
        bits.append(carry)
    return CarryPattern(tuple(bits))


def lex_compare(c1: CarryPattern, c2: CarryPattern) -> Ordering:
    """Lexicographic comparison reading from the most significant carry."""
    n = max(len(c1.bits), len(c2.bits))
    a = c1.bits + (0,) * (n - len(c1.bits))
    b = c2.bits + (0,) * (n - len(c2.bits))
    ra, rb = a[::-1], b[::-1]
    if ra < rb:
        return Ordering.LT
    if ra > rb:
        return Ordering.GT
    return Ordering.EQ


@dataclass(frozen=True)
class IntervalSpec:
    kind: str
    p: int
    a: int
    i: int
    members: frozenset[int]

    def __contains__(self, r0: int) -> bool:
        return r0 % self.p in self.members


def _residues(lo: int, hi: int, p: int) -> set[int]:
    return {k % p for k in range(lo, hi + 1)}


@lru_cache(maxsize=None)
def interval_members(kind: str, a: int, i: int, p: int) -> IntervalSpec:
    """The residue sets I(a, i) and J(a, i) modulo p."""
    if kind not in ("I", "J"):
        raise ValueError(f"unknown interval kind {kind!r}")
    if not (1 <= a <= p - 1 and 1 <= i <= p - 1) or i in (a, p - 1):
        raise ValueError(f"interval needs 1 <= a, i <= p-1 and i not in (a, p-1); got a={a} i={i}")
    s = bracket(a - i, p)
    shift = 0 if kind == "I" else 1
    if i < a:
        lo = a - i + 1 if i < a - i else a - i
        members = _residues(lo - shift, a - shift, p)
    else:
        hi = s if i < s else s - 1
        members = set(range(p)) - _residues(a - shift, hi - shift, p)
    return IntervalSpec(kind, p, a, i, frozenset(members))


def in_interval(spec: IntervalSpec, r0: int) -> bool:
    return r0 in spec


def choose_s(r: int, b: int, u: int, p: int) -> int:
    """An s with s = b mod p, Sigma(s) = b + u and C(r, s) nonzero mod p.

    Digits are taken from the highest position of r downward.
    """
    d = digits(r, p)
    if r < p or not 0 <= b <= d[0] or not 1 <= u <= sigma_p(r, p) - d[0]:
        raise ValueError(f"choose_s: bad arguments r={r} b={b} u={u} p={p}")
    s, left = b, u
    for k in range(len(d) - 1, 0, -1):
        take = min(d[k], left)
        s += take * p**k
        left -= take
    return s


def matrix_det_closed_form(a: int, i: int, j: int, r: int, p: int) -> int:
    """Closed form for det( C(r-n, m) C(a-m-n, j-m) ), 0 <= m, n <= i, mod p."""
    if not (0 <= i <= j and i + j <= a < p + i) or r < 2 * p:
        raise ValueError(f"matrix_det_closed_form: bad arguments a={a} i={i} j={j} r={r}")
    num = math.comb(a - 2 * i, j - i) % p
    den = 1
    for l in range(i):
        num = num * math.factorial(a - i - l) * pow(r - (a - l), i - l, p) % p
        den = den * math.factorial(j - l) * math.factorial(a - j - l) % p
    return num * pow(den, -1, p) % p


def sigma_shift_case(r: int, p: int) -> str:
    """Compare Sigma(r - p) with Sigma(r - 1) for r > p.

    Returns "lower", "equal" or "upper" according as Sigma(r-p) is smaller,
    equal or larger.
    """
    lo, hi = sigma_p(r - p, p), sigma_p(r - 1, p)
    if lo < hi:
        return "lower"
    return "equal" if lo == hi else "upper"
