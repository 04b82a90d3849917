"""Brute-force counterparts of the predictor, built from explicit subspaces."""

from __future__ import annotations

from functools import lru_cache

from .ffla import Subspace
from .jhfactor import JHMultiset, jh_multiset
from .polyrep import (
    GAMMA,
    ModuleHandle,
    image_in_level_quotient,
    monomial_submodule,
    q_module,
    small_subquotient,
    subquotient,
    theta_level,
    x_filtration,
    x_r_minus_p,
)


@lru_cache(maxsize=2048)
def x_space(r: int, i: int, p: int) -> Subspace:
    """X_{r-i} for 0 <= i <= p."""
    if i == p:
        return x_r_minus_p(r, p).space
    return monomial_submodule(r, i, p).space


def dim_x(r: int, i: int, p: int) -> int:
    return x_space(r, i, p).dim


def monomials_equal(r: int, i: int, j: int, p: int) -> bool:
    return x_space(r, i, p) == x_space(r, j, p)


def successive_module(r: int, i: int, p: int) -> ModuleHandle:
    return subquotient(x_space(r, i, p), x_space(r, i - 1, p), r, p, GAMMA, f"X_{r}-{i}/X_{r}-{i - 1}")


def successive_jh(r: int, i: int, p: int) -> JHMultiset:
    return jh_multiset(successive_module(r, i, p))


def singular_module(r: int, i: int, j: int, p: int) -> ModuleHandle:
    """X_{r-i}^(j) / X_{r-i}^(j+1), realised inside V_r / V_r^(j+1)."""
    level = theta_level(r, j + 1, p)
    Xj = x_filtration(x_space(r, i, p), r, j, p)
    sub = image_in_level_quotient(Xj, level)
    return small_subquotient(level.quotient_module(GAMMA), sub, None, f"X^({j})/X^({j + 1})")


def singular_jh(r: int, i: int, j: int, p: int) -> JHMultiset:
    return jh_multiset(singular_module(r, i, j, p))


@lru_cache(maxsize=4096)
def q_jh(r: int, i: int, p: int) -> JHMultiset:
    return jh_multiset(q_module(r, i, p))


def xrp_module(r: int, p: int) -> ModuleHandle:
    return subquotient(x_r_minus_p(r, p).space, _zero(r, p), r, p, GAMMA, f"X_{r}-{p}")


def x_s_minus_1_module(s: int, p: int) -> ModuleHandle:
    return subquotient(monomial_submodule(s, 1, p).space, _zero(s, p), s, p, GAMMA, f"X_{s}-1")


def _zero(r: int, p: int) -> Subspace:
    from .ffla import prime_field, zero_subspace

    return zero_subspace(r + 1, prime_field(p))


# V-filtration and X-filtration segments

def v_segment_module(r: int, n: int, m: int, p: int) -> ModuleHandle:
    from .polyrep import theta_segment

    return theta_segment(r, n, m, p)


def x_segment_module(r: int, i: int, n: int, m: int, p: int) -> ModuleHandle:
    """X_{r-i}^(n) / X_{r-i}^(m), realised inside V_r / V_r^(m)."""
    level = theta_level(r, m, p)
    Xn = x_filtration(x_space(r, i, p), r, n, p)
    sub = image_in_level_quotient(Xn, level)
    return small_subquotient(level.quotient_module(GAMMA), sub, None, f"X^({n})/X^({m})")


# combinatorial identities

def binomial_sum(r: int, b: int, m: int, p: int) -> int:
    import math

    return sum(math.comb(r, l) * math.comb(l, m) for l in range(r + 1) if (l - b) % (p - 1) == 0) % p


def det_mod(rows: list[list[int]], p: int) -> int:
    """Determinant mod p by elimination over F_p."""
    M = [[x % p for x in row] for row in rows]
    n, det = len(M), 1
    for c in range(n):
        piv = next((k for k in range(c, n) if M[k][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for k in range(c + 1, n):
            f = M[k][c] * inv % p
            if f:
                M[k] = [(x - f * y) % p for x, y in zip(M[k], M[c])]
    return det % p


def det_matrix(a: int, i: int, j: int, r: int) -> list[list[int]]:
    import math

    def c(n: int, k: int) -> int:
        return math.comb(n, k) if 0 <= k <= n else 0

    return [[c(r - n, m) * c(a - m - n, j - m) for n in range(i + 1)] for m in range(i + 1)]


def power_sum(i: int, p: int) -> int:
    return sum(pow(lam, i, p) if (lam, i) != (0, 0) else 1 for lam in range(p)) % p
