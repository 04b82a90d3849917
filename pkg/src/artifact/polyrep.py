"""Symmetric power representations V_r of M_2(F_p) and their submodules.

A polynomial F = sum_j c_j X^{r-j} Y^j in V_r is stored as the coefficient
vector (c_0, ..., c_r). The monoid acts on the left by
g.F(X, Y) = F(aX + cY, bX + dY) for g = (a b; c d). Matrices of module
actions act on column coordinate vectors, so rho(gh) = rho(g) rho(h); row
vectors are moved with rows @ rho(g).T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .ffla import (
    Subspace,
    echelon_span,
    full_subspace,
    kernel,
    prime_field,
    rank,
    rref,
    zero_subspace,
)
from .modarith import bracket, power_sum

GAMMA = ("u", "w", "d")
MONOID = ("u", "w", "d", "m")


# group elements

@dataclass(frozen=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def invertible(self) -> bool:
        return self.det != 0

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.p,
        )

    def inverse(self) -> "GroupElement":
        k = pow(self.det, -1, self.p)
        return GroupElement(self.d * k, -self.b * k, -self.c * k, self.a * k, self.p)

    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return g
    return 1  # p = 2


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def generator(name: str, p: int) -> GroupElement:
    if name == "u":
        return GroupElement(1, 1, 0, 1, p)
    if name == "w":
        return GroupElement(0, 1, 1, 0, p)
    if name == "d":
        return GroupElement(primitive_root(p), 0, 0, 1, p)
    if name == "m":
        return GroupElement(1, 0, 0, 0, p)
    raise KeyError(f"unknown generator {name!r}")


def identity(p: int) -> GroupElement:
    return GroupElement(1, 0, 0, 1, p)


# polynomials

@dataclass(frozen=True)
class HomogPoly:
    p: int
    r: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.r + 1:
            raise ValueError(f"degree {self.r} needs {self.r + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))

    @classmethod
    def from_array(cls, v, p: int) -> "HomogPoly":
        v = np.asarray(v).ravel()
        return cls(p, len(v) - 1, tuple(int(x) for x in v))

    @classmethod
    def monomial(cls, r: int, j: int, p: int, coeff: int = 1) -> "HomogPoly":
        c = [0] * (r + 1)
        c[j] = coeff
        return cls(p, r, tuple(c))

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        prod = np.convolve(self.array(), other.array()) % self.p
        return HomogPoly.from_array(prod, self.p)

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        return HomogPoly(self.p, self.r, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                c = c if c <= self.p // 2 else c - self.p
                x, y = self.r - j, j
                mono = "".join(s + (f"^{e}" if e > 1 else "") for s, e in (("X", x), ("Y", y)) if e)
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms) if terms else "0"


def _linear_power(s: int, t: int, e: int, p: int) -> np.ndarray:
    """Coefficients of (sX + tY)^e."""
    j = np.arange(e + 1)
    binom = binom_row(e, p)
    sp = _powers(s, e - j, p)
    tp = _powers(t, j, p)
    return binom * sp % p * tp % p


def _powers(base: int, exps: np.ndarray, p: int) -> np.ndarray:
    base %= p
    table = np.array([pow(base, int(k), p) for k in range(p - 1)] or [1], dtype=np.int64)
    if base == 0:
        return (np.asarray(exps) == 0).astype(np.int64)
    return table[np.asarray(exps) % (p - 1)]


def act(g: GroupElement, F: HomogPoly) -> HomogPoly:
    """g.F = F(aX + cY, bX + dY)."""
    if g.p != F.p:
        raise ValueError("field mismatch")
    return HomogPoly.from_array(action_matrix(g, F.r) @ F.array() % F.p, F.p)


def action_matrix(g: GroupElement, r: int) -> np.ndarray:
    """Column j holds g.(X^{r-j} Y^j)."""
    p = g.p
    M = np.zeros((r + 1, r + 1), dtype=np.int64)
    for j in range(r + 1):
        left = _linear_power(g.a, g.c, r - j, p)
        right = _linear_power(g.b, g.d, j, p)
        M[:, j] = np.convolve(left, right) % p
    return M


# binomials mod p, vectorised through Lucas

@lru_cache(maxsize=None)
def _small_binom(p: int) -> np.ndarray:
    return np.array([[math.comb(n, k) % p for k in range(p)] for n in range(p)], dtype=np.int64)


def _digit_matrix(v: np.ndarray, p: int, width: int) -> np.ndarray:
    out = np.zeros((width,) + v.shape, dtype=np.int64)
    v = v.copy()
    for k in range(width):
        out[k] = v % p
        v //= p
    return out


def binom_row(n: int, p: int, length: int | None = None) -> np.ndarray:
    """C(n, k) mod p for k = 0..length-1 (default n+1)."""
    length = n + 1 if length is None else length
    k = np.arange(length, dtype=np.int64)
    width = max(1, len(np.base_repr(max(n, length, 1), p)))
    nd = _digit_matrix(np.array(n, dtype=np.int64), p, width)
    kd = _digit_matrix(k, p, width)
    table = _small_binom(p)
    out = np.ones(length, dtype=np.int64)
    for t in range(width):
        out = out * table[nd[t], kd[t]] % p
    return out


@lru_cache(maxsize=6)
def pascal(n: int, p: int) -> np.ndarray:
    """P[j, k] = C(j, k) mod p as float64, 0 <= j, k < n."""
    idx = np.arange(n, dtype=np.int64)
    width = max(1, len(np.base_repr(max(n - 1, 1), p)))
    digs = _digit_matrix(idx, p, width)
    table = _small_binom(p)
    out = np.ones((n, n), dtype=np.int64)
    for t in range(width):
        out = out * table[digs[t][:, None], digs[t][None, :]] % p
    res = out.astype(np.float64)
    res.setflags(write=False)
    return res


def apply_rows(g: str | GroupElement, rows: np.ndarray, r: int, p: int) -> np.ndarray:
    """Rows of coefficient vectors moved by g; returns rows @ rho(g).T."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    if isinstance(g, GroupElement):
        return rows @ action_matrix(g, r).T % p
    if g == "u":
        F = prime_field(p)
        P = pascal(r + 1, p)
        if (r + 1) * (p - 1) ** 2 < 2**52:
            return np.asarray(np.fmod(rows.astype(np.float64) @ P, p), dtype=np.int64)
        return F.matmul(rows, P.astype(np.int64))
    if g == "w":
        return rows[:, ::-1].copy()
    if g == "d":
        scale = _powers(primitive_root(p), r - np.arange(r + 1), p)
        return rows * scale % p
    if g == "m":
        out = np.zeros_like(rows)
        out[:, 0] = rows[:, 0]
        return out
    raise KeyError(f"unknown generator {g!r}")


# modules given by explicit matrices

@dataclass(frozen=True, eq=False)
class ModuleHandle:
    """A finite module over F_p given by matrices of the generators."""

    p: int
    dim: int
    gens: Mapping[str, np.ndarray]
    name: str = ""

    def __repr__(self) -> str:
        return f"ModuleHandle({self.name or '?'}, dim={self.dim}, p={self.p})"

    def matrix_of_word(self, word: Sequence[str]) -> np.ndarray:
        F = prime_field(self.p)
        out = np.eye(self.dim, dtype=np.int64)
        for letter in word:
            out = F.matmul(out, self.gens[letter])
        return out

    def is_stable(self, S: Subspace) -> bool:
        for M in self.gens.values():
            if S.dim and S.reduce((M @ S.basis.T % self.p).T).any():
                return False
        return True


def small_subquotient(M: ModuleHandle, A: Subspace | None, B: Subspace | None, name: str = "") -> ModuleHandle:
    """The module A/B for stable subspaces B <= A of M (None means M, resp. 0)."""
    F = prime_field(M.p)
    n = M.dim
    A = full_subspace(n, F) if A is None else A
    B = zero_subspace(n, F) if B is None else B
    C = _complement(A, B)
    gens = {}
    for key, G in M.gens.items():
        images = F.matmul(C.basis, G.T) if C.dim else np.zeros((0, n), dtype=np.int64)
        gens[key] = _coords(B, C, images).T.copy()
    return ModuleHandle(M.p, C.dim, gens, name)


def _complement(A: Subspace, B: Subspace) -> Subspace:
    if A.dim == A.ambient_dim:
        free = [j for j in range(A.ambient_dim) if j not in set(B.pivots)]
        E = np.zeros((len(free), A.ambient_dim), dtype=np.int64)
        E[np.arange(len(free)), free] = 1
        return Subspace(A.ctx, A.ambient_dim, E, tuple(free))
    if B.dim == 0:
        return A
    return echelon_span(B.reduce(A.basis), A.ctx, A.ambient_dim)


def _coords(B: Subspace, C: Subspace, images: np.ndarray) -> np.ndarray:
    res = B.reduce(images) if B.dim else images
    return res[:, list(C.pivots)]


# submodules of V_r

@dataclass(frozen=True)
class SubmoduleHandle:
    p: int
    r: int
    space: Subspace
    closure: str = "gamma"

    @property
    def dim(self) -> int:
        return self.space.dim

    def check_stable(self, gens: Iterable[str] | None = None) -> bool:
        names = gens or (MONOID if self.closure == "monoid" else GAMMA)
        for g in names:
            if self.dim and self.space.reduce(apply_rows(g, self.space.basis, self.r, self.p)).any():
                return False
        return True


def generate_submodule(seeds, gens: Sequence[str | GroupElement], r: int, p: int) -> SubmoduleHandle:
    """Smallest subspace containing the seeds and stable under gens (worklist closure)."""
    if not gens:
        raise ValueError("generate_submodule needs at least one generator")
    F = prime_field(p)
    rows = np.atleast_2d(np.array([s.array() if isinstance(s, HomogPoly) else s for s in seeds], dtype=np.int64))
    if rows.shape[1] != r + 1:
        raise ValueError("seed degree mismatch")
    S = echelon_span(rows, F, r + 1)
    frontier = S.basis
    while frontier.shape[0]:
        new = np.vstack([apply_rows(g, frontier, r, p) for g in gens])
        res = S.reduce(new)
        res = res[res.any(axis=1)]
        if not res.shape[0]:
            break
        frontier, _ = rref(res, F)
        S = echelon_span(np.vstack([S.basis, frontier]), F, r + 1)
    closure = "monoid" if any(g == "m" for g in gens) else "gamma"
    return SubmoduleHandle(p, r, S, closure)


@lru_cache(maxsize=1024)
def monomial_submodule(r: int, i: int, p: int) -> SubmoduleHandle:
    """X_{r-i} = <X^{r-i} Y^i>, from the spanning set X^l (kX+Y)^{r-l}, X^{r-l} Y^l, l <= i."""
    if i == p:
        return x_r_minus_p(r, p)
    if not 0 <= i <= p - 1 or r < i:
        raise ValueError(f"monomial_submodule needs 0 <= i <= p-1 and r >= i, got r={r} i={i}")
    n = r + 1
    rows = []
    for l in range(i + 1):
        binom = binom_row(r - l, p)
        j = np.arange(r - l + 1)
        for k in range(p):
            v = np.zeros(n, dtype=np.int64)
            v[: r - l + 1] = binom * _powers(k, r - l - j, p) % p
            rows.append(v)
        e = np.zeros(n, dtype=np.int64)
        e[l] = 1
        rows.append(e)
    return SubmoduleHandle(p, r, echelon_span(np.array(rows), prime_field(p), n), "monoid")


@lru_cache(maxsize=256)
def x_r_minus_p(r: int, p: int) -> SubmoduleHandle:
    """X_{r-p}, by closure from X^{r-p} Y^p under the monoid generators."""
    if r < p:
        raise ValueError("X_{r-p} needs r >= p")
    return generate_submodule([HomogPoly.monomial(r, p, p)], MONOID, r, p)


# the theta filtration

def theta_poly(p: int) -> HomogPoly:
    return HomogPoly(p, p + 1, tuple([0, 1] + [0] * (p - 2) + [p - 1, 0]))


def theta_power(m: int, p: int) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    th = theta_poly(p).array()
    for _ in range(m):
        out = np.convolve(out, th) % p
    return out


def divide_by_theta(rows, m: int, r: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact division of each row by theta^m.

    Returns (ok, quotients): ok[k] says whether row k is divisible, and
    quotients[k] is the quotient in V_{r - m(p+1)} when it is.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % p
    rp = r - m * (p + 1)
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return np.ones(rows.shape[0], dtype=bool), rows.copy()
    if rp < 0:
        return ~rows.any(axis=1), np.zeros((rows.shape[0], 0), dtype=np.int64)
    # theta = X^{p+1} t (1 - t^{p-1}) with t = Y/X; strip t^m and X^m first
    ok = ~rows[:, :m].any(axis=1) & ~rows[:, r - m + 1:].any(axis=1)
    h = rows[:, m: r - m + 1]
    step = p - 1
    for _ in range(m):
        length = h.shape[1]
        pad = (-length) % step
        hh = np.hstack([h, np.zeros((h.shape[0], pad), dtype=np.int64)])
        hh = np.cumsum(hh.reshape(h.shape[0], -1, step), axis=1).reshape(h.shape[0], -1)[:, :length] % p
        ok &= ~hh[:, length - step:].any(axis=1)
        h = hh[:, : length - step]
    return ok, h


def theta_divides(F: HomogPoly, m: int) -> bool:
    if m < 0:
        raise ValueError("m must be >= 0")
    ok, _ = divide_by_theta(F.array(), m, F.r, F.p)
    return bool(ok[0])


def theta_conditions(r: int, m: int, p: int) -> np.ndarray:
    """Linear conditions cutting out V_r^(m) (valid for r > p, 1 <= m <= p)."""
    n = r + 1
    rows = []
    for j in list(range(min(m, n))) + list(range(max(r - m + 1, m), n)):
        e = np.zeros(n, dtype=np.int64)
        e[j] = 1
        rows.append(e)
    j = np.arange(n)
    for i in range(m):
        col = binom_col(n, i, p)
        for l in range(1, p):
            mask = (j % (p - 1)) == (l % (p - 1))
            rows.append(np.where(mask, col, 0))
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def binom_col(n: int, i: int, p: int) -> np.ndarray:
    """C(j, i) mod p for j = 0..n-1."""
    j = np.arange(n, dtype=np.int64)
    width = max(1, len(np.base_repr(max(n, i, 1), p)))
    jd = _digit_matrix(j, p, width)
    idig = _digit_matrix(np.array(i, dtype=np.int64), p, width)
    table = _small_binom(p)
    out = np.ones(n, dtype=np.int64)
    for t in range(width):
        out = out * table[jd[t], idig[t]] % p
    return out


def theta_multiples(r: int, m: int, p: int) -> np.ndarray:
    """Rows theta^m X^{r'-k} Y^k spanning theta^m V_{r'}."""
    rp = r - m * (p + 1)
    if rp < 0:
        return np.zeros((0, r + 1), dtype=np.int64)
    t = theta_power(m, p)
    out = np.zeros((rp + 1, r + 1), dtype=np.int64)
    for k in range(rp + 1):
        out[k, k: k + len(t)] = t
    return out


@dataclass(frozen=True, eq=False)
class ThetaLevel:
    """V_r^(m) together with coordinates on V_r / V_r^(m).

    reducer has one row per quotient coordinate; reducer @ x gives the
    coordinates of x mod V_r^(m) on the basis e_q, q in section.
    """

    r: int
    m: int
    p: int
    reducer: np.ndarray
    section: tuple[int, ...]
    method: str

    @property
    def codim(self) -> int:
        return len(self.section)

    def project(self, rows) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        if not self.codim:
            return np.zeros((rows.shape[0], 0), dtype=np.int64)
        return prime_field(self.p).matmul(rows, self.reducer.T)

    def subspace(self) -> Subspace:
        return _level_subspace(self)

    def quotient_module(self, gens: Sequence[str] = MONOID) -> ModuleHandle:
        return _level_quotient(self, tuple(gens))


@lru_cache(maxsize=512)
def _level_subspace(level: ThetaLevel) -> Subspace:
    if not level.codim:
        return full_subspace(level.r + 1, prime_field(level.p))
    return kernel(level.reducer, prime_field(level.p))


@lru_cache(maxsize=512)
def _level_quotient(level: ThetaLevel, gens: tuple[str, ...]) -> ModuleHandle:
    k = level.codim
    E = np.zeros((k, level.r + 1), dtype=np.int64)
    E[np.arange(k), list(level.section)] = 1
    mats = {g: level.project(apply_rows(g, E, level.r, level.p)).T.copy() for g in gens}
    return ModuleHandle(level.p, k, mats, f"V_{level.r}/V^({level.m})")


@lru_cache(maxsize=2048)
def theta_level(r: int, m: int, p: int) -> ThetaLevel:
    """V_r^(m) by the divisibility conditions, or by theta multiples outside their range."""
    if m < 0:
        raise ValueError("m must be >= 0")
    F = prime_field(p)
    n = r + 1
    if m == 0:
        return ThetaLevel(r, 0, p, np.zeros((0, n), dtype=np.int64), (), "trivial")
    if r > p and 1 <= m <= p:
        L, method = theta_conditions(r, m, p), "conditions"
    else:
        T = theta_multiples(r, m, p)
        L = kernel(T, F).basis if T.shape[0] else np.eye(n, dtype=np.int64)
        method = "division"
    R, rpiv = rref(L[:, ::-1], F)
    reducer = R[:, ::-1].copy()
    section = tuple(n - 1 - c for c in rpiv)
    order = np.argsort(section)
    reducer = reducer[order]
    section = tuple(int(section[k]) for k in order)
    reducer.setflags(write=False)
    return ThetaLevel(r, m, p, reducer, section, method)


def theta_subspace(r: int, m: int, p: int) -> SubmoduleHandle:
    return SubmoduleHandle(p, r, theta_level(r, m, p).subspace(), "monoid")


def theta_constructions_agree(r: int, m: int, p: int) -> bool:
    """V_r^(m) from the linear conditions equals theta^m V_{r'}, checked both ways."""
    level = theta_level(r, m, p)
    T = theta_multiples(r, m, p)
    if T.shape[0] and level.project(T).any():
        return False
    if (r + 1) - level.codim != T.shape[0]:
        return False
    # every echelon basis vector of the kernel is divisible
    ok, _ = divide_by_theta(level.subspace().basis, m, r, p)
    return bool(ok.all())


# subquotients of V_r

def subquotient(A: Subspace, B: Subspace, r: int, p: int, gens: Sequence[str] = MONOID, name: str = "") -> ModuleHandle:
    """The module A/B for stable subspaces B <= A of V_r."""
    C = _complement(A, B)
    mats = {}
    for g in gens:
        images = apply_rows(g, C.basis, r, p) if C.dim else np.zeros((0, r + 1), dtype=np.int64)
        mats[g] = _coords(B, C, images).T.copy()
    return ModuleHandle(p, C.dim, mats, name)


def v_module(r: int, p: int, gens: Sequence[str] = MONOID) -> ModuleHandle:
    mats = {g: action_matrix(generator(g, p), r) for g in gens}
    return ModuleHandle(p, r + 1, mats, f"V_{r}")


def image_in_level_quotient(S: Subspace, level: ThetaLevel) -> Subspace:
    """The image of a subspace of V_r inside V_r / V_r^(m)."""
    F = prime_field(level.p)
    if S.dim == 0 or level.codim == 0:
        return zero_subspace(level.codim, F)
    return echelon_span(level.project(S.basis), F, level.codim)


def level_in_quotient(r: int, n: int, m: int, p: int) -> Subspace:
    """V_r^(n) / V_r^(m) as a subspace of V_r / V_r^(m), for n <= m."""
    big, small = theta_level(r, m, p), theta_level(r, n, p)
    F = prime_field(p)
    if small.codim == 0:
        return full_subspace(big.codim, F)
    return kernel(small.reducer[:, list(big.section)], F)


def theta_segment(r: int, n: int, m: int, p: int) -> ModuleHandle:
    """V_r^(n) / V_r^(m)."""
    Q = theta_level(r, m, p).quotient_module()
    return small_subquotient(Q, level_in_quotient(r, n, m, p), None, f"V_{r}^({n})/V^({m})")


def x_filtration(X: Subspace, r: int, j: int, p: int) -> Subspace:
    """X cap V_r^(j) as a subspace of V_r."""
    level = theta_level(r, j, p)
    F = prime_field(p)
    if level.codim == 0 or X.dim == 0:
        return X
    coeffs = kernel(level.project(X.basis).T, F)
    if coeffs.dim == 0:
        return zero_subspace(r + 1, F)
    return echelon_span(F.matmul(coeffs.basis, X.basis), F, r + 1)


def q_module(r: int, i: int, p: int) -> ModuleHandle:
    """Q(i) = V_r / (X_{r-i} + V_r^(i+1))."""
    level = theta_level(r, i + 1, p)
    X = monomial_submodule(r, i, p).space
    return small_subquotient(level.quotient_module(), None, image_in_level_quotient(X, level), f"Q({i})")


def p_module(r: int, i: int, p: int) -> ModuleHandle:
    """P(i) = V_r / (X_{r-(i-1)} + V_r^(i+1))."""
    level = theta_level(r, i + 1, p)
    Q = level.quotient_module()
    if i == 0:
        return small_subquotient(Q, None, None, "P(0)")
    X = monomial_submodule(r, i - 1, p).space
    return small_subquotient(Q, None, image_in_level_quotient(X, level), f"P({i})")


@dataclass(frozen=True)
class QuotientDims:
    q: int
    p_dim: int
    x_levels: tuple[int, ...]


def quotient_dims(r: int, i: int, p: int) -> QuotientDims:
    if not 0 <= i <= p - 1:
        raise ValueError("quotient_dims needs 0 <= i <= p-1")
    X = monomial_submodule(r, i, p).space
    q = q_module(r, i, p).dim if r >= i else 0
    pd = p_module(r, i, p).dim
    levels = tuple(x_filtration(X, r, j, p).dim for j in range(i + 2))
    return QuotientDims(q, pd, levels)


# multiplication maps

@dataclass(frozen=True)
class GloverReport:
    source_dim: int
    image_dim: int
    target_dim: int
    equivariant: bool

    @property
    def surjective(self) -> bool:
        return self.image_dim == self.target_dim

    @property
    def injective(self) -> bool:
        return self.image_dim == self.source_dim

    @property
    def isomorphism(self) -> bool:
        return self.surjective and self.injective


def glover_phi(r: int, i: int, p: int) -> GloverReport:
    """The product map X_{r-i, r-i} (x) V_i -> X_{r-i, r}."""
    F = prime_field(p)
    src = monomial_submodule(r - i, 0, p).space.basis
    mono = np.eye(i + 1, dtype=np.int64)

    def products(A, B):
        return np.array([np.convolve(a, b) % p for a in A for b in B], dtype=np.int64).reshape(-1, r + 1)

    prods = products(src, mono)
    image = echelon_span(prods, F, r + 1)
    target = monomial_submodule(r, i, p).space
    equivariant = image.issubset(target)
    for g in MONOID:
        lhs = products(apply_rows(g, src, r - i, p), apply_rows(g, mono, i, p))
        # product of images, ordered as a @ b pairs, against image of products
        rhs = apply_rows(g, prods, r, p)
        if (lhs != rhs).any():
            equivariant = False
    return GloverReport(src.shape[0] * (i + 1), image.dim, target.dim, equivariant)


# principal series

def _char_value(b: GroupElement, m: int, n: int) -> int:
    p = b.p
    return pow(b.a, m % (p - 1), p) * pow(b.d, n % (p - 1), p) % p


def coset_representatives(p: int) -> list[GroupElement]:
    return [identity(p)] + [GroupElement(lam, 1, 1, 0, p) for lam in range(p)]


def coset_decompose(h: GroupElement) -> tuple[int, GroupElement]:
    """h = g_k b with b upper triangular; returns (k, b)."""
    p = h.p
    if h.c == 0:
        return 0, h
    lam = h.a * pow(h.c, -1, p) % p
    rep = GroupElement(lam, 1, 1, 0, p)
    return 1 + lam, rep.inverse() @ h


@dataclass(frozen=True, eq=False)
class PrincipalSeries(ModuleHandle):
    exponents: tuple[int, int] = (0, 0)


@lru_cache(maxsize=None)
def principal_series(p: int, m: int, n: int) -> PrincipalSeries:
    """ind_B^Gamma(chi_1^m chi_2^n) on the basis [g_k, e], e fixed to 1."""
    reps = coset_representatives(p)
    gens = {}
    for name in GAMMA:
        g = generator(name, p)
        M = np.zeros((p + 1, p + 1), dtype=np.int64)
        for k, gk in enumerate(reps):
            kk, b = coset_decompose(g @ gk)
            M[kk, k] = _char_value(b, m, n)
        gens[name] = M
    return PrincipalSeries(p, p + 1, gens, f"ind({m},{n})", (m % (p - 1), n % (p - 1)))


@dataclass(frozen=True)
class PsiReport:
    matrix: np.ndarray
    rank: int
    target_dim: int
    equivariant: bool

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def psi_map(r: int, i: int, p: int) -> PsiReport:
    """[g, e] -> g.X^{r-i}Y^i from ind(chi_1^{r-i} chi_2^i) onto X_{r-i}/X_{r-(i-1)}."""
    if not 1 <= i <= p - 1 or r < p:
        raise ValueError("psi_map needs 1 <= i <= p-1 and r >= p")
    F = prime_field(p)
    A = monomial_submodule(r, i, p).space
    B = monomial_submodule(r, i - 1, p).space
    C = _complement(A, B)
    mono = HomogPoly.monomial(r, i, p).array()
    images = np.vstack([apply_rows(g, mono, r, p) for g in coset_representatives(p)])
    Psi = _coords(B, C, images).T.copy()
    target = subquotient(A, B, r, p, GAMMA)
    ind = principal_series(p, r - i, i)
    equivariant = all(
        (F.matmul(Psi, ind.gens[g]) == F.matmul(target.gens[g], Psi)).all() for g in GAMMA
    )
    return PsiReport(Psi, rank(Psi, F) if Psi.size else 0, C.dim, equivariant)


# Breuil map

def _breuil_basis_map(ap: int, rp: int, p: int) -> dict[int, np.ndarray]:
    """Images of theta^m X^{r'-i} Y^i, i in 0..p-1 or i = r', in V_{p-1-a'}."""
    out = {}
    n = p - ap
    for i in list(range(p)) + [rp]:
        v = np.zeros(n, dtype=np.int64)
        if ap <= i <= p - 1 and i != rp:
            v[i - ap] = (-1) ** ((rp - i) % 2) * math.comb(p - 1 - ap, i - ap) % p
        out[i] = v
    return out


def _check_breuil(r: int, m: int, p: int) -> tuple[int, int, int]:
    if m < 0 or r < m * (p + 1) + p:
        raise ValueError(f"the Breuil map needs r >= m(p+1)+p, got r={r} m={m}")
    a = bracket(r, p)
    return a, bracket(a - 2 * m, p), r - m * (p + 1)


def breuil_projection(r: int, m: int, F: HomogPoly) -> np.ndarray:
    """Image of F in V_r^(m) under V_r^(m) -> V_{p-1-[a-2m]} (x) D^{a-m}."""
    p = F.p
    a, ap, rp = _check_breuil(r, m, p)
    ok, H = divide_by_theta(F.array(), m, r, p)
    if not ok[0]:
        raise ValueError("theta^m does not divide F")
    h = H[0]
    # reduce H mod V_{r'}^(1) onto X^{r'-t} Y^t, t in 0..p-1, and Y^{r'}
    red = {0: int(h[0]), rp: int(h[rp])}
    for t in range(1, p):
        idx = np.arange(1, rp)
        red[t] = red.get(t, 0) + int(h[idx[(idx - t) % (p - 1) == 0]].sum()) % p
    images = _breuil_basis_map(ap, rp, p)
    out = np.zeros(p - ap, dtype=np.int64)
    for t, c in red.items():
        out = (out + c * images[t]) % p
    return out


def breuil_projection_shortcut(r: int, m: int, F: HomogPoly) -> np.ndarray:
    """Same map through the weighted coefficient sum, one residue class at a time."""
    p = F.p
    a, ap, rp = _check_breuil(r, m, p)
    c = F.array()
    j = np.arange(r + 1)
    weights = binom_col(r + 1, m, p)
    images = _breuil_basis_map(ap, rp, p)
    out = np.zeros(p - ap, dtype=np.int64)
    for l in range(1, p):
        mask = (j - l) % (p - 1) == 0
        part = np.where(mask, c, 0)
        coeff = int((part * weights).sum()) - int(part[m]) + (-1) ** (m + 1) * int(part[r - m])
        out = (out + coeff % p * images[bracket(l - m, p)]) % p
    return out


# named polynomials

@dataclass(frozen=True)
class SpecialPolynomials:
    theta: HomogPoly
    G_r: HomogPoly
    F_ir: HomogPoly
    G_ir: HomogPoly


def special_polynomials(r: int, i: int, p: int) -> SpecialPolynomials:
    if r < p:
        raise ValueError("special polynomials need r >= p")
    a = bracket(r, p)
    j = np.arange(r + 1)
    G = binom_row(r, p) * np.array([power_sum(r - int(x), p) for x in j]) % p
    if a == p - 1:
        G[0] = (G[0] + 1) % p
    Fi = np.zeros(r + 1, dtype=np.int64)
    Gi = np.zeros(r + 1, dtype=np.int64)
    jj = np.arange(r - i + 1)
    bi = binom_row(r - i, p)
    e = bracket(2 * i - a, p)
    Fi[: r - i + 1] = bi * np.array([power_sum(e + r - i - int(x), p) for x in jj]) % p
    Gi[: r - i + 1] = bi * np.array([power_sum(r - i - int(x), p) for x in jj]) % p
    return SpecialPolynomials(
        theta_poly(p),
        HomogPoly.from_array(G, p),
        HomogPoly.from_array(Fi, p),
        HomogPoly.from_array(Gi, p),
    )


def tensor_module(A: ModuleHandle, B: ModuleHandle) -> ModuleHandle:
    """A (x) B with basis e_i (x) f_j and Kronecker product action."""
    gens = {g: np.kron(A.gens[g], B.gens[g]) % A.p for g in A.gens if g in B.gens}
    return ModuleHandle(A.p, A.dim * B.dim, gens, f"{A.name}(x){B.name}")
