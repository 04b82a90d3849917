"""Dense exact linear algebra over F_p and F_{p^2}.

Matrices are numpy int64 arrays holding canonical residues. Elements of
F_{p^2} are encoded as c0 + c1*p for c0 + c1*x, where x is a root of the
lexicographically least monic irreducible quadratic x^2 + b x + c. Under this
encoding an element of F_p is its own code, so F_p matrices embed for free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

# float64 matmul is exact while every partial sum stays below 2**53
_EXACT = 2**52


class FieldCtx:
    """Arithmetic on arrays of field elements."""

    p: int
    order: int

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> tuple:
        raise NotImplementedError


class PrimeField(FieldCtx):
    def __init__(self, p: int):
        self.p = p
        self.order = p
        self._inv = np.zeros(p, dtype=np.int64)
        for x in range(1, p):
            self._inv[x] = pow(x, -1, p)

    @property
    def key(self) -> tuple:
        return ("Fp", self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if self.p < 1 << 16:
            return self._inv[x]
        return pow(int(x), -1, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        inner = a.shape[-1]
        if inner * (self.p - 1) ** 2 < _EXACT:
            out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
            return np.asarray(np.fmod(out, self.p), dtype=np.int64)
        # chunk the inner dimension so that float sums stay exact
        step = max(1, _EXACT // (self.p - 1) ** 2)
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(0, inner, step):
            part = np.asarray(a[:, k:k + step], dtype=np.float64) @ np.asarray(b[k:k + step], dtype=np.float64)
            out = (out + np.asarray(np.fmod(part, self.p), dtype=np.int64)) % self.p
        return out


class QuadraticField(FieldCtx):
    def __init__(self, p: int):
        self.p = p
        self.order = p * p
        self.quadratic = _least_irreducible(p)
        b, c = self.quadratic
        q = p * p
        lo = np.arange(q) % p
        hi = np.arange(q) // p
        self._add = ((lo[:, None] + lo[None, :]) % p) + p * ((hi[:, None] + hi[None, :]) % p)
        # (a0 + a1 x)(b0 + b1 x) with x^2 = -b x - c
        a0, a1 = lo[:, None], hi[:, None]
        b0, b1 = lo[None, :], hi[None, :]
        cross = a1 * b1
        c0 = (a0 * b0 - c * cross) % p
        c1 = (a0 * b1 + a1 * b0 - b * cross) % p
        self._mul = c0 + p * c1
        self._neg = ((-lo) % p) + p * ((-hi) % p)
        self._inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self._inv[x] = int(np.flatnonzero(self._mul[x] == 1)[0])
        self.omega = self._find_generator()

    @property
    def key(self) -> tuple:
        return ("Fp2", self.p)

    def __repr__(self) -> str:
        return f"QuadraticField({self.p}, x^2+{self.quadratic[0]}x+{self.quadratic[1]})"

    def _find_generator(self) -> int:
        q1 = self.order - 1
        for g in range(2, self.order):
            if self.element_order(g) == q1:
                return g
        raise AssertionError("F_{p^2}* has no generator")

    def element_order(self, g: int) -> int:
        x, k = g, 1
        while x != 1:
            x = int(self._mul[x, g])
            k += 1
        return k

    def power(self, g: int, e: int) -> int:
        out, base = 1, g
        e %= self.order - 1
        while e:
            if e & 1:
                out = int(self._mul[out, base])
            base = int(self._mul[base, base])
            e >>= 1
        return out

    def add(self, x, y):
        return self._add[x, y]

    def sub(self, x, y):
        return self._add[x, self._neg[y]]

    def mul(self, x, y):
        return self._mul[x, y]

    def neg(self, x):
        return self._neg[x]

    def inv(self, x):
        return self._inv[x]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(a.shape[1]):
            out = self._add[out, self._mul[a[:, k:k + 1], b[k:k + 1, :]]]
        return out


def _least_irreducible(p: int) -> tuple[int, int]:
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p for x in range(p)):
                return b, c
    raise AssertionError("no irreducible quadratic")


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def quadratic_field(p: int) -> QuadraticField:
    return QuadraticField(p)


def rref(a, ctx: FieldCtx) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    A = np.array(a, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if ctx.order != ctx.p:
        return _rref_tables(A, ctx)
    p = ctx.p
    A %= p
    m, n = A.shape
    # entries are reduced lazily: each elimination step adds less than p^2 in size
    lazy = min(m, n) * (p - 1) ** 2 < 2**62
    pivots: list[int] = []
    row = col = 0
    while row < m and col < n:
        colv = A[row:, col] % p
        if not colv.any():
            A[row:, col] = 0
            col += 1
            continue
        k = row + int(np.flatnonzero(colv)[0])
        if k != row:
            A[[row, k]] = A[[k, row]]
        prow = A[row, col:] % p
        prow = prow * ctx.inv(prow[0]) % p
        A[row, col:] = prow
        f = A[:, col] % p
        f[row] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            if lazy:
                A[idx, col:] -= np.outer(f[idx], prow)
            else:
                A[idx, col:] = (A[idx, col:] - np.outer(f[idx], prow)) % p
        pivots.append(col)
        row += 1
        col += 1
    out = A[:row] % p
    return out, pivots


def _rref_tables(A: np.ndarray, ctx: FieldCtx) -> tuple[np.ndarray, list[int]]:
    m, n = A.shape
    pivots: list[int] = []
    row = col = 0
    while row < m and col < n:
        if not A[row:, col].any():
            nz = np.flatnonzero(A[row:, col:].any(axis=0))
            if nz.size == 0:
                break
            col += int(nz[0])
        k = row + int(np.flatnonzero(A[row:, col])[0])
        if k != row:
            A[[row, k]] = A[[k, row]]
        lead = A[row, col]
        if lead != 1:
            A[row, col:] = ctx.mul(A[row, col:], ctx.inv(lead))
        prow = A[row, col:]
        f = A[:, col].copy()
        f[row] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            A[idx, col:] = ctx.sub(A[idx, col:], ctx.mul(f[idx, None], prow[None, :]))
        pivots.append(col)
        row += 1
        col += 1
    return A[:row], pivots


def rank(a, ctx: FieldCtx) -> int:
    return len(rref(a, ctx)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ctx^n held in canonical reduced row echelon form."""

    ctx: FieldCtx
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def _key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and self._key == other._key
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.ambient_dim, self.basis.shape, self._key))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.ctx!r})"

    def reduce(self, vecs) -> np.ndarray:
        """Residues of the rows of vecs modulo this subspace."""
        X = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
        if self.dim == 0:
            return X.copy()
        coeff = X[:, list(self.pivots)]
        return self.ctx.sub(X, self.ctx.matmul(coeff, self.basis))

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, vecs) -> np.ndarray:
        """Coordinates of vectors known to lie in the subspace."""
        X = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
        return X[:, list(self.pivots)]

    def issubset(self, other: "Subspace") -> bool:
        return self.dim <= other.dim and (self.dim == 0 or not other.reduce(self.basis).any())

    __le__ = issubset


def zero_subspace(n: int, ctx: FieldCtx) -> Subspace:
    return Subspace(ctx, n, np.zeros((0, n), dtype=np.int64), ())


def full_subspace(n: int, ctx: FieldCtx) -> Subspace:
    return Subspace(ctx, n, np.eye(n, dtype=np.int64), tuple(range(n)))


def echelon_span(vectors: Sequence[Sequence[int]] | np.ndarray, ctx: FieldCtx, n: int | None = None) -> Subspace:
    """Span of the given vectors in canonical form."""
    if isinstance(vectors, np.ndarray):
        M = vectors
        if M.ndim != 2:
            raise ValueError("vectors must form a 2-d array")
    else:
        rows = [list(v) for v in vectors]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged input to echelon_span")
        if not rows:
            if n is None:
                raise ValueError("ambient dimension needed for an empty span")
            return zero_subspace(n, ctx)
        M = np.array(rows, dtype=np.int64)
    if n is not None and M.shape[1] != n:
        raise ValueError(f"vectors have length {M.shape[1]}, expected {n}")
    R, piv = rref(M, ctx)
    return Subspace(ctx, M.shape[1], R, tuple(piv))


def kernel(m, ctx: FieldCtx) -> Subspace:
    """Right kernel {x : M x = 0}, returned directly in echelon form.

    Eliminating with the columns reversed puts each pivot as far right as
    possible, and then the obvious kernel vectors attached to the free columns
    already form a reduced echelon basis.
    """
    M = np.asarray(m, dtype=np.int64)
    n = M.shape[1]
    R, rpiv = rref(M[:, ::-1], ctx)
    piv = [n - 1 - c for c in rpiv]
    pivset = set(piv)
    free = [f for f in range(n) if f not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if piv:
            Rorig = R[:, ::-1]
            # row k reads x_{piv[k]} + sum over free f of R[k, f] x_f = 0
            K[:, piv] = ctx.neg(Rorig[:, free].T)
    return Subspace(ctx, n, K, tuple(free))


def combine(A: Subspace, B: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection by the Zassenhaus block method."""
    if A.ambient_dim != B.ambient_dim or A.ctx != B.ctx:
        raise ValueError("combine needs subspaces of the same space")
    n, ctx = A.ambient_dim, A.ctx
    if A.dim == 0 or B.dim == 0:
        return (B if A.dim == 0 else A), zero_subspace(n, ctx)
    top = np.hstack([A.basis, A.basis])
    bottom = np.hstack([B.basis, np.zeros_like(B.basis)])
    R, piv = rref(np.vstack([top, bottom]), ctx)
    split = sum(1 for c in piv if c < n)
    total = Subspace(ctx, n, R[:split, :n].copy(), tuple(piv[:split]))
    inter = Subspace(ctx, n, R[split:, n:].copy(), tuple(c - n for c in piv[split:]))
    return total, inter


def subspace_sum(*spaces: Subspace) -> Subspace:
    ctx, n = spaces[0].ctx, spaces[0].ambient_dim
    return echelon_span(np.vstack([s.basis for s in spaces]), ctx, n) if spaces else zero_subspace(n, ctx)


def inverse(m, ctx: FieldCtx) -> np.ndarray:
    M = np.asarray(m, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    R, piv = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), ctx)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def vectors_from(rows: Iterable[Sequence[int]]) -> np.ndarray:
    return np.array([list(r) for r in rows], dtype=np.int64)
