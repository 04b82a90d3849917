"""Composition factors of GL_2(F_p)-modules through Brauer characters.

Brauer characters are taken with values in F_ell for an auxiliary prime
ell = 1 mod (p^2 - 1): a fixed generator omega of F_{p^2}^* is lifted to an
element tau of F_ell of the same order. The table of the p(p-1) irreducibles
V_n (x) D^j is invertible over F_ell, so multiplicities below ell are read off
by one matrix-vector product.
"""
from __future__ import annotations

import weakref
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .ffla import Subspace, echelon_span, inverse, kernel, prime_field, quadratic_field, rank
from .polyrep import GAMMA, GroupElement, ModuleHandle, action_matrix, generator, primitive_root


class JHInconsistency(RuntimeError):
    """The Brauer character did not decompose into a genuine multiset."""


class TableDegenerate(RuntimeError):
    """The Brauer table is singular over the chosen auxiliary prime."""


@dataclass(frozen=True, order=True)
class JHLabel:
    n: int
    j: int

    @property
    def dim(self) -> int:
        return self.n + 1

    def __str__(self) -> str:
        return f"V{self.n}" + (f"xD^{self.j}" if self.j else "")


class JHMultiset:
    """A multiset of labels V_n (x) D^j with j reduced mod p-1."""

    def __init__(self, p: int, counts: Mapping[tuple[int, int] | JHLabel, int] | Iterable = ()):
        self.p = p
        c: Counter = Counter()
        items = counts.items() if isinstance(counts, Mapping) else ((k, 1) for k in counts)
        for key, mult in items:
            n, j = (key.n, key.j) if isinstance(key, JHLabel) else key
            if not 0 <= n <= p - 1:
                raise ValueError(f"label V_{n} out of range for p={p}")
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                c[JHLabel(n, j % (p - 1))] += mult
        self._c = c

    @classmethod
    def of(cls, p: int, *labels: tuple[int, int]) -> "JHMultiset":
        return cls(p, list(labels))

    def counts(self) -> dict[JHLabel, int]:
        return dict(self._c)

    @property
    def dim(self) -> int:
        return sum(k.dim * m for k, m in self._c.items())

    def __len__(self) -> int:
        return sum(self._c.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, JHMultiset) and self.p == other.p and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.p, frozenset(self._c.items())))

    def __add__(self, other: "JHMultiset") -> "JHMultiset":
        return JHMultiset(self.p, self._c + other._c)

    def __sub__(self, other: "JHMultiset") -> "JHMultiset":
        for k, m in other._c.items():
            if self._c[k] < m:
                raise ValueError(f"cannot remove {other} from {self}")
        out = Counter(self._c)
        out.subtract(other._c)
        return JHMultiset(self.p, +out)

    def __contains__(self, label) -> bool:
        n, j = (label.n, label.j) if isinstance(label, JHLabel) else label
        return self._c[JHLabel(n, j % (self.p - 1))] > 0

    def labels(self) -> list[JHLabel]:
        return sorted(self._c.elements())

    def to_json(self) -> list[list[int]]:
        return [[k.n, k.j, m] for k, m in sorted(self._c.items())]

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join((f"{m}*" if m > 1 else "") + str(k) for k, m in sorted(self._c.items()))

    __repr__ = __str__


def irreducible(n: int, j: int, p: int) -> ModuleHandle:
    """V_n (x) D^j as a module for the generators u, w, d."""
    if not (0 <= n <= p - 1 and 0 <= j <= p - 2):
        raise ValueError(f"irreducible needs 0 <= n <= p-1, 0 <= j <= p-2; got n={n} j={j}")
    gens = {}
    for name in GAMMA:
        g = generator(name, p)
        gens[name] = action_matrix(g, n) * pow(g.det, j, p) % p
    return ModuleHandle(p, n + 1, gens, f"V{n}xD^{j}")


# classes and the Brauer table

@dataclass(frozen=True)
class PRegularClass:
    kind: str
    rep: GroupElement
    exps: tuple[int, int]  # eigenvalues omega^e1, omega^e2


@dataclass(frozen=True, eq=False)
class OracleContext:
    p: int
    ell: int
    tau: int
    classes: tuple[PRegularClass, ...]
    labels: tuple[JHLabel, ...]
    table: np.ndarray
    table_inv: np.ndarray
    log: Mapping[int, int]  # code in F_{p^2} -> exponent of omega
    word: tuple[str, ...]  # expresses the companion matrix of omega in u, w, d


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


_AUX_OVERRIDE: int | None = None


def set_aux_prime(ell: int | None) -> None:
    """Force the auxiliary prime (None restores automatic choice)."""
    global _AUX_OVERRIDE
    _AUX_OVERRIDE = ell


def aux_prime(p: int, dim: int, start: int = 0) -> int:
    q = p * p - 1
    if _AUX_OVERRIDE is not None and not start:
        ell = _AUX_OVERRIDE
        if (ell - 1) % q or not _is_prime(ell) or ell <= dim + 1:
            raise ValueError(f"auxiliary prime {ell} unusable for p={p}, dim={dim}")
        return ell
    ell = max(start, dim + 2)
    ell += (1 - ell) % q
    while not _is_prime(ell):
        ell += q
    return ell


def _group_word(target: GroupElement) -> tuple[str, ...]:
    p = target.p
    gens = {name: generator(name, p) for name in GAMMA}
    start = (1, 0, 0, 1)
    seen = {start: ()}
    queue = deque([start])
    goal = target.entries()
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return seen[cur]
        elem = GroupElement(*cur, p)
        for name, g in gens.items():
            nxt = (g @ elem).entries()
            if nxt not in seen:
                seen[nxt] = (name,) + seen[cur]
                queue.append(nxt)
    raise AssertionError("generators do not reach the target")


@lru_cache(maxsize=None)
def oracle_context(p: int, ell: int) -> OracleContext:
    K = quadratic_field(p)
    q = p * p - 1
    log = {}
    x = 1
    for e in range(q):
        log[x] = e
        x = int(K.mul(x, K.omega))
    tau = next(t for t in range(2, ell) if _order_mod(t, ell, q) == q)
    classes = []
    for a in range(1, p):
        classes.append(PRegularClass("central", GroupElement(a, 0, 0, a, p), (log[a], log[a])))
    for a in range(1, p):
        for b in range(a + 1, p):
            classes.append(PRegularClass("split", GroupElement(a, 0, 0, b, p), (log[a], log[b])))
    done = set()
    for t in range(1, q):
        if t % (p + 1) == 0 or t in done:
            continue
        done.update({t, t * p % q})
        lam = K.power(K.omega, t)
        lamp = K.power(K.omega, t * p)
        tr, nm = int(K.add(lam, lamp)), int(K.mul(lam, lamp))
        assert tr < p and nm < p
        classes.append(PRegularClass("nonsplit", GroupElement(0, -nm, 1, tr, p), (t, t * p % q)))
    if len(classes) != p * (p - 1):
        raise AssertionError("wrong number of p-regular classes")
    labels = tuple(JHLabel(n, j) for n in range(p) for j in range(p - 1))
    table = np.zeros((len(classes), len(labels)), dtype=np.int64)
    for c, cls in enumerate(classes):
        table[c] = [_irreducible_value(lab, cls.exps, tau, ell, q) for lab in labels]
    try:
        tinv = inverse(table, prime_field(ell))
    except ZeroDivisionError as exc:
        raise TableDegenerate(f"Brauer table singular mod {ell}") from exc
    word = _group_word(_companion(K, p))
    return OracleContext(p, ell, tau, tuple(classes), labels, table, tinv, log, word)


def _companion(K, p: int) -> GroupElement:
    w, wp = K.omega, K.power(K.omega, p)
    tr, nm = int(K.add(w, wp)), int(K.mul(w, wp))
    return GroupElement(0, -nm, 1, tr, p)


def _order_mod(t: int, ell: int, q: int) -> int:
    for d in sorted(_divisors(q)):
        if pow(t, d, ell) == 1:
            return d
    return -1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _irreducible_value(lab: JHLabel, exps: tuple[int, int], tau: int, ell: int, q: int) -> int:
    e1, e2 = exps
    total = 0
    for i in range(lab.n + 1):
        total += pow(tau, (e1 * (lab.n - i) + e2 * i + (e1 + e2) * lab.j) % q, ell)
    return total % ell


def context_for(p: int, dim: int) -> OracleContext:
    ell = aux_prime(p, dim)
    while True:
        try:
            return oracle_context(p, ell)
        except TableDegenerate:
            if _AUX_OVERRIDE is not None:
                raise
            ell = aux_prime(p, dim, ell + 1)


# eigen data of a module

_WEIGHTS: "weakref.WeakKeyDictionary[ModuleHandle, dict]" = weakref.WeakKeyDictionary()
_NONSPLIT: "weakref.WeakKeyDictionary[ModuleHandle, dict]" = weakref.WeakKeyDictionary()


def weight_decomposition(M: ModuleHandle) -> dict[tuple[int, int], np.ndarray]:
    """Joint eigenvectors (as rows) of diag(a, 1) and diag(1, b): weight (x, y) means a^x b^y."""
    if M in _WEIGHTS:
        return _WEIGHTS[M]
    p = M.p
    F = prime_field(p)
    g = primitive_root(p)
    d1 = M.gens["d"]
    w = M.gens["w"]
    d2 = F.matmul(F.matmul(w, d1), w)
    out: dict[tuple[int, int], np.ndarray] = {}
    eye = np.eye(M.dim, dtype=np.int64)
    found = 0
    for x in range(p - 1):
        if found == M.dim:
            break
        K1 = kernel((d1 - pow(g, x, p) * eye) % p, F)
        if K1.dim == 0:
            continue
        images = F.matmul(K1.basis, d2.T)
        Z = images[:, list(K1.pivots)]  # row t: coordinates of d2 b_t
        for y in range(p - 1):
            K2 = kernel((Z.T - pow(g, y, p) * np.eye(K1.dim, dtype=np.int64)) % p, F)
            if K2.dim:
                out[(x, y)] = F.matmul(K2.basis, K1.basis)
        found += K1.dim
    if sum(v.shape[0] for v in out.values()) != M.dim:
        raise JHInconsistency("torus action is not diagonalisable")
    _WEIGHTS[M] = out
    return out


def _nonsplit_multiplicities(M: ModuleHandle, ctx: OracleContext) -> dict[int, int]:
    cache = _NONSPLIT.setdefault(M, {})
    if "m" in cache:
        return cache["m"]
    p = M.p
    K = quadratic_field(p)
    q = p * p - 1
    rc = M.matrix_of_word(ctx.word)
    residues = sorted({(x + y) % (p - 1) for (x, y) in weight_decomposition(M)})
    mult: dict[int, int] = {}
    total = 0
    eye = np.arange(M.dim)
    for res in residues:
        for k in range(res, q, p - 1):
            if total == M.dim:
                break
            A = rc.copy()
            A[eye, eye] = K.sub(A[eye, eye], K.power(K.omega, k))
            dim = M.dim - rank(A, K)
            if dim:
                mult[k] = dim
                total += dim
    if total != M.dim:
        raise JHInconsistency("eigenvalues of the nonsplit torus do not account for the module")
    cache["m"] = mult
    return mult


def brauer_character(M: ModuleHandle, ctx: OracleContext | None = None) -> np.ndarray:
    ctx = ctx or context_for(M.p, M.dim)
    q = M.p * M.p - 1
    ell, tau = ctx.ell, ctx.tau
    weights = {k: v.shape[0] for k, v in weight_decomposition(M).items()}
    ns = _nonsplit_multiplicities(M, ctx)
    # omega^e lifts to tau^e; F_p^* = <omega^(p+1)>, and the weight x of diag(g, 1)
    # is a character exponent, so diag(a, b) acts by a^x b^y
    values = np.zeros(len(ctx.classes), dtype=np.int64)
    for c, cls in enumerate(ctx.classes):
        e1, e2 = cls.exps
        if cls.kind == "nonsplit":
            s = sum(m * pow(tau, k * e1 % q, ell) for k, m in ns.items())
        else:
            s = sum(m * pow(tau, (x * e1 + y * e2) % q, ell) for (x, y), m in weights.items())
        values[c] = s % ell
    return values


def jh_multiset(M: ModuleHandle) -> JHMultiset:
    if M.dim == 0:
        return JHMultiset(M.p)
    ctx = context_for(M.p, M.dim)
    chi = brauer_character(M, ctx)
    mult = prime_field(ctx.ell).matmul(ctx.table_inv, chi[:, None])[:, 0]
    counts = {}
    for lab, m in zip(ctx.labels, mult):
        m = int(m)
        if m > M.dim:
            raise JHInconsistency(f"multiplicity {m} of {lab} exceeds dim {M.dim}")
        if m:
            counts[lab] = m
    out = JHMultiset(M.p, counts)
    if out.dim != M.dim:
        raise JHInconsistency(f"JH dimensions sum to {out.dim}, module has dim {M.dim}")
    return out


# homomorphisms

@dataclass(frozen=True, eq=False)
class HomSpace:
    source_dim: int
    target_dim: int
    space: Subspace  # maps flattened row-major as target_dim x source_dim

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> np.ndarray:
        return self.space.basis.reshape(-1, self.target_dim, self.source_dim)


def _weight_frame(M: ModuleHandle):
    W = weight_decomposition(M)
    keys = sorted(W)
    P = np.vstack([W[k] for k in keys]) if keys else np.zeros((0, M.dim), dtype=np.int64)
    slices, start = {}, 0
    for k in keys:
        slices[k] = (start, start + W[k].shape[0])
        start += W[k].shape[0]
    return P.T.copy(), slices  # columns are weight vectors


def hom_space(A: ModuleHandle, B: ModuleHandle, generators: Sequence[str] | None = None, seed: int = 0) -> HomSpace:
    """All T with T rho_A(g) = rho_B(g) T for the chosen generators."""
    if A.p != B.p:
        raise ValueError("modules over different fields")
    p = A.p
    F = prime_field(p)
    gens = [g for g in (generators or A.gens) if g in A.gens and g in B.gens]
    if "d" not in gens or "w" not in gens:
        raise ValueError("hom_space needs the generators w and d")
    dA, dB = A.dim, B.dim
    empty = HomSpace(dA, dB, echelon_span(np.zeros((0, dA * dB), dtype=np.int64), F, dA * dB))
    if dA == 0 or dB == 0:
        return empty
    PA, sA = _weight_frame(A)
    PB, sB = _weight_frame(B)
    PAi, PBi = inverse(PA, F), inverse(PB, F)
    I_idx, J_idx = [], []
    for k, (a0, a1) in sA.items():
        if k in sB:
            b0, b1 = sB[k]
            for i in range(b0, b1):
                for j in range(a0, a1):
                    I_idx.append(i)
                    J_idx.append(j)
    U = len(I_idx)
    if U == 0:
        return empty
    I_idx, J_idx = np.array(I_idx), np.array(J_idx)
    eqs = [g for g in gens if g != "d"]
    Ap = {g: F.matmul(F.matmul(PAi, A.gens[g]), PA) for g in eqs}
    Bp = {g: F.matmul(F.matmul(PBi, B.gens[g]), PB) for g in eqs}

    def residual(T):
        return any((F.matmul(T, Ap[g]) != F.matmul(Bp[g], T)).any() for g in eqs)

    def solve(compressed: bool) -> np.ndarray:
        blocks = []
        rng = np.random.default_rng(seed)
        for g in eqs:
            Ag, Bg = Ap[g].astype(np.float64), Bp[g].astype(np.float64)
            if compressed:
                K = U + 24
                R = rng.integers(0, p, size=(K, dB, dA)).astype(np.float64)
                Z = np.fmod(R @ Ag.T, p) - np.fmod(np.matmul(Bg.T, R), p)
                blocks.append(np.asarray(np.mod(Z[:, I_idx, J_idx], p), dtype=np.int64))
            else:
                M = np.zeros((dB, dA, U))
                M[I_idx, :, np.arange(U)] += Ag[J_idx, :]
                M[:, J_idx, np.arange(U)] -= Bg[:, I_idx]
                blocks.append(np.asarray(np.mod(M.reshape(dB * dA, U), p), dtype=np.int64))
        if compressed:
            system = sum(blocks) % p
        else:
            system = np.vstack(blocks) if blocks else np.zeros((0, U), dtype=np.int64)
        return kernel(system, F).basis

    compressed = dB * dA > 3 * U and len(eqs) > 0
    sol = solve(compressed)
    maps = []
    for v in sol:
        Tp = np.zeros((dB, dA), dtype=np.int64)
        Tp[I_idx, J_idx] = v
        maps.append(Tp)
    if compressed and any(residual(T) for T in maps):
        sol = solve(False)
        maps = []
        for v in sol:
            Tp = np.zeros((dB, dA), dtype=np.int64)
            Tp[I_idx, J_idx] = v
            maps.append(Tp)
    flat = [F.matmul(F.matmul(PB, T), PAi).ravel() for T in maps]
    rows = np.array(flat, dtype=np.int64).reshape(-1, dA * dB)
    return HomSpace(dA, dB, echelon_span(rows, F, dA * dB))


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mode: str  # witnessed, structural, or the reason for failure
    witness: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def modules_isomorphic(A: ModuleHandle, B: ModuleHandle, generators: Sequence[str] | None = None, seed: int = 0) -> IsoResult:
    if A.dim != B.dim:
        return IsoResult(False, "dimension")
    if A.dim == 0:
        return IsoResult(True, "witnessed", np.zeros((0, 0), dtype=np.int64))
    if jh_multiset(A) != jh_multiset(B):
        return IsoResult(False, "jh")
    p = A.p
    F = prime_field(p)
    H = hom_space(A, B, generators, seed)
    if H.dim == 0:
        return IsoResult(False, "no-hom")
    mats = H.matrices()
    if H.dim <= 3:
        import itertools

        combos = (np.array(c) for c in itertools.product(range(p), repeat=H.dim) if any(c))
    else:
        rng = np.random.default_rng(seed)
        combos = (rng.integers(0, p, size=H.dim) for _ in range(64))
    for c in combos:
        T = np.tensordot(c, mats, axes=1) % p
        if rank(T, F) == A.dim:
            return IsoResult(True, "witnessed", T)
    if H.dim <= 3:
        # the enumeration above was exhaustive
        return IsoResult(False, "no-invertible-hom")
    hab = H.dim
    hba = hom_space(B, A, generators, seed).dim
    haa = hom_space(A, A, generators, seed).dim
    if hab == hba == haa:
        return IsoResult(True, "structural")
    return IsoResult(False, "no-invertible-hom")


def socle_labels(M: ModuleHandle) -> JHMultiset:
    """Irreducibles admitting a nonzero map into M, with dim Hom as multiplicity."""
    counts = {}
    for lab in jh_multiset(M).counts():
        h = hom_space(irreducible(lab.n, lab.j, M.p), M, GAMMA).dim
        if h:
            counts[lab] = h
    return JHMultiset(M.p, counts)


def splits_two_factor(M: ModuleHandle, quotient: JHLabel) -> bool:
    """For M with two distinct JH factors, whether the given top factor is also a submodule."""
    return hom_space(irreducible(quotient.n, quotient.j, M.p), M, GAMMA).dim > 0
