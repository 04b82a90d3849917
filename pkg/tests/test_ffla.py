from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact.ffla import (
    combine,
    echelon_span,
    full_subspace,
    inverse,
    kernel,
    prime_field,
    quadratic_field,
    rank,
    rref,
    zero_subspace,
)


def rank_oracle(rows, p):
    """Plain list elimination, independent of the numpy code."""
    rows = [list(r) for r in rows]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((k for k in range(rk, len(rows)) if rows[k][c] % p), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        rows[rk] = [x * inv % p for x in rows[rk]]
        for k in range(len(rows)):
            if k != rk and rows[k][c] % p:
                f = rows[k][c]
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], rows[rk])]
        rk += 1
    return rk


def random_matrix(rng, m, n, p):
    return rng.integers(0, p, size=(m, n))


def test_echelon_span_examples():
    F5 = prime_field(5)
    assert echelon_span([], F5, n=4).dim == 0
    assert echelon_span(np.eye(6, dtype=np.int64), F5).dim == 6
    v = np.array([1, 3, 0, 2])
    assert echelon_span([v, 2 * v], F5).dim == 1


def test_echelon_span_rejects_ragged():
    with pytest.raises(ValueError):
        echelon_span([[1, 2], [1]], prime_field(3))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 5, 7]), st.integers(1, 7), st.integers(1, 9))
def test_rref_canonical_and_idempotent(seed, p, m, n):
    F = prime_field(p)
    rng = np.random.default_rng(seed)
    M = random_matrix(rng, m, n, p)
    S = echelon_span(M, F)
    assert S.dim == rank_oracle(M.tolist(), p)
    assert echelon_span(S.basis, F) == S
    # any other spanning set of the same space gives the same basis
    G = random_matrix(rng, m, m, p)
    while rank(G, F) < m:
        G = random_matrix(rng, m, m, p)
    assert echelon_span((G @ M) % p, F) == S
    for k, c in enumerate(S.pivots):
        assert S.basis[k, c] == 1
        assert int(S.basis[:, c].sum()) == 1
    assert list(S.pivots) == sorted(S.pivots)


def test_kernel_examples():
    F7 = prime_field(7)
    assert kernel(np.eye(5, dtype=np.int64), F7).dim == 0
    assert kernel(np.zeros((4, 4), dtype=np.int64), F7) == full_subspace(4, F7)
    outer = np.outer([1, 2, 3, 4], [5, 6, 0, 1]) % 7
    assert rank_oracle(outer.tolist(), 7) == 1
    K = kernel(outer, F7)
    assert K.dim == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 5, 7]), st.integers(1, 8), st.integers(1, 10))
def test_kernel_is_echelon_and_annihilates(seed, p, m, n):
    F = prime_field(p)
    M = random_matrix(np.random.default_rng(seed), m, n, p)
    K = kernel(M, F)
    assert K.dim == n - rank_oracle(M.tolist(), p)
    assert not ((M @ K.basis.T) % p).any()
    assert echelon_span(K.basis, F, n) == K


def test_combine_trivial_cases():
    F3 = prime_field(3)
    A = echelon_span([[1, 0, 2, 1, 0], [0, 1, 1, 0, 2]], F3)
    Z = zero_subspace(5, F3)
    assert combine(A, A) == (A, A)
    assert combine(A, Z) == (A, Z)


def test_combine_against_enumeration():
    F3 = prime_field(3)
    rng = np.random.default_rng(7)
    for _ in range(20):
        A = echelon_span(random_matrix(rng, 3, 5, 3), F3)
        B = echelon_span(random_matrix(rng, 3, 5, 3), F3)
        total, inter = combine(A, B)
        assert total.dim + inter.dim == A.dim + B.dim
        members = {
            tuple(int(x) for x in np.array(c) @ A.basis % 3)
            for c in itertools.product(range(3), repeat=A.dim)
        }
        brute = [v for v in members if B.contains(np.array(v))]
        assert len(brute) == 3**inter.dim
        for v in brute:
            assert inter.contains(np.array(v))


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 5, 7]))
def test_modular_law(seed, p):
    F = prime_field(p)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    A = echelon_span(random_matrix(rng, int(rng.integers(1, n + 1)), n, p), F)
    B = echelon_span(random_matrix(rng, int(rng.integers(1, n + 1)), n, p), F)
    total, inter = combine(A, B)
    assert total.dim + inter.dim == A.dim + B.dim
    assert inter <= A and inter <= B and A <= total and B <= total


def test_membership():
    F5 = prime_field(5)
    S = echelon_span([[1, 2, 3, 4], [0, 1, 1, 1]], F5)
    assert S.contains([1, 3, 4, 0])
    assert not S.contains([0, 0, 0, 1])


def test_inverse():
    F7 = prime_field(7)
    rng = np.random.default_rng(3)
    M = random_matrix(rng, 5, 5, 7)
    while rank(M, F7) < 5:
        M = random_matrix(rng, 5, 5, 7)
    assert ((M @ inverse(M, F7)) % 7 == np.eye(5, dtype=np.int64)).all()
    with pytest.raises(ZeroDivisionError):
        inverse(np.ones((3, 3), dtype=np.int64), F7)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_quadratic_field(p):
    K = quadratic_field(p)
    b, c = K.quadratic
    assert all((x * x + b * x + c) % p for x in range(p))
    # lexicographically least
    for b2, c2 in itertools.product(range(p), repeat=2):
        if (b2, c2) < (b, c):
            assert any((x * x + b2 * x + c2) % p == 0 for x in range(p))
    assert K.element_order(K.omega) == p * p - 1
    for x in range(1, p * p):
        assert K.mul(x, K.inv(x)) == 1
    # F_p sits inside as the codes 0..p-1
    for x, y in itertools.product(range(p), repeat=2):
        assert K.mul(x, y) == x * y % p
        assert K.add(x, y) == (x + y) % p
    # frobenius fixes exactly F_p
    fixed = [x for x in range(p * p) if K.power(x, p) == x or x == 0]
    assert sorted(fixed) == list(range(p))


def test_kernel_over_quadratic_field():
    K = quadratic_field(5)
    w = K.omega
    # companion matrix of the minimal polynomial of w has w as an eigenvalue
    t = int(K.add(w, K.power(w, 5)))
    nrm = int(K.mul(w, K.power(w, 5)))
    assert t < 5 and nrm < 5
    C = np.array([[0, (-nrm) % 5], [1, t]])
    shifted = C.copy()
    for k in range(2):
        shifted[k, k] = K.sub(C[k, k], w)
    ker = kernel(shifted, K)
    assert ker.dim == 1
    v = ker.basis[0]
    lhs = K.matmul(C, v[:, None])[:, 0]
    assert (lhs == K.mul(w, v)).all()


def test_rref_rejects_vectors():
    with pytest.raises(ValueError):
        rref(np.arange(3), prime_field(3))
