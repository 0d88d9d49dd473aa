import itertools

import pytest

from o2power.errors import DimMismatch, NotInvertible
from o2power.linalg import (MatK, MatO2, block_diag, charpoly, companion,
                            cyclic_vector, det, invariant_factors_k, is_cyclic_k,
                            is_gl, jordan_O2, krylov, minpoly_k, nullspace,
                            rcf_conjugator_k)
from o2power.poly import PolyK, PolyO2
from o2power.ring import parse_ring


def rand_mat(R, n, rng, cls=MatO2):
    size = R.size if cls is MatO2 else R.q
    return cls(R, [[rng.randrange(size) for _ in range(n)] for _ in range(n)])


def leibniz_det(A):
    """Permutation expansion, independent of the Berkowitz routine."""
    B = A.base
    n = A.n
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i) if perm[j] > perm[i])
        term = 1
        for i in range(n):
            term = B.mul(term, A.rows[i][perm[i]])
        total = B.sub(total, term) if inv % 2 else B.add(total, term)
    return total


def test_worked_example(Z9):
    A = MatO2.parse(Z9, "3,1;5,0")
    assert charpoly(A) == PolyO2.from_ints(Z9, [4, 6, 1])
    assert A * A == MatO2.from_ints(Z9, [[5, 3], [6, 5]])
    assert det(A) == 4 and is_gl(A)


def test_parse_round_trip(F3u):
    A = MatO2.parse(F3u, "1+u,2;u,1")
    assert MatO2.parse(F3u, A.to_text()) == A


def test_non_square():
    R = parse_ring("zp2:3")
    with pytest.raises(DimMismatch):
        MatO2(R, [[1, 2], [3]])


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5", "fqu2:3:1", "fqu2:3:2"])
def test_det_and_cayley_hamilton(spec, rng):
    R = parse_ring(spec)
    for _ in range(40):
        n = rng.randint(1, 4)
        A = rand_mat(R, n, rng)
        assert det(A) == leibniz_det(A)
        chi = charpoly(A)
        assert chi.is_monic() and chi.deg == n
        assert A.poly_eval(chi) == MatO2.zero(R, n)
        assert chi.theta() == A.theta().charpoly()


@pytest.mark.parametrize("spec", ["zp2:3", "fqu2:3:1"])
def test_inverse(spec, rng):
    R = parse_ring(spec)
    seen = 0
    while seen < 40:
        A = rand_mat(R, rng.randint(1, 4), rng)
        if not A.is_invertible():
            with pytest.raises(NotInvertible):
                A.inverse()
            continue
        seen += 1
        I = MatO2.identity(R, A.n)
        assert A * A.inverse() == I and A.inverse() * A == I


def test_theta_is_multiplicative(Z9, rng):
    for _ in range(50):
        A, B = rand_mat(Z9, 3, rng), rand_mat(Z9, 3, rng)
        assert (A * B).theta() == A.theta() * B.theta()
        assert (A + B).theta() == A.theta() + B.theta()


def test_pi_and_div_pi(Z9, rng):
    A = rand_mat(Z9, 3, rng)
    X = A.theta().pi_times(Z9)
    assert X.theta() == MatK.zero(Z9.field, 3)
    assert X.div_pi() == A.theta()


def test_companion_and_jordan(Z9):
    F = PolyO2.from_ints(Z9, [5, 4, 1])
    C = companion(F)
    assert C.rows == ((0, Z9.neg(5)), (1, Z9.neg(4)))
    assert charpoly(C) == F
    J = jordan_O2(F, 3)
    assert J.n == 6 and charpoly(J) == F ** 3
    assert J.poly_eval(F ** 3) == MatO2.zero(Z9, 6)
    assert J.poly_eval(F ** 2) != MatO2.zero(Z9, 6)


def test_block_diag(Z9):
    A = MatO2.from_ints(Z9, [[1]])
    B = MatO2.from_ints(Z9, [[2, 1], [0, 2]])
    D = block_diag([A, B])
    assert D.rows == ((1, 0, 0), (0, 2, 1), (0, 0, 2))


def test_nullspace(Z9):
    F = Z9.field
    M = [[1, 2, 0], [2, 1, 0]]
    ns = nullspace(F, M)
    for v in ns:
        for row in M:
            assert sum(a * b for a, b in zip(row, v)) % 3 == 0
    assert len(ns) == 2  # rank 1


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5", "fqu2:3:2"])
def test_cyclic_vector_and_krylov(spec, rng):
    R = parse_ring(spec)
    F = R.field
    hits = 0
    for _ in range(60):
        A = rand_mat(F, 3, rng, MatK)
        if not is_cyclic_k(A):
            assert minpoly_k(A).deg < 3
            continue
        hits += 1
        w = cyclic_vector(A)
        K = krylov(A, w)
        assert K.det()
        assert minpoly_k(A) == A.charpoly()
    assert hits > 20


def test_scalar_is_not_cyclic(Z9):
    A = MatK.scalar(Z9.field, 2, 2)
    assert not is_cyclic_k(A)
    assert minpoly_k(A) == PolyK.from_ints(Z9.field, [1, 1])


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5"])
def test_rcf_conjugator(spec, rng):
    F = parse_ring(spec).field
    for _ in range(40):
        A = rand_mat(F, rng.randint(1, 4), rng, MatK)
        S, blocks = rcf_conjugator_k(A, seed=rng.randrange(10))
        C = block_diag([companion(b) for b in blocks])
        assert S.inverse() * A * S == C
        for a, b in zip(blocks, blocks[1:]):
            assert not (b % a).c
        prod = PolyK.one(F)
        for b in blocks:
            prod = prod * b
        assert prod == A.charpoly()


def test_invariant_factors_scalar(Z9):
    F = Z9.field
    A = MatK.scalar(F, 3, 2)
    assert invariant_factors_k(A) == [PolyK.from_ints(F, [1, 1])] * 3
