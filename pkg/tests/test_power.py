import pytest

from o2power import oracle
from o2power.classify import CC, RS, classify
from o2power.errors import GcdLpViolation, NotAPower, NotInvertible, UnsupportedClass
from o2power.linalg import MatK, MatO2, block_diag, companion, jordan_O2
from o2power.poly import PolyO2
from o2power.power import field_root, is_lth_power, lth_root, matrix_hensel_solve
from o2power.ring import parse_ring


def M(R, text):
    return MatO2.parse(R, text)


def test_no_cube_root(Z9):
    A = M(Z9, "3,1;5,0")
    with pytest.raises(GcdLpViolation):
        is_lth_power(A, 3)
    assert not oracle.is_in_power_image(A, 3)


def test_square_decision_examples(Z9):
    A = M(Z9, "3,1;5,0")  # chi reduces to t^2+1, which is a 2-power over F_3
    d = is_lth_power(A, 2, witness=True)
    assert d.is_power and d.kind == RS
    assert d.witness ** 2 == A
    B = M(Z9, "1,0;0,2")  # 2 is not a square mod 3
    assert not is_lth_power(B, 2).is_power
    with pytest.raises(NotAPower):
        lth_root(B, 2)


def test_errors(Z9):
    with pytest.raises(NotInvertible):
        is_lth_power(M(Z9, "3,0;0,1"), 2)
    with pytest.raises(UnsupportedClass):
        is_lth_power(M(Z9, "5,0;0,2"), 2)
    with pytest.raises(UnsupportedClass):
        is_lth_power(M(Z9, "0,-1;1,-1"), 2)


def test_identity_root(Z9):
    I = MatO2.identity(Z9, 3)
    assert lth_root(I, 4) == I


@pytest.mark.parametrize("spec", ["zp2:3", "fqu2:3:1", "zp2:5"])
@pytest.mark.parametrize("L", [2, 4, 7])
def test_decision_matches_brute_on_sample(spec, L, rng):
    R = parse_ring(spec)
    if L % R.p == 0:
        pytest.skip("L divisible by p")
    img = oracle.power_image(R, 2, L)
    tried = 0
    while tried < 40:
        A = MatO2(R, [[rng.randrange(R.size) for _ in range(2)] for _ in range(2)])
        if not A.is_invertible() or classify(A).kind not in (RS, CC):
            continue
        tried += 1
        d = is_lth_power(A, L, witness=True)
        assert d.is_power == (A in img)
        if d.is_power:
            assert d.witness ** L == A


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5", "fqu2:3:1", "fqu2:3:2", "zp2:7"])
def test_roots_n3_n4(spec, rng):
    R = parse_ring(spec)
    done = 0
    for _ in range(400):
        if done >= 8:
            break
        n = rng.choice([3, 4])
        B = MatO2(R, [[rng.randrange(R.size) for _ in range(n)] for _ in range(n)])
        if not B.is_invertible():
            continue
        L = rng.choice([l for l in (2, 4, 5, 8) if l % R.p])
        A = B ** L
        if classify(A).kind not in (RS, CC):
            continue
        d = is_lth_power(A, L, witness=True)
        assert d.is_power
        assert d.witness ** L == A
        done += 1
    assert done


def test_cc_root_of_jordan(Z9):
    F = PolyO2.from_ints(Z9, [1, 0, 1])
    J = jordan_O2(F, 2)
    B = lth_root(J, 2)
    assert B ** 2 == J


def test_field_root(Z9):
    k = Z9.field
    A = MatK.from_ints(k, [[0, 2], [1, 0]])  # companion of t^2 + 1
    B = field_root(A, 2)
    assert B ** 2 == A
    C = MatK.from_ints(k, [[1, 0], [0, 2]])
    assert field_root(C, 2) is None


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5", "fqu2:3:1"])
def test_matrix_hensel_solve(spec, rng):
    R = parse_ring(spec)
    T = PolyO2.t(R)
    ok = 0
    while ok < 20:
        n = rng.randint(1, 3)
        B = MatO2(R, [[rng.randrange(R.size) for _ in range(n)] for _ in range(n)])
        L = rng.choice([l for l in (2, 4) if l % R.p])
        A = B ** L
        if not A.is_invertible() or not A.charpoly().theta().is_squarefree():
            continue
        Bt = B.theta()
        if not Bt.poly_eval((T ** L).theta().derivative()).det():
            continue
        X = matrix_hensel_solve(T ** L, A, Bt)
        assert X ** L == A and X.theta() == Bt
        ok += 1
