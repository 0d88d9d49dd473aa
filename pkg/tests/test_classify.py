import pytest

from o2power import oracle
from o2power.classify import (CC, CNC, OTHER, RS, canonical_cc, canonical_form,
                              canonical_rs, centralizer_order, classify)
from o2power.errors import NotCompatibleCyclic, NotRegularSemisimple, UnsupportedClass
from o2power.linalg import MatO2, block_diag, companion, jordan_O2
from o2power.poly import PolyO2
from o2power.ring import parse_ring


def M(R, text):
    return MatO2.parse(R, text)


def test_kinds(Z9):
    rep = classify(M(Z9, "3,1;5,0"))
    assert rep.kind == RS and rep.centralizer_order == 72
    assert classify(M(Z9, "0,-1;1,-1")).kind == CNC
    rep = classify(M(Z9, "1,1;0,1"))
    assert rep.kind == CC and rep.centralizer_order == 54
    assert rep.factors == [(PolyO2.from_ints(Z9, [8, 1]), 2)]
    assert classify(M(Z9, "5,0;0,2")).kind == OTHER
    assert classify(M(Z9, "1,0;0,2")).centralizer_order == 36


def test_unsupported_centralizer(Z9):
    with pytest.raises(UnsupportedClass):
        centralizer_order(classify(M(Z9, "5,0;0,2")))
    with pytest.raises(NotRegularSemisimple):
        canonical_rs(M(Z9, "1,1;0,1"))
    with pytest.raises(NotCompatibleCyclic):
        canonical_cc(M(Z9, "0,-1;1,-1"))


def test_centralizers_against_brute_n2(Z9):
    """Every RS and CC class of GL_2(Z/9) from the family representatives."""
    seen = {RS: 0, CC: 0}
    for _, _, A in oracle.gl2_zp2_families(3):
        rep = classify(A)
        if rep.kind not in (RS, CC):
            continue
        _, cent, _ = oracle.orbit_and_centralizer(Z9, 2, A)
        assert rep.centralizer_order == cent, A
        seen[rep.kind] += 1
    assert seen[RS] == 36 and seen[CC] == 6


def test_centralizers_against_brute_F3u():
    R = parse_ring("fqu2:3:1")
    for text in ("0,2;1,0", "1,0;0,2", "1,1;0,1", "1,u;1,1"):
        A = M(R, text)
        rep = classify(A)
        if rep.kind in (RS, CC):
            assert rep.centralizer_order == oracle.orbit_and_centralizer(R, 2, A)[1]


def _random_gl(R, n, rng):
    while True:
        S = MatO2(R, [[rng.randrange(R.size) for _ in range(n)] for _ in range(n)])
        if S.is_invertible():
            return S


@pytest.mark.parametrize("spec", ["zp2:3", "zp2:5", "fqu2:3:1"])
def test_canonical_rs_random(spec, rng):
    R = parse_ring(spec)
    F1 = PolyO2.from_ints(R, [1, 0, 1]) if spec != "zp2:5" else PolyO2.from_ints(R, [2, 0, 1])
    F2 = PolyO2.from_ints(R, [R.from_int(2), 1])
    base = block_diag([companion(F2), companion(F1)])
    target = canonical_rs(base).form
    for _ in range(10):
        S = _random_gl(R, 3, rng)
        A = S.inverse() * base * S
        cf = canonical_rs(A)
        assert cf.form == target
        assert cf.conjugator.inverse() * A * cf.conjugator == cf.form


@pytest.mark.parametrize("spec,F_ints,r", [("zp2:3", [5, 4, 1], 2), ("zp2:3", [2, 1], 3),
                                           ("fqu2:3:1", [1, 0, 1], 2), ("zp2:5", [3, 1], 2)])
def test_canonical_cc_jordan(spec, F_ints, r, rng):
    R = parse_ring(spec)
    F = PolyO2.from_ints(R, F_ints)
    J = jordan_O2(F, r)
    cf = canonical_cc(J)
    assert cf.blocks[0][1] == r
    for _ in range(5):
        S = _random_gl(R, J.n, rng)
        A = S.inverse() * J * S
        cf2 = canonical_form(A)
        assert cf2.form == cf.form
        assert cf2.conjugator.inverse() * A * cf2.conjugator == cf2.form


def test_canonical_json(Z9):
    js = canonical_form(M(Z9, "3,1;5,0")).to_json()
    assert set(js) == {"form", "conjugator", "blocks"}
    assert classify(M(Z9, "3,1;5,0")).to_json()["centralizer_order"] == "72"
