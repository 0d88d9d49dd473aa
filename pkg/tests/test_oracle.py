import numpy as np
import pytest

from o2power import oracle
from o2power.errors import BudgetExceeded, GcdLpViolation, MismatchFound, NotInvertible
from o2power.linalg import MatK, MatO2
from o2power.poly import PolyO2
from o2power.ring import parse_ring


def test_group_orders(Z9):
    assert oracle.group(Z9, 1).order == 6
    assert oracle.group(Z9, 2).order == 3888
    assert oracle.group(Z9.field, 2).order == 48
    assert oracle.group(parse_ring("fqu2:3:1"), 2).order == 3888


def test_enumerate_gl_is_sorted_and_invertible(Z9):
    mats = list(oracle.enumerate_gl(Z9, 1))
    assert [m.rows[0][0] for m in mats] == [1, 2, 4, 5, 7, 8]


def test_budget(monkeypatch, Z25):
    monkeypatch.setenv("O2POWER_BUDGET", "1000")
    with pytest.raises(BudgetExceeded):
        oracle.group(Z25, 2)


def test_class_ids_match_direct_orbits(Z9):
    G = oracle.group(Z9, 2)
    lab = G.class_ids()
    for i in range(0, G.order, 97):
        orb = np.unique(G.conjugates(G.mats[i]))
        assert lab[i] == orb[0]
        assert np.all(lab[G.index(orb)] == orb[0])
    assert len(np.unique(lab)) == 78


def test_orbit_and_centralizer(Z9):
    A = MatO2.parse(Z9, "3,1;5,0")
    assert oracle.orbit_and_centralizer(Z9, 2, A) == (54, 72, 12)
    assert oracle.orbit_and_centralizer(Z9, 2, MatO2.parse(Z9, "1,1;0,1")) == (72, 54, 9)
    assert oracle.orbit_and_centralizer(Z9, 2, MatO2.parse(Z9, "1,0;0,2")) == (108, 36, 6)


def test_element_order_needs_unit(Z9):
    with pytest.raises(NotInvertible):
        oracle.element_order(MatO2.parse(Z9, "1,3;1,0"))


def test_power_image_and_preimage(Z9):
    img = oracle.power_image(Z9, 2, 2)
    assert len(img) == 1236
    assert MatO2.parse(Z9, "5,0;0,2") not in img
    B = MatO2.parse(Z9, "3,1;5,0")
    for X in oracle.power_preimage(B * B, 2):
        assert X * X == B * B
    assert B in oracle.power_preimage(B * B, 2)


def test_field_square_roots_of_2I(Z9):
    k = Z9.field
    roots = oracle.power_preimage(MatK.scalar(k, 2, 2), 2)
    assert len(roots) == 6
    assert all(r * r == MatK.scalar(k, 2, 2) for r in roots)


def test_families_partition():
    fp = oracle.family_partition(3)
    assert fp["partition"] and fp["covered"] == 3888 and fp["representatives"] == 78
    assert fp["class_sizes"]["S"] == [1]
    assert fp["class_sizes"]["D:i=0"] == [108]
    assert fp["class_sizes"]["H':i=1"] == [6]


def test_families_epsilon():
    reps = oracle.gl2_zp2_families(3, epsilon=5)
    assert any(A == MatO2.from_ints(parse_ring("zp2:3"), [[6, 5], [1, 6]]) for _, _, A in reps)
    assert oracle.family_partition(3, epsilon=5)["partition"]
    with pytest.raises(ValueError):
        oracle.gl2_zp2_families(3, epsilon=4)


@pytest.mark.parametrize("theorem,L", [("T1", 2), ("T1", 5), ("T2", 2), ("C44", 2), ("T2", 4)])
def test_verify_theorem(Z9, theorem, L):
    rep = oracle.verify_theorem(theorem, Z9, 2, L)
    assert rep.totals["mismatches"] == 0 and rep.totals["checked"] > 0
    assert rep.totals["agree"] == rep.totals["checked"]


def test_verify_other_rings():
    for spec in ("fqu2:3:1", "zp2:5"):
        R = parse_ring(spec)
        assert oracle.verify_theorem("T2", R, 2, 2).totals["mismatches"] == 0


def test_verify_gcd(Z9):
    with pytest.raises(GcdLpViolation):
        oracle.verify_theorem("T1", Z9, 2, 3)


def test_mismatch_carries_report(Z9, monkeypatch):
    monkeypatch.setattr(oracle._Classifier, "decide", lambda self, A, chi, L: True)
    with pytest.raises(MismatchFound) as exc:
        oracle.verify_theorem("T1", Z9, 1, 2)
    assert exc.value.report.totals["mismatches"] > 0
    rep = oracle.verify_theorem("T1", Z9, 1, 2, raise_on_mismatch=False)
    assert rep.mismatches


def test_census_json_is_deterministic(Z9):
    a = oracle.census(Z9, 2, 2).to_json()
    b = oracle.census(Z9, 2, 2).to_json()
    assert a == b and "elapsed" not in a
    assert "elapsed" in oracle.census(Z9, 1).to_json(timing=True)


def test_table1(Z9):
    rows = oracle.table1(Z9)
    assert len(rows) == 9 and all(ok for _, ok in rows)
    assert {F.to_text() for F, _ in rows} == {f"{a},{b},1" for a in (1, 4, 7) for b in (0, 3, 6)}


def test_divisor_scan(Z9):
    F = PolyO2.from_ints(Z9, [-5, 0, 0, -3, 0, 0, 1])
    assert oracle.monic_quadratic_divisors(F) == []
    G = PolyO2.from_ints(Z9, [7, 0, 3, 0, 1])
    got = {D.to_text() for D in oracle.monic_quadratic_divisors(G)}
    assert {"5,4,1", "5,5,1"} <= got
