import json
import random

import pytest

from weylforge import commalg
from weylforge.errors import NotCoprime, ResourceCapError
from weylforge.hwdata import evaluation_psi, standard_sequence, weight
from weylforge.modeng import build_W, chevalley_basis
from weylforge.rootsys import positive_roots, validate_gcm
from weylforge.theorems import (
    check_l1,
    check_M_character,
    check_max,
    check_remark_nilpotency,
    check_T1,
    check_tw,
    coefficient_algebra,
    negative_control_T1,
    random_l1_instances,
    random_T1_instance,
)
from weylforge.poly import Poly

from conftest import GCMS

A = commalg.PolyAlgebra(1)
m = lambda p, k=1: commalg.point_ideal(A, {p: k})


def test_T1_sl2_brute():
    table = positive_roots(validate_gcm([[2]]), 6)
    rep = check_T1(weight(1), m(0), weight(1), m(1), table, H=4, brute_force=True)
    assert rep.ok, rep.first_discrepancy()
    names = [c["name"] for c in rep.checks]
    assert "formula" in names and "brute_force" in names


def test_T1_a2_brute():
    table = positive_roots(validate_gcm(GCMS["A2"]), 4)
    rep = check_T1(weight(1, 0), m(0), weight(0, 1), m(1), table, H=3, brute_force=True)
    assert rep.ok, rep.first_discrepancy()


def test_T1_affine_formula():
    table = positive_roots(validate_gcm([[2, -2], [-2, 2]], "affine"), 6)
    rep = check_T1(weight(1, 0), m(0), weight(0, 1), m(1), table, H=6, brute_force=False)
    assert rep.ok


def test_T1_random_formula():
    rng = random.Random(11)
    for _ in range(10):
        name, gcm, lam, I, mu, J = random_T1_instance(rng)
        table = positive_roots(gcm, 5)
        assert check_T1(lam, I, mu, J, table, H=5, brute_force=False)


def test_T1_negative_control_formula_side_fails():
    table = positive_roots(validate_gcm(GCMS["A2"]), 5)
    for seed in range(3):
        rep = negative_control_T1(weight(1, 1), m(0), weight(1, 0), m(2), table, 5, seed, brute_force=False)
        assert not rep.ok
        assert rep.first_discrepancy()["check"] == "formula"


def test_T1_not_coprime():
    table = positive_roots(validate_gcm([[2]]), 4)
    with pytest.raises(NotCoprime):
        check_T1(weight(1), m(0), weight(1), m(0, 2), table, H=3, brute_force=False)


@pytest.mark.parametrize("lam,mu,total", [(1, 1, 4), (2, 1, 8)])
def test_tw_sl2(lam, mu, total):
    rep = check_tw(weight(lam), m(0), weight(mu), m(1))
    assert rep.ok, rep.first_discrepancy()
    dims = next(c for c in rep.checks if c["name"] == "graded_dimensions")
    assert dims["totals"]["W"] == total


def test_tw_not_coprime():
    with pytest.raises(NotCoprime):
        check_tw(weight(1), m(0), weight(1), m(0))


def test_max_two_points():
    rep = check_max([(0, (1,)), (1, (1,))])
    assert rep.ok
    ev = next(c for c in rep.checks if c["name"] == "evaluation_module_dimensions")
    assert ev["totals"] == {"W": 4, "evaluation": 4}


def test_brute_caps():
    gcm = validate_gcm(GCMS["A2"])
    table = positive_roots(gcm, 4)
    with pytest.raises(ResourceCapError):
        check_T1(weight(2, 2), m(0, 2), weight(2, 2), m(1, 2), table, H=3, brute_force=True)


def test_remark_nilpotency():
    cb = chevalley_basis(validate_gcm([[2]]))
    psi = evaluation_psi(A, [(0, (1,))])
    B = coefficient_algebra([(m(0), 2)])
    W = build_W(psi, m(0), B, None, cb)
    t = Poly.var(1, 0)
    for f in (t, Poly.const(1, 1), t * t + 3):
        assert check_remark_nilpotency(W, 0, f)


def test_l1_random():
    gcm = validate_gcm(GCMS["A2"])
    table = positive_roots(gcm, 6)
    psi = evaluation_psi(A, [(0, (1, 1))])
    seq = standard_sequence(weight(1, 1), m(0), table)
    from weylforge.modeng import build_M
    state = build_M(psi, seq, coefficient_algebra([(m(0), 4)]), 4)
    inst = random_l1_instances(state, 12, random.Random(5))
    assert any(len(g) == 0 for _, g, _ in inst)
    assert check_l1(state, inst)


def test_character_check():
    table = positive_roots(validate_gcm(GCMS["B2"]), 5)
    psi = evaluation_psi(A, [(0, (1, 1))])
    seq = standard_sequence(weight(1, 1), m(0), table)
    rep = check_M_character(psi, seq, coefficient_algebra([(m(0), 3)]), 3)
    assert rep.ok


def test_report_json_is_stable():
    table = positive_roots(validate_gcm([[2]]), 6)
    a = check_T1(weight(1), m(0), weight(1), m(1), table, H=3, brute_force=False).dumps()
    b = check_T1(weight(1), m(0), weight(1), m(1), table, H=3, brute_force=False).dumps()
    assert a == b
    assert json.loads(a)["status"] == "pass"
