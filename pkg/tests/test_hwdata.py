from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylforge import commalg
from weylforge.errors import NotCoprime, NotDominant, SharedPoint
from weylforge.hwdata import (
    Weight,
    evaluation_psi,
    k_sequence,
    n_lambda_alpha,
    psi_add,
    psi_consistency,
    standard_sequence,
    validate_sequence,
    weight,
)
from weylforge.poly import Poly
from weylforge.rootsys import positive_roots, validate_gcm

from conftest import GCMS


def test_n_lambda_alpha():
    assert n_lambda_alpha(weight(1, 2), (1, 1)) == 3
    assert n_lambda_alpha(weight(2, 1), (3, 2)) == 8
    with pytest.raises(NotDominant):
        n_lambda_alpha(weight(-1, 0), (1, 0))


def test_psi_values(A):
    psi = evaluation_psi(A, [(0, (1,)), (1, (2,))])
    assert psi.weight == weight(3)
    t = Poly.var(1, 0)
    assert psi.value_poly(0, t) == 2
    assert psi.value_poly(0, t * t + 1) == 1 + 2 * 2
    Q = commalg.quotient_algebra(psi.annihilating_ideal)
    assert psi.value(0, Q, Q.image(t + 3)) == 3 + 2 * 4
    assert psi_consistency(psi)


def test_psi_add(A):
    a = evaluation_psi(A, [(0, (1,))])
    b = evaluation_psi(A, [(1, (1,))])
    s = psi_add(a, b)
    assert s.weight == weight(2)
    assert commalg.codim(s.annihilating_ideal) == 2
    with pytest.raises(SharedPoint):
        psi_add(a, a)


def test_psi_inconsistent(A):
    psi = evaluation_psi(A, [(0, (1,))], commalg.maximal_ideal(A, 5))
    assert not psi_consistency(psi)


def test_standard_sequence_codims(A):
    table = positive_roots(validate_gcm(GCMS["A2"]), 5)
    seq = standard_sequence(weight(1, 2), commalg.point_ideal(A, {0: 2}), table)
    assert seq.codims() == {(1, 0): 2, (0, 1): 4, (1, 1): 6}
    assert validate_sequence(seq)


def test_k_sequence(A):
    table = positive_roots(validate_gcm(GCMS["A2"]), 5)
    I, J = commalg.maximal_ideal(A, 0), commalg.maximal_ideal(A, 1)
    seq = k_sequence(weight(1, 0), I, weight(0, 1), J, table)
    assert seq.codims() == {(1, 0): 1, (0, 1): 1, (1, 1): 2}
    assert validate_sequence(seq)
    with pytest.raises(NotCoprime):
        k_sequence(weight(1, 0), I, weight(0, 1), I, table)


def test_validate_sequence_detects_monotonicity(A):
    table = positive_roots(validate_gcm(GCMS["A2"]), 5)
    seq = standard_sequence(weight(1, 1), commalg.maximal_ideal(A, 0), table)
    entries = dict(seq.entries)
    entries[(1, 0)] = commalg.point_ideal(A, {0: 3})
    bad = type(seq)(seq.table, entries, seq.envelope, seq.exempt)
    report = validate_sequence(bad)
    assert not report
    assert any(kind == "monotone" for kind, _, _ in report.failures)


@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.data())
@settings(max_examples=25, deadline=None)
def test_sequences_satisfy_conditions(name, data):
    A = commalg.PolyAlgebra(1)
    gcm = validate_gcm(GCMS[name])
    table = positive_roots(gcm, 20)
    lam = Weight(tuple(data.draw(st.integers(0, 2)) for _ in range(gcm.rank)))
    mu = Weight(tuple(data.draw(st.integers(0, 2)) for _ in range(gcm.rank)))
    a, b = data.draw(st.integers(1, 2)), data.draw(st.integers(1, 2))
    I = commalg.point_ideal(A, {0: a})
    J = commalg.point_ideal(A, {Fraction(1, 2): b})
    assert validate_sequence(standard_sequence(lam, I, table))
    kseq = k_sequence(lam, I, mu, J, table)
    assert validate_sequence(kseq)
    for r in table:
        assert commalg.codim(kseq[r]) == a * n_lambda_alpha(lam, r) + b * n_lambda_alpha(mu, r)
