import dataclasses
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylforge import commalg
from weylforge.errors import (
    AlgebraMismatch,
    DuplicatePoint,
    OrderViolation,
    UnsupportedType,
    WeightOverflow,
)
from weylforge.hwdata import evaluation_psi, standard_sequence, weight
from weylforge.modeng import (
    MapAlgebra,
    action_axiom_holds,
    build_M,
    build_W,
    chevalley_basis,
    evaluation_module,
    lowering_element,
    singular_vectors,
    tensor_module,
    verify_chevalley,
    verify_lemma_l1,
    weyl_relation_audit,
)
from weylforge.modeng.modules import VermaModule
from weylforge.poly import Poly
from weylforge.rootsys import positive_roots, validate_gcm

from conftest import GCMS

t = Poly.var(1, 0)
SL2 = validate_gcm([[2]])


def sl2_verma(lam, B):
    cb = chevalley_basis(SL2)
    psi = evaluation_psi(commalg.PolyAlgebra(1), [(0, (lam,))])
    return VermaModule(MapAlgebra(cb, B), psi)


def quotient(n):
    """Q[t]/(t^n)."""
    return commalg.quotient_algebra(commalg.point_ideal(1, {0: n}))


# Chevalley bases -----------------------------------------------------------

@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_chevalley_verified(name):
    gcm = validate_gcm(GCMS[name]) if name in GCMS else None
    if gcm is None:
        mats = {"A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
                "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
                "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]}
        gcm = validate_gcm(mats[name])
    cb = chevalley_basis(gcm)
    verify_chevalley(cb, gcm)
    assert cb.dim == cb.rank + 2 * len(cb.table.roots)


def test_sl2_relations():
    cb = chevalley_basis(SL2)
    e, f, h = cb.e(0), cb.f(0), cb.h(0)
    assert cb.br(e, f) == {h: 1}
    assert cb.br(h, e) == {e: 2}
    assert cb.br(h, f) == {f: -2}


def test_a2_bracket_is_a_root_vector():
    cb = chevalley_basis(validate_gcm(GCMS["A2"]))
    res = cb.br(cb.e(0), cb.e(1))
    assert list(res) == [cb.e_index[(1, 1)]]
    assert abs(next(iter(res.values()))) == 1


def test_b2_root_count():
    cb = chevalley_basis(validate_gcm(GCMS["B2"]))
    assert len(cb.e_index) == 4


def test_unsupported():
    with pytest.raises(UnsupportedType):
        chevalley_basis(validate_gcm([[2, -2], [-2, 2]], "affine"))


# map algebra ----------------------------------------------------------------

def test_map_bracket():
    B = quotient(3)
    malg = MapAlgebra(chevalley_basis(SL2), B)
    cb = malg.chevalley
    et = malg.element(cb.e(0), B.image(t))
    ft = malg.element(cb.f(0), B.image(t))
    assert malg.bracket_elements(et, ft) == malg.element(cb.h(0), B.image(t * t))
    assert malg.bracket_elements(malg.element(cb.e(0), B.image(t * t)), ft) == {}


# action ----------------------------------------------------------------------

def test_sl2_verma_action():
    B = quotient(1)
    for lam in range(5):
        M = sl2_verma(lam, B)
        cb = M.malg.chevalley
        e, f = M.malg.gen(cb.e(0), 0), M.malg.gen(cb.f(0), 0)
        v = M.vacuum()
        fv = M.apply(f, v)
        assert M.apply(e, fv) == {(): lam} if lam else M.apply(e, fv) == {}
        f2v = M.apply(f, fv)
        # e f^2 = f^2 e + 2 f h - 2 f
        want = 2 * (lam - 1)
        assert M.apply(e, f2v) == ({k: want for k in fv} if want else {})


def test_nilpotent_coefficient_kills():
    B = quotient(2)
    M = sl2_verma(1, B)
    cb = M.malg.chevalley
    et = M.malg.element(cb.e(0), B.image(t))
    ft = M.malg.element(cb.f(0), B.image(t))
    assert M.apply(et, M.apply(ft, M.vacuum())) == {}


def test_weight_overflow():
    B = quotient(1)
    psi = evaluation_psi(commalg.PolyAlgebra(1), [(0, (3,))])
    st_ = build_M(psi, None, B, 2, chevalley=chevalley_basis(SL2))
    cb = st_.malg.chevalley
    f = st_.malg.gen(cb.f(0), 0)
    v = st_.apply_word([f, f], st_.vacuum())
    with pytest.raises(WeightOverflow):
        st_.apply(f, v)


# build_M / build_W -----------------------------------------------------------

def test_verma_dims():
    B = quotient(1)
    psi = evaluation_psi(commalg.PolyAlgebra(1), [(0, (2,))])
    st_ = build_M(psi, None, B, 5, chevalley=chevalley_basis(SL2))
    assert [st_.dim((k,)) for k in range(6)] == [1] * 6


@pytest.mark.parametrize("order", ["height", "reverse"])
def test_M_standard_sequence(order):
    A = commalg.PolyAlgebra(1)
    B = quotient(4)
    psi = evaluation_psi(A, [(0, (2,))])
    table = positive_roots(SL2, 6)
    seq = standard_sequence(weight(2), commalg.maximal_ideal(A, 0), table)
    st_ = build_M(psi, seq, B, 5, order=order)
    assert [st_.dim((k,)) for k in range(6)] == [k + 1 for k in range(6)]


def test_M_zero_weight():
    A = commalg.PolyAlgebra(1)
    B = quotient(1)
    psi = evaluation_psi(A, [(0, (0,))])
    seq = standard_sequence(weight(0), commalg.maximal_ideal(A, 0), positive_roots(SL2, 4))
    st_ = build_M(psi, seq, B, 3)
    assert st_.dims() == {(0,): 1}


def test_W_small():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    psi = evaluation_psi(A, [(0, (1,))])
    W = build_W(psi, commalg.maximal_ideal(A, 0), quotient(1), None, cb)
    assert W.dims() == {(0,): 1, (1,): 1}
    assert W.audit["status"] == "pass"


def test_W_two_points():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    psi = evaluation_psi(A, [(0, (1,)), (1, (1,))])
    I = commalg.point_ideal(A, {0: 1, 1: 1})
    W = build_W(psi, I, commalg.quotient_algebra(commalg.power(I, 2)), None, cb)
    assert W.total_dim() == 4


def test_W_order_independent():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    psi = evaluation_psi(A, [(0, (2,))])
    I = commalg.point_ideal(A, {0: 2})
    B = commalg.quotient_algebra(commalg.power(I, 2))
    a = build_W(psi, I, B, None, cb, order="height")
    b = build_W(psi, I, B, None, cb, order="reverse")
    assert a.dims() == b.dims()


# evaluation modules and tensors ------------------------------------------------

def test_evaluation_module():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    psi = evaluation_psi(A, [(0, (1,)), (1, (1,))])
    V = evaluation_module(psi, chevalley=cb)
    assert sum(V.dims(3).values()) == 4
    B = V.malg.coeff
    v = V.vacuum()
    ft = V.malg.element(cb.f(0), B.image(t))
    f1 = V.factors[1]
    fv = f1.apply(cb.f(0), f1.vacuum())
    assert V.apply(ft, v) == {(V.factors[0].highest, k): c for k, c in fv.items()}
    assert V.apply(V.malg.element(cb.f(0), B.image(t * (t - 1))), v) == {}
    assert weyl_relation_audit(V, psi, commalg.point_ideal(A, {0: 1, 1: 1}))
    # only the top weight has singular vectors
    assert len(singular_vectors(V, (0,))) == 1
    assert singular_vectors(V, (1,)) == []


def test_evaluation_single_point():
    A = commalg.PolyAlgebra(1)
    V = evaluation_module(evaluation_psi(A, [(0, (2,))]), chevalley=chevalley_basis(SL2))
    assert sum(V.dims(4).values()) == 3


def test_duplicate_point():
    A = commalg.PolyAlgebra(1)
    psi = evaluation_psi(A, [(0, (1,))])
    psi = dataclasses.replace(psi, evaluation_data=psi.evaluation_data * 2)
    with pytest.raises(DuplicatePoint):
        evaluation_module(psi, chevalley=chevalley_basis(SL2))


def test_tensor_dims_and_cyclicity():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    B = commalg.quotient_algebra(commalg.point_ideal(A, {0: 1, 1: 2}))
    W1 = build_W(evaluation_psi(A, [(0, (1,))]), commalg.maximal_ideal(A, 0), B, None, cb)
    W2 = build_W(evaluation_psi(A, [(1, (2,))]), commalg.maximal_ideal(A, 1), B, None, cb)
    T = tensor_module(W1, W2, cyclicity_audit=True, H=4)
    d1, d2 = W1.dims(4), W2.dims(4)
    for k in range(5):
        conv = sum(d1.get((j,), 0) * d2.get((k - j,), 0) for j in range(k + 1))
        assert T.dim((k,)) == conv
    assert T.cyclic


def test_tensor_mismatch():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    W1 = build_W(evaluation_psi(A, [(0, (1,))]), commalg.maximal_ideal(A, 0), quotient(1), None, cb)
    W2 = build_W(evaluation_psi(A, [(0, (1,))]), commalg.maximal_ideal(A, 0), quotient(2), None, cb)
    with pytest.raises(AlgebraMismatch):
        tensor_module(W1, W2)


def test_coproduct_leibniz():
    A = commalg.PolyAlgebra(1)
    cb = chevalley_basis(SL2)
    I = commalg.point_ideal(A, {0: 1, 1: 1})
    B = commalg.quotient_algebra(I)
    W1 = build_W(evaluation_psi(A, [(0, (1,))]), commalg.maximal_ideal(A, 0), B, None, cb)
    W2 = build_W(evaluation_psi(A, [(1, (1,))]), commalg.maximal_ideal(A, 1), B, None, cb)
    T = tensor_module(W1, W2)
    rng = random.Random(3)
    for _ in range(20):
        g = rng.randrange(T.malg.ngens)
        eta1, eta2 = (rng.randint(0, 1),), (rng.randint(0, 1),)
        u = {k: Fraction(rng.randint(-3, 3)) for k in W1.keys(eta1)}
        w = {k: Fraction(rng.randint(-3, 3)) for k in W2.keys(eta2)}
        u = {k: c for k, c in u.items() if c}
        w = {k: c for k, c in w.items() if c}
        left = T.apply(g, T.pure(u, w))
        right = T.pure(W1.apply(g, u), w)
        for k, c in T.pure(u, W2.apply(g, w)).items():
            right[k] = right.get(k, 0) + c
        assert left == {k: c for k, c in right.items() if c}


def test_verma_singular_vector():
    M = sl2_verma(2, quotient(1))
    found = [k for k in range(5) if singular_vectors(M, (k,))]
    assert found == [0, 3]


# lemma l1 ----------------------------------------------------------------------

def l1_state():
    A = commalg.PolyAlgebra(1)
    psi = evaluation_psi(A, [(0, (2,))])
    seq = standard_sequence(weight(2), commalg.maximal_ideal(A, 0), positive_roots(SL2, 6))
    return build_M(psi, seq, quotient(4), 4)


def test_l1_examples():
    st_ = l1_state()
    B = st_.malg.coeff
    assert verify_lemma_l1(st_, (1,), [], [])
    assert verify_lemma_l1(st_, (1,), [(1,)], [B.image(t)])
    assert verify_lemma_l1(st_, (1,), [(1,)], [B.image(Poly.const(1, 1))])


def test_l1_order_violation():
    A = commalg.PolyAlgebra(1)
    gcm = validate_gcm(GCMS["A2"])
    psi = evaluation_psi(A, [(0, (1, 1))])
    seq = standard_sequence(weight(1, 1), commalg.maximal_ideal(A, 0), positive_roots(gcm, 4))
    st_ = build_M(psi, seq, quotient(2), 3)
    with pytest.raises(OrderViolation):
        verify_lemma_l1(st_, (1, 0), [(1, 1)], [0])


def test_relations_are_zero_in_quotient():
    st_ = l1_state()
    B = st_.malg.coeff
    f = lowering_element(st_.malg, (1,), B.image(t * t))
    assert st_.apply(f, st_.vacuum()) == {}


# action axiom --------------------------------------------------------------------

@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_action_axiom_on_W(seed):
    A = commalg.PolyAlgebra(1)
    gcm = validate_gcm(GCMS["A2"])
    psi = evaluation_psi(A, [(0, (1, 0))])
    I = commalg.point_ideal(A, {0: 2})
    W = build_W(psi, I, commalg.quotient_algebra(I), None, gcm=gcm, audit=False)
    rng = random.Random(seed)
    g1, g2 = rng.randrange(W.malg.ngens), rng.randrange(W.malg.ngens)
    etas = [e for e, d in W.dims().items() if d]
    eta = rng.choice(etas)
    w = {k: Fraction(rng.randint(1, 4)) for k in W.keys(eta)}
    assert action_axiom_holds(W, g1, g2, w)
