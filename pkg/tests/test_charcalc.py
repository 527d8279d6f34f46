from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from weylforge import commalg
from weylforge.charcalc import (
    FormalCharacter,
    character_of_M,
    geometric_factor,
    multiply,
    product_formula,
    verify_T1_dimensions,
)
from weylforge.errors import TableMismatch
from weylforge.hwdata import standard_sequence, weight
from weylforge.rootsys import positive_roots, validate_gcm

from conftest import GCMS


def partition_count(parts, eta):
    """Number of ways to write eta as a sum of coloured parts (with repetition)."""
    parts = tuple(parts)

    @lru_cache(maxsize=None)
    def count(rest, start):
        if not any(rest):
            return 1
        total = 0
        for j in range(start, len(parts)):
            p = parts[j]
            nxt = tuple(a - b for a, b in zip(rest, p))
            if all(x >= 0 for x in nxt):
                total += count(nxt, j)
        return total

    return count(tuple(eta), 0)


def coloured_parts(table, exps):
    out = []
    for r in table:
        out.extend([r.coords] * (exps.get(r.coords, 0) * r.multiplicity))
    return out


def all_etas(rank, H):
    from weylforge.modeng import compositions
    return [e for h in range(H + 1) for e in compositions(h, rank)]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_kostant_oracle(name, A):
    table = positive_roots(validate_gcm(GCMS[name]), 6)
    lam = weight(*([1] * table.rank))
    seq = standard_sequence(lam, commalg.point_ideal(A, {0: 1}), table)
    ch = character_of_M(lam, seq, 6)
    parts = coloured_parts(table, seq.codims())
    for eta in all_etas(table.rank, 6):
        assert ch[eta] == partition_count(parts, eta)


def test_affine_oracle(A):
    table = positive_roots(validate_gcm([[2, -2], [-2, 2]], "affine"), 6)
    exps = {r.coords: 1 for r in table}
    ch = product_formula(table, exps, 6)
    parts = coloured_parts(table, exps)
    for eta in all_etas(2, 6):
        assert ch[eta] == partition_count(parts, eta)
    assert ch[(1, 1)] == 2


def test_a2_example():
    table = positive_roots(validate_gcm(GCMS["A2"]), 4)
    ch = product_formula(table, {r.coords: 1 for r in table}, 4)
    assert ch[(1, 1)] == 2
    # 2a1+2a2, a1+a2+theta, 2theta
    assert ch[(2, 2)] == 3


def test_sl2_coefficients(A):
    table = positive_roots(validate_gcm([[2]]), 8)
    seq = standard_sequence(weight(2), commalg.maximal_ideal(A, 0), table)
    ch = character_of_M(weight(2), seq, 8)
    assert [ch[(k,)] for k in range(9)] == list(range(1, 10))


def test_geometric_factor():
    table = positive_roots(validate_gcm(GCMS["A2"]), 6)
    f = geometric_factor(table.get((1, 1)), 3, 6)
    # (1 - x)^-3 = sum C(j + 2, 2) x^j
    assert [f[(j, j)] for j in range(4)] == [1, 3, 6, 10]


def test_multiply_mismatch():
    table = positive_roots(validate_gcm(GCMS["A2"]), 6)
    a = FormalCharacter(table, 3, None, {(0, 0): 1})
    b = FormalCharacter(table, 4, None, {(0, 0): 1})
    with pytest.raises(TableMismatch):
        multiply(a, b)


def test_affine_bound_check():
    table = positive_roots(validate_gcm([[2, -2], [-2, 2]], "affine"), 3)
    with pytest.raises(TableMismatch):
        product_formula(table, {}, 5)


def test_csv():
    table = positive_roots(validate_gcm(GCMS["A2"]), 2)
    ch = product_formula(table, {r.coords: 1 for r in table}, 2)
    lines = ch.to_csv().splitlines()
    assert lines[0] == "eta_coords,height,value"
    assert lines[1] == "0;0,0,1"
    assert lines[-1] == "2;0,2,1"


@given(st.sampled_from(["A1", "A2", "B2"]), st.data())
@settings(max_examples=25, deadline=None)
def test_T1_dimensions_property(name, data):
    A = commalg.PolyAlgebra(1)
    table = positive_roots(validate_gcm(GCMS[name]), 6)
    lam = weight(*[data.draw(st.integers(0, 2)) for _ in range(table.rank)])
    mu = weight(*[data.draw(st.integers(0, 2)) for _ in range(table.rank)])
    I = commalg.point_ideal(A, {0: data.draw(st.integers(1, 2))})
    J = commalg.point_ideal(A, {3: data.draw(st.integers(1, 2))})
    assert verify_T1_dimensions(lam, I, mu, J, table, 5)


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=6),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=6),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=6))
@settings(max_examples=50, deadline=None)
def test_multiply_associative_commutative(a, b, c):
    H = 5
    mk = lambda d: FormalCharacter(None, H, None, {k: v for k, v in d.items() if v and sum(k) <= H} or {(0, 0): 0})
    x, y, z = mk(a), mk(b), mk(c)
    assert multiply(x, y).coeffs == multiply(y, x).coeffs
    assert multiply(multiply(x, y), z).coeffs == multiply(x, multiply(y, z)).coeffs
