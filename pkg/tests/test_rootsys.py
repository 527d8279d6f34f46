
import pytest
from hypothesis import given, settings, strategies as st

from weylforge.errors import IndexOutOfRange, NonCartan, TypeMismatch
from weylforge.rootsys import (
    classify,
    coroot_pairing,
    finite_part,
    positive_roots,
    root_leq,
    validate_gcm,
)

from conftest import GCMS


def string_oracle(A):
    """Positive roots by alpha-strings: beta + alpha_i is a root iff p - q > 0
    where p, q bound the alpha_i-string through beta."""
    l = len(A)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(l):
                # q: how far down the string goes
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                pairing = sum(beta[j] * A[i][j] for j in range(l))
                if q - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return roots


@pytest.mark.parametrize("name,count", [
    ("A1", 1), ("A2", 3), ("B2", 4), ("C2", 4), ("G2", 6), ("A3", 6), ("B3", 9), ("C3", 9),
])
def test_root_counts(name, count):
    table = positive_roots(validate_gcm(GCMS[name]), 50)
    assert len(table) == count
    assert {r.coords for r in table} == string_oracle(GCMS[name])


def test_g2_highest_root():
    table = positive_roots(validate_gcm(GCMS["G2"]), 10)
    assert table.highest.coords == (3, 2)
    assert table.highest.height == 5


def test_height_truncation():
    table = positive_roots(validate_gcm(GCMS["G2"]), 3)
    assert all(r.height <= 3 for r in table)
    assert len(table) == 4


def test_classify():
    assert classify([[2, -1], [-1, 2]]) == "finite"
    assert classify([[2, -2], [-2, 2]]) == "affine-untwisted"
    assert classify([[2, -3], [-3, 2]]) is None


@pytest.mark.parametrize("bad", [
    [[2, 1], [-1, 2]],
    [[2, -1], [0, 2]],
    [[3]],
    [[2, -1]],
    [[2, 0.5], [-1, 2]],
])
def test_non_cartan(bad):
    with pytest.raises(NonCartan):
        validate_gcm(bad)


def test_type_mismatch():
    with pytest.raises(TypeMismatch):
        validate_gcm([[2, -1, 0], [-2, 2, -1], [0, -1, 2]], "affine-untwisted")
    with pytest.raises(TypeMismatch):
        validate_gcm([[2, -2], [-2, 2]], "finite")


def test_affine_a1_table():
    table = positive_roots(validate_gcm([[2, -2], [-2, 2]], "affine"), 4)
    mults = {r.coords: r.multiplicity for r in table}
    assert table.delta == (1, 1)
    assert mults[(1, 1)] == 1 and mults[(2, 2)] == 1
    assert set(mults) == {(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)}
    assert not table.is_real(table.get((1, 1)))


def test_affine_a2_imaginary_multiplicity():
    A = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    table = positive_roots(validate_gcm(A, "affine"), 6)
    assert table.get((1, 1, 1)).multiplicity == 2
    assert table.get((2, 2, 2)).multiplicity == 2
    assert len(finite_part(table)) == 3


def test_coroot_pairing():
    assert coroot_pairing((3, 1), 1) == 3
    with pytest.raises(IndexOutOfRange):
        coroot_pairing((3, 1), 3)
    with pytest.raises(IndexOutOfRange):
        coroot_pairing((3, 1), 0)


rank2 = st.sampled_from(["A2", "B2", "C2", "G2"])


@given(rank2)
def test_roots_closed_under_reflections(name):
    A = GCMS[name]
    table = positive_roots(validate_gcm(A), 50)
    coords = {r.coords for r in table}
    for r in table:
        for i in range(2):
            if r.coords == tuple(int(i == j) for j in range(2)):
                continue
            p = sum(r.coords[j] * A[i][j] for j in range(2))
            s = list(r.coords)
            s[i] -= p
            assert tuple(s) in coords


@given(st.sampled_from(list(GCMS)), st.integers(1, 8))
@settings(max_examples=30)
def test_truncation_is_prefix(name, H):
    full = positive_roots(validate_gcm(GCMS[name]), 50)
    part = positive_roots(validate_gcm(GCMS[name]), H)
    assert [r.coords for r in part] == [r.coords for r in full if r.height <= H]
    assert list(part.roots) == sorted(part.roots)


def test_root_leq():
    assert root_leq((1, 0), (1, 1))
    assert not root_leq((0, 2), (1, 1))


def test_json_roundtrip(gcm):
    g = gcm("B2")
    assert validate_gcm(g.to_json()["cartan_matrix"]) == g
