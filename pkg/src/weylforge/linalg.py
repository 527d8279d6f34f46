"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{column_key: Fraction}`` with no zero entries.  Column
keys only need to be hashable and mutually orderable; the pivot of a new
row is its smallest column key, which keeps every result deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from . import kernels

Vector = dict


def add_scaled(target: dict, source: Mapping, scale) -> None:
    """``target += scale * source`` in place, dropping zeros."""
    kernels.axpy(target, source, scale)


def scaled(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


class EchelonBasis:
    """Incrementally maintained reduced row echelon form.

    Every stored row has coefficient 1 at its pivot and no other stored
    row has a non-zero entry in that column, so :meth:`reduce` is a single
    pass over the vector's pivot columns.
    """

    def __init__(self):
        self.rows: dict[Hashable, dict] = {}
        self._holders: dict[Hashable, set] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set:
        return set(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        return kernels.reduce_vector(self.rows, vec)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r)
        inv = 1 / Fraction(r[pivot])
        if inv != 1:
            r = {k: x * inv for k, x in r.items()}
        for other in list(self._holders.get(pivot, ())):
            row = self.rows[other]
            c = row[pivot]
            kernels.axpy(row, r, -c)
            for k in r:
                if k in row:
                    self._holders.setdefault(k, set()).add(other)
                else:
                    s = self._holders.get(k)
                    if s is not None:
                        s.discard(other)
        self._holders.pop(pivot, None)
        self.rows[pivot] = r
        for k in r:
            if k != pivot:
                self._holders.setdefault(k, set()).add(pivot)
        return True

    def extend(self, vecs: Iterable[Mapping]) -> int:
        return sum(1 for v in vecs if self.add(v))


def rank(vectors: Iterable[Mapping]) -> int:
    e = EchelonBasis()
    e.extend(vectors)
    return e.rank


def nullspace(images: list[Mapping]) -> list[dict]:
    """Basis of ``{c : sum_k c_k images[k] = 0}`` as dicts ``{k: coeff}``."""
    e = EchelonBasis()
    for k, img in enumerate(images):
        row = {(0, col): x for col, x in img.items()}
        row[(1, k)] = Fraction(1)
        e.add(row)
    out = []
    for pivot, row in sorted(e.rows.items()):
        if pivot[0] == 1:
            out.append({key[1]: x for key, x in row.items()})
    return out
