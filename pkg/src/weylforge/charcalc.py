"""Truncated formal characters on Q_+ and the product formula for K_eta.

A character is stored as ``{eta: coefficient}`` over coordinate tuples of
height at most H, standing for ``sum K_eta e^{-eta}`` relative to a base
weight.  Products drop every term above H as soon as it appears.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from . import commalg, kernels
from .errors import NotCoprime, TableMismatch
from .hwdata import (
    IdealSequence,
    Psi,
    Weight,
    k_sequence,
    psi_consistency,
    standard_sequence,
    validate_sequence,
)
from .rootsys import RootSystemTable, RootVector

Coords = tuple[int, ...]


@dataclass
class FormalCharacter:
    table: RootSystemTable
    height_bound: int
    base_weight: Weight | None
    coeffs: dict[Coords, int] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.table.rank

    def __getitem__(self, eta) -> int:
        return self.coeffs.get(tuple(eta), 0)

    def __eq__(self, other):
        return (
            isinstance(other, FormalCharacter)
            and self.height_bound == other.height_bound
            and self.coeffs == other.coeffs
        )

    def restrict(self, H: int) -> "FormalCharacter":
        return FormalCharacter(
            self.table, H, self.base_weight,
            {k: v for k, v in self.coeffs.items() if sum(k) <= H},
        )

    def rows(self) -> list[tuple[Coords, int, int]]:
        return [
            (eta, sum(eta), v)
            for eta, v in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]

    def to_json(self) -> dict:
        return {
            "base_weight": self.base_weight.to_json() if self.base_weight else None,
            "height_bound": self.height_bound,
            "table": [{"eta": list(e), "height": h, "value": v} for e, h, v in self.rows()],
        }

    def to_csv(self) -> str:
        return table_csv(self.rows())


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eta_coords", "height", "value"])
    for eta, h, v in rows:
        w.writerow([";".join(map(str, eta)), h, v])
    return buf.getvalue()


def _pack(coeffs: Mapping[Coords, int], radix: int) -> dict[int, int]:
    out = {}
    for eta, v in coeffs.items():
        key = 0
        for c in reversed(eta):
            key = key * radix + c
        out[key] = v
    return out


def _unpack(packed: Mapping[int, int], radix: int, rank: int) -> dict[Coords, int]:
    out = {}
    for key, v in packed.items():
        digits = []
        for _ in range(rank):
            key, d = divmod(key, radix)
            digits.append(d)
        out[tuple(digits)] = v
    return out


def unit_character(table: RootSystemTable, H: int, base: Weight | None = None) -> FormalCharacter:
    return FormalCharacter(table, H, base, {(0,) * table.rank: 1})


def geometric_factor(alpha: RootVector, c: int, H: int, table: RootSystemTable | None = None) -> FormalCharacter:
    """Expansion of (1 - e^{-alpha})^{-c}: coefficient C(j+c-1, c-1) at j*alpha."""
    if c < 0:
        raise ValueError("exponent must be non-negative")
    rank = len(alpha.coords)
    coeffs = {(0,) * rank: 1}
    if c > 0:
        j = 1
        while j * alpha.height <= H:
            coeffs[tuple(j * x for x in alpha.coords)] = comb(j + c - 1, c - 1)
            j += 1
    return FormalCharacter(table, H, None, coeffs)


def multiply(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    if a.height_bound != b.height_bound:
        raise TableMismatch("characters truncated at different heights")
    if a.table is not None and b.table is not None and a.table.gcm != b.table.gcm:
        raise TableMismatch("characters over different root systems")
    H = a.height_bound
    rank = len(next(iter(a.coeffs))) if a.coeffs else len(next(iter(b.coeffs), ()))
    radix = H + 1
    prod = kernels.series_mul(_pack(a.coeffs, radix), _pack(b.coeffs, radix), radix, H)
    if a.base_weight is not None and b.base_weight is not None:
        base = a.base_weight + b.base_weight
    else:
        base = a.base_weight or b.base_weight
    return FormalCharacter(a.table or b.table, H, base, _unpack(prod, radix, rank))


def _check_bound(table: RootSystemTable, H: int):
    if not table.gcm.is_finite and H > table.height_bound:
        raise TableMismatch(f"affine table only reaches height {table.height_bound} < {H}")


def product_formula(table: RootSystemTable, exponents: Mapping[Coords, int], H: int,
                    base: Weight | None = None) -> FormalCharacter:
    """prod over roots of (1 - e^{-alpha})^{-exponents[alpha] * l_alpha}, in increasing height."""
    _check_bound(table, H)
    out = unit_character(table, H, base)
    for r in table.roots:
        if r.height > H:
            break
        c = exponents.get(r.coords, 0) * r.multiplicity
        if c:
            f = geometric_factor(r, c, H, table)
            f.table = table
            out = multiply(out, f)
    out.base_weight = base
    return out


def character_of_M(psi: Psi | Weight, seq: IdealSequence, H: int) -> FormalCharacter:
    report = validate_sequence(seq)
    if not report:
        raise ValueError(f"ideal sequence violates its conditions: {report.failures[:3]}")
    if isinstance(psi, Psi):
        if psi.evaluation_data and not psi_consistency(psi):
            raise ValueError("psi does not vanish on h' (x) I")
        base = psi.weight
    else:
        base = psi
    exps = {r.coords: commalg.codim(seq[r]) for r in seq.table.roots if r.height <= H}
    return product_formula(seq.table, exps, H, base)


@dataclass
class DimensionReport:
    ok: bool
    codims: list = field(default_factory=list)
    left: FormalCharacter | None = None
    right: FormalCharacter | None = None
    discrepancy: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "codims": self.codims,
            "tables": {
                "M": self.left.to_json()["table"] if self.left else None,
                "M1xM2": self.right.to_json()["table"] if self.right else None,
            },
            "discrepancy": self.discrepancy,
        }


def verify_T1_dimensions(lam: Weight, I, mu: Weight, J, table: RootSystemTable, H: int,
                         seq_override: IdealSequence | None = None) -> DimensionReport:
    """Dimension half of the tensor decomposition for M(psi, {K_alpha}).

    ``seq_override`` replaces the K-sequence (used for seeded negative
    controls only).
    """
    if not commalg.coprime(I, J):
        raise NotCoprime(f"{I!r} and {J!r} are not coprime")
    std1 = standard_sequence(lam, I, table)
    std2 = standard_sequence(mu, J, table)
    kseq = seq_override or k_sequence(lam, I, mu, J, table)
    codims = []
    for r in table.roots:
        if r.height > H:
            continue
        m, n, k = commalg.codim(std1[r]), commalg.codim(std2[r]), commalg.codim(kseq[r])
        codims.append({"root": list(r.coords), "m": m, "n": n, "k": k})
        if m + n != k:
            return DimensionReport(False, codims, discrepancy={
                "kind": "codim", "root": list(r.coords), "m+n": m + n, "k": k})
    exps = {r.coords: commalg.codim(kseq[r]) for r in table.roots if r.height <= H}
    left = product_formula(table, exps, H, lam + mu)
    right = multiply(character_of_M(lam, std1, H), character_of_M(mu, std2, H))
    for eta in sorted(set(left.coeffs) | set(right.coeffs), key=lambda e: (sum(e), e)):
        if left[eta] != right[eta]:
            return DimensionReport(False, codims, left, right, {
                "kind": "character", "eta": list(eta), "M": left[eta], "M1xM2": right[eta]})
    return DimensionReport(True, codims, left, right)


def dumps_character(ch: FormalCharacter, fmt: str = "json") -> str:
    if fmt == "csv":
        return ch.to_csv()
    return json.dumps(ch.to_json(), indent=2, sort_keys=True) + "\n"
