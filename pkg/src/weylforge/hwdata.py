"""Weights, evaluation functionals psi and sequences of cofinite ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import commalg
from .commalg import CofiniteIdeal, PolyAlgebra, QuotientAlgebra
from .errors import NotCoprime, NotDominant, SharedPoint
from .rootsys import RootSystemTable, RootVector, root_leq


@dataclass(frozen=True)
class Weight:
    coroot_values: tuple[int, ...]
    hpp_values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coroot_values", tuple(int(x) for x in self.coroot_values))
        object.__setattr__(self, "hpp_values", tuple(Fraction(x) for x in self.hpp_values))

    @property
    def rank(self) -> int:
        return len(self.coroot_values)

    @property
    def dominant(self) -> bool:
        return all(x >= 0 for x in self.coroot_values)

    def __add__(self, other: "Weight") -> "Weight":
        if self.rank != other.rank:
            raise ValueError("weights of different rank")
        hpp = _add_padded(self.hpp_values, other.hpp_values)
        return Weight(tuple(a + b for a, b in zip(self.coroot_values, other.coroot_values)), hpp)

    def __getitem__(self, i: int) -> int:
        return self.coroot_values[i]

    def to_json(self) -> list[int]:
        return list(self.coroot_values)


def _add_padded(a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (Fraction(0),) * (n - len(a))
    b = tuple(b) + (Fraction(0),) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def weight(*values) -> Weight:
    if len(values) == 1 and isinstance(values[0], (list, tuple)):
        values = values[0]
    return Weight(tuple(values))


def n_lambda_alpha(lam: Weight, alpha: RootVector | Sequence[int]) -> int:
    coords = alpha.coords if isinstance(alpha, RootVector) else tuple(alpha)
    if not lam.dominant:
        raise NotDominant(f"{lam.coroot_values} is not dominant")
    if len(coords) != lam.rank:
        raise ValueError("weight and root have different rank")
    return sum(m * v for m, v in zip(coords, lam.coroot_values))


@dataclass(frozen=True)
class Psi:
    """A functional on h' (x) A of evaluation form.

    ``psi(h_i (x) a) = sum_j a(p_j) * lambda_j(h_i)`` over the evaluation
    data ``(p_j, lambda_j)``; ``annihilating_ideal`` is an ideal I with
    psi vanishing on h' (x) I.
    """

    weight: Weight
    evaluation_data: tuple[tuple[tuple[Fraction, ...], Weight], ...]
    annihilating_ideal: CofiniteIdeal

    @property
    def points(self):
        return tuple(p for p, _ in self.evaluation_data)

    def value(self, i: int, Q: QuotientAlgebra, b: Mapping[int, Fraction]) -> Fraction:
        """psi(h_i (x) b) for an element b of a quotient algebra."""
        total = Fraction(0)
        for p, lam in self.evaluation_data:
            c = lam.coroot_values[i]
            if c:
                total += c * Q.evaluate(b, p)
        return total

    def value_poly(self, i: int, f) -> Fraction:
        return sum(
            (lam.coroot_values[i] * f(p) for p, lam in self.evaluation_data), Fraction(0)
        )

    def to_json(self) -> dict:
        return {
            "lambda": self.weight.to_json(),
            "psi": [
                {"point": [str(x) for x in p], "weight": lam.to_json()}
                for p, lam in self.evaluation_data
            ],
            "ideal": self.annihilating_ideal.to_json(),
        }


def evaluation_psi(
    algebra: PolyAlgebra | int,
    data: Sequence[tuple[object, Weight | Sequence[int]]],
    ideal: CofiniteIdeal | None = None,
) -> Psi:
    """psi from ``[(point, weight), ...]``; the ideal defaults to the
    intersection of the maximal ideals of the points."""
    if isinstance(algebra, int):
        algebra = PolyAlgebra(algebra)
    entries = []
    for p, lam in data:
        pt = commalg._point(p, algebra.num_vars)
        lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
        entries.append((pt, lam))
    pts = [p for p, _ in entries]
    if len(set(pts)) != len(pts):
        raise SharedPoint("evaluation points must be distinct")
    if not entries:
        raise ValueError("evaluation data must be non-empty; use zero_psi for the zero functional")
    total = entries[0][1]
    for _, lam in entries[1:]:
        total = total + lam
    if ideal is None:
        ideal = commalg.point_ideal(algebra, {p: 1 for p in pts})
    return Psi(total, tuple(sorted(entries)), ideal)


def zero_psi(algebra: PolyAlgebra | int, rank: int) -> Psi:
    if isinstance(algebra, int):
        algebra = PolyAlgebra(algebra)
    return Psi(Weight((0,) * rank), (), commalg.unit_ideal(algebra))


def psi_consistency(psi: Psi) -> bool:
    I = psi.annihilating_ideal
    return all(commalg.contains(commalg.maximal_ideal(I.algebra, p), I) for p in psi.points)


def psi_add(psi1: Psi, psi2: Psi) -> Psi:
    if set(psi1.points) & set(psi2.points):
        raise SharedPoint("summands share an evaluation point")
    return Psi(
        psi1.weight + psi2.weight,
        tuple(sorted(psi1.evaluation_data + psi2.evaluation_data)),
        commalg.intersect(psi1.annihilating_ideal, psi2.annihilating_ideal),
    )


@dataclass(frozen=True)
class IdealSequence:
    table: RootSystemTable
    entries: dict
    envelope: CofiniteIdeal
    # roots whose entry came from a zero exponent (I^0 = A); the envelope
    # containment does not apply to them
    exempt: frozenset = field(default=frozenset())

    def __getitem__(self, alpha) -> CofiniteIdeal:
        key = alpha.coords if isinstance(alpha, RootVector) else tuple(alpha)
        return self.entries[key]

    def codims(self) -> dict:
        return {k: commalg.codim(v) for k, v in self.entries.items()}

    def to_json(self) -> list[dict]:
        return [
            {"root": list(r.coords), "ideal": self.entries[r.coords].to_json(),
             "codim": commalg.codim(self.entries[r.coords])}
            for r in self.table.roots
        ]


def standard_sequence(lam: Weight, I: CofiniteIdeal, table: RootSystemTable) -> IdealSequence:
    entries, exempt = {}, set()
    for r in table.roots:
        N = n_lambda_alpha(lam, r)
        entries[r.coords] = commalg.power(I, N)
        if N == 0:
            exempt.add(r.coords)
    return IdealSequence(table, entries, I, frozenset(exempt))


def k_sequence(lam: Weight, I: CofiniteIdeal, mu: Weight, J: CofiniteIdeal,
               table: RootSystemTable) -> IdealSequence:
    if not commalg.coprime(I, J):
        raise NotCoprime(f"{I!r} and {J!r} are not coprime")
    entries, exempt = {}, set()
    for r in table.roots:
        a, b = n_lambda_alpha(lam, r), n_lambda_alpha(mu, r)
        entries[r.coords] = commalg.intersect(commalg.power(I, a), commalg.power(J, b))
        if a == 0 or b == 0:
            exempt.add(r.coords)
    return IdealSequence(table, entries, commalg.intersect(I, J), frozenset(exempt))


@dataclass
class SequenceReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_sequence(seq: IdealSequence) -> SequenceReport:
    fails = []
    roots = seq.table.roots
    for a in roots:
        Ia = seq.entries[a.coords]
        if a.coords not in seq.exempt and not commalg.contains(seq.envelope, Ia):
            fails.append(("envelope", a.coords, None))
        for b in roots:
            Ib = seq.entries[b.coords]
            if a != b and root_leq(a, b) and not commalg.contains(Ia, Ib):
                fails.append(("monotone", a.coords, b.coords))
            s = a + b
            if seq.table.is_root(s):
                if not commalg.contains(seq.entries[s], commalg.product(Ia, Ib)):
                    fails.append(("multiplicative", a.coords, b.coords))
    return SequenceReport(not fails, fails)
