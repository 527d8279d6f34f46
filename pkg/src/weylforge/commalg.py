"""Cofinite ideals of a polynomial ring over Q and their quotient algebras.

Two presentations are supported.  *Point-supported* ideals are finite
intersections of powers of maximal ideals of rational points,
``I = m_{p_1}^{k_1} cap ... cap m_{p_r}^{k_r}``; every operation below works
for them.  *Generated* ideals (explicit generators plus a degree bound) are
only used to certify cofiniteness and codimension by row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    IncompatibleCoefficients,
    NotCofinite,
    NotCoprime,
    UnsupportedPresentation,
)
from .linalg import EchelonBasis
from .poly import Poly, parse_poly

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PolyAlgebra:
    num_vars: int = 1

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")


def _point(p, n: int) -> Point:
    if isinstance(p, (int, Fraction, str)):
        p = (p,)
    pt = tuple(Fraction(x) for x in p)
    if len(pt) != n:
        raise ValueError(f"point {p} does not have {n} coordinates")
    return pt


@dataclass(frozen=True)
class CofiniteIdeal:
    algebra: PolyAlgebra
    support: tuple[tuple[Point, int], ...] | None = None
    generators: tuple[Poly, ...] | None = None
    truncation_degree: int | None = None

    @property
    def point_supported(self) -> bool:
        return self.support is not None

    @property
    def nvars(self) -> int:
        return self.algebra.num_vars

    def exponents(self) -> dict[Point, int]:
        self._need_points()
        return dict(self.support)

    def exponent(self, point) -> int:
        return self.exponents().get(_point(point, self.nvars), 0)

    @property
    def points(self) -> tuple[Point, ...]:
        self._need_points()
        return tuple(p for p, _ in self.support)

    @property
    def is_unit(self) -> bool:
        return self.point_supported and not self.support

    @property
    def is_radical(self) -> bool:
        return all(k == 1 for _, k in self.exponents().items())

    def _need_points(self):
        if self.support is None:
            raise UnsupportedPresentation("operation needs a point-supported ideal")

    def __repr__(self):
        if self.support is None:
            return f"Ideal({', '.join(map(repr, self.generators))}; D={self.truncation_degree})"
        if not self.support:
            return "Ideal(1)"
        parts = []
        for p, k in self.support:
            pt = ",".join(str(x) for x in p)
            parts.append(f"m[{pt}]" + (f"^{k}" if k != 1 else ""))
        return " ∩ ".join(parts)

    def to_json(self) -> dict:
        if self.support is not None:
            return {
                "nvars": self.nvars,
                "points": [{"coords": [str(x) for x in p], "exp": k} for p, k in self.support],
            }
        return {
            "nvars": self.nvars,
            "generators": [g.to_json() for g in self.generators],
            "truncation_degree": self.truncation_degree,
        }


def point_ideal(algebra: PolyAlgebra | int, exps: Mapping | Iterable) -> CofiniteIdeal:
    """``point_ideal(1, {0: 2, 1: 1})`` is ``(t)^2 cap (t-1)``."""
    if isinstance(algebra, int):
        algebra = PolyAlgebra(algebra)
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[Point, int] = {}
    for p, k in items:
        pt = _point(p, algebra.num_vars)
        if pt in acc:
            raise ValueError(f"duplicate support point {pt}")
        if k < 0:
            raise ValueError("exponents must be non-negative")
        if k:
            acc[pt] = int(k)
    return CofiniteIdeal(algebra, tuple(sorted(acc.items())))


def maximal_ideal(algebra: PolyAlgebra | int, point) -> CofiniteIdeal:
    return point_ideal(algebra, {_point(point, algebra if isinstance(algebra, int) else algebra.num_vars): 1})


def unit_ideal(algebra: PolyAlgebra | int) -> CofiniteIdeal:
    return point_ideal(algebra, {})


def generated_ideal(algebra: PolyAlgebra | int, generators, truncation_degree: int) -> CofiniteIdeal:
    if isinstance(algebra, int):
        algebra = PolyAlgebra(algebra)
    gens = tuple(
        g if isinstance(g, Poly) else parse_poly(g, algebra.num_vars) for g in generators
    )
    return CofiniteIdeal(algebra, None, gens, int(truncation_degree))


def ideal_from_json(payload: Mapping, nvars: int | None = None) -> CofiniteIdeal:
    n = int(payload.get("nvars", nvars or 1))
    if "points" in payload:
        return point_ideal(
            n, [(p["coords"], int(p.get("exp", 1))) for p in payload["points"]]
        )
    if "generators" in payload:
        gens = [
            g if isinstance(g, str) else Poly.from_json(n, g) for g in payload["generators"]
        ]
        return generated_ideal(n, gens, int(payload.get("truncation_degree", 6)))
    raise ValueError("ideal needs 'points' or 'generators'")


def monomials(n: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= max_degree, graded then lex."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))


def _truncated_span(I: CofiniteIdeal, D: int) -> EchelonBasis:
    n = I.nvars
    basis = EchelonBasis()
    for g in I.generators:
        dg = g.degree()
        if dg < 0:
            continue
        for e in monomials(n, D - dg):
            shifted = {
                _col(tuple(a + b for a, b in zip(e, ge))): c for ge, c in g.terms.items()
            }
            basis.add(shifted)
    return basis


def _col(e: tuple[int, ...]):
    # highest degree sorts first so pivots eliminate leading monomials
    return (-sum(e), tuple(-x for x in e))


def _generated_codim(I: CofiniteIdeal, D: int) -> int:
    return comb(I.nvars + D, I.nvars) - _truncated_span(I, D).rank


def codim(I: CofiniteIdeal) -> int:
    if I.point_supported:
        n = I.nvars
        return sum(comb(n + k - 1, n) for _, k in I.support)
    D = I.truncation_degree
    if D is None or D < 1:
        raise NotCofinite("generated ideal needs a truncation degree >= 1")
    hi, lo = _generated_codim(I, D), _generated_codim(I, D - 1)
    if hi != lo:
        raise NotCofinite(
            f"quotient dimension not stable at degree {D} ({lo} at D-1, {hi} at D)"
        )
    return hi


def power(I: CofiniteIdeal, N: int) -> CofiniteIdeal:
    if N < 0:
        raise ValueError("power must be non-negative")
    if I.point_supported:
        return point_ideal(I.algebra, {p: k * N for p, k in I.support})
    if N == 0:
        return unit_ideal(I.algebra)
    gens = [Poly.const(I.nvars, 1)]
    for _ in range(N):
        gens = list({a * b for a in gens for b in I.generators})
    return CofiniteIdeal(I.algebra, None, tuple(gens), I.truncation_degree * N)


def _same_algebra(I, J):
    if I.algebra != J.algebra:
        raise ValueError("ideals live in different algebras")


def _points_only(*ideals):
    for I in ideals:
        if not I.point_supported:
            raise UnsupportedPresentation("operation needs point-supported ideals")


def intersect(I: CofiniteIdeal, J: CofiniteIdeal) -> CofiniteIdeal:
    _points_only(I, J)
    _same_algebra(I, J)
    acc = dict(I.support)
    for p, k in J.support:
        acc[p] = max(acc.get(p, 0), k)
    return point_ideal(I.algebra, acc)


def intersect_all(ideals: Sequence[CofiniteIdeal]) -> CofiniteIdeal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def product(I: CofiniteIdeal, J: CofiniteIdeal) -> CofiniteIdeal:
    _points_only(I, J)
    _same_algebra(I, J)
    acc = dict(I.support)
    for p, k in J.support:
        acc[p] = acc.get(p, 0) + k
    return point_ideal(I.algebra, acc)


def ideal_sum(I: CofiniteIdeal, J: CofiniteIdeal) -> CofiniteIdeal:
    _points_only(I, J)
    _same_algebra(I, J)
    a, b = dict(I.support), dict(J.support)
    return point_ideal(I.algebra, {p: min(k, b[p]) for p, k in a.items() if p in b})


def contains(J: CofiniteIdeal, I: CofiniteIdeal) -> bool:
    """True iff ``I`` is a subset of ``J``."""
    _points_only(I, J)
    a = dict(I.support)
    return all(a.get(p, 0) >= k for p, k in J.support)


def coprime(I: CofiniteIdeal, J: CofiniteIdeal) -> bool:
    _points_only(I, J)
    return not (set(I.points) & set(J.points))


def crt_split(I: CofiniteIdeal) -> list[CofiniteIdeal]:
    _points_only(I)
    return [point_ideal(I.algebra, {p: k}) for p, k in I.support]


def member(f: Poly, I: CofiniteIdeal) -> bool:
    """Membership test by vanishing order at every support point."""
    _points_only(I)
    return all(f.vanishing_order(p) >= k for p, k in I.support)


def _separator(p: Point, q: Point) -> Poly:
    """Affine-linear u with u(p) = 0, u(q) = 1."""
    i = next(i for i, (a, b) in enumerate(zip(p, q)) if a != b)
    return Poly.var(len(p), i, p[i]) * (1 / (q[i] - p[i]))


def _radical_split(I: CofiniteIdeal, J: CofiniteIdeal) -> Poly:
    """f1 vanishing at every point of I and equal to 1 at every point of J."""
    n = I.nvars
    one = Poly.const(n, 1)
    prod = one
    for q in J.points:
        h = one
        for p in I.points:
            h = h * _separator(p, q)
        prod = prod * (one - h)
    return one - prod


def bezout_witness(I: CofiniteIdeal, J: CofiniteIdeal, N: int) -> tuple[Poly, Poly]:
    """Return ``(f, g)`` with ``f in I^N``, ``g in J^N`` and ``f + g = 1``.

    Start from f1 + g1 = 1 with f1, g1 in the radicals, raise to the power
    2S - 1 and split the binomial expansion at S, where S is N times the
    largest support exponent: every term then carries f1^S or g1^S.
    """
    _points_only(I, J)
    _same_algebra(I, J)
    if N < 1:
        raise ValueError("N must be positive")
    if not coprime(I, J):
        raise NotCoprime(f"{I!r} and {J!r} share a support point")
    n = I.nvars
    one = Poly.const(n, 1)
    if I.is_unit:
        return one, Poly(n)
    if J.is_unit:
        return Poly(n), one
    f1 = _radical_split(I, J)
    g1 = one - f1
    S = N * max(k for _, k in I.support + J.support)
    e = 2 * S - 1
    f = Poly(n)
    fp = [one]
    gp = [one]
    for _ in range(e):
        fp.append(fp[-1] * f1)
        gp.append(gp[-1] * g1)
    for i in range(S, e + 1):
        f = f + fp[i] * gp[e - i] * comb(e, i)
    g = one - f
    if not (member(f, power(I, N)) and member(g, power(J, N))):
        raise AssertionError("Bezout witness failed its membership check")
    return f, g


@dataclass
class QuotientAlgebra:
    """A = Q[x]/I for a cofinite ideal I, with exact structure constants.

    For point-supported I the basis is ``e_p * (x - p)^a`` with ``e_p`` the
    CRT idempotent of point p and ``|a| < k_p``; products of basis elements
    are then again basis elements or zero.  ``one`` is the coefficient
    vector of 1 (``one_index`` is its basis index when 1 is itself a basis
    element, i.e. for a single support point).
    """

    ideal: CofiniteIdeal
    labels: list
    basis: list[Poly]
    mult: dict[tuple[int, int], dict[int, Fraction]]
    one: dict[int, Fraction]
    one_index: int | None = None
    _position: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def mul(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mult.get((i, j), {}).items():
                    x = out.get(k, 0) + a * b * c
                    if x:
                        out[k] = x
                    else:
                        out.pop(k, None)
        return out

    def structure_constants(self) -> list[list[list[Fraction]]]:
        d = self.dim
        return [
            [[self.mult.get((i, j), {}).get(k, Fraction(0)) for k in range(d)] for j in range(d)]
            for i in range(d)
        ]

    def image(self, f: Poly) -> dict[int, Fraction]:
        """Coordinates of the coset f + I."""
        if self.ideal.point_supported:
            out = {}
            for p, _ in self.ideal.support:
                jet = f.shift(p)
                for e, c in jet.terms.items():
                    idx = self._position.get((p, e))
                    if idx is not None:
                        out[idx] = c
            return out
        return self._normal_form(f)

    def evaluate(self, u: Mapping[int, Fraction], point) -> Fraction:
        """Value at a support point (well defined because I lies in m_point)."""
        self.ideal._need_points()
        pt = _point(point, self.ideal.nvars)
        idx = self._position.get((pt, (0,) * self.ideal.nvars))
        if idx is None:
            raise IncompatibleCoefficients(f"point {pt} is not in the support of {self.ideal!r}")
        return Fraction(u.get(idx, 0))

    def basis_value(self, i: int, point) -> Fraction:
        return self.evaluate({i: Fraction(1)}, point)

    def ideal_image(self, J: CofiniteIdeal) -> list[int]:
        """Basis indices spanning (J + I)/I; requires I to lie inside J."""
        if not contains(J, self.ideal):
            raise IncompatibleCoefficients(f"{J!r} does not contain {self.ideal!r}")
        exps = dict(J.support)
        return [
            i for i, (p, e) in enumerate(self.labels) if sum(e) >= exps.get(p, 0)
        ]

    def _normal_form(self, f: Poly) -> dict[int, Fraction]:
        span, D = self._span
        if f.degree() > D:
            raise NotCofinite(f"degree {f.degree()} exceeds truncation degree {D}")
        r = span.reduce({_col(e): c for e, c in f.terms.items()})
        return {self._position[k]: c for k, c in r.items()}

    def check_axioms(self) -> None:
        d = self.dim
        for i in range(d):
            ei = {i: Fraction(1)}
            if self.mul(self.one, ei) != ei:
                raise AssertionError("unit law fails")
            for j in range(d):
                if self.mult.get((i, j), {}) != self.mult.get((j, i), {}):
                    raise AssertionError("multiplication not commutative")
                for k in range(d):
                    left = self.mul(self.mult.get((i, j), {}), {k: Fraction(1)})
                    right = self.mul({i: Fraction(1)}, self.mult.get((j, k), {}))
                    if left != right:
                        raise AssertionError("multiplication not associative")


def _idempotents(I: CofiniteIdeal) -> dict[Point, Poly]:
    n = I.nvars
    if len(I.support) == 1:
        return {I.support[0][0]: Poly.const(n, 1)}
    out = {}
    for p, k in I.support:
        rest = point_ideal(I.algebra, [(q, j) for q, j in I.support if q != p])
        f, _ = bezout_witness(rest, point_ideal(I.algebra, {p: k}), 1)
        out[p] = f
    return out


def quotient_algebra(I: CofiniteIdeal, verify: bool = True) -> QuotientAlgebra:
    n = I.nvars
    if not I.point_supported:
        return _generated_quotient(I, verify)
    idem = _idempotents(I) if I.support else {}
    labels, basis = [], []
    for p, k in I.support:
        for e in monomials(n, k - 1):
            mono = Poly.const(n, 1)
            for i, a in enumerate(e):
                if a:
                    mono = mono * Poly.var(n, i, p[i]) ** a
            labels.append((p, e))
            basis.append(idem[p] * mono)
    pos = {lab: i for i, lab in enumerate(labels)}
    kmap = dict(I.support)
    mult: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, (p, a) in enumerate(labels):
        for j, (q, b) in enumerate(labels):
            if p != q:
                continue
            e = tuple(x + y for x, y in zip(a, b))
            if sum(e) < kmap[p]:
                mult[(i, j)] = {pos[(p, e)]: Fraction(1)}
    zero = (0,) * n
    one = {pos[(p, zero)]: Fraction(1) for p, _ in I.support}
    one_index = next(iter(one)) if len(one) == 1 else None
    Q = QuotientAlgebra(I, labels, basis, mult, one, one_index, pos)
    if verify:
        Q.check_axioms()
    return Q


def _generated_quotient(I: CofiniteIdeal, verify: bool) -> QuotientAlgebra:
    d = codim(I)
    D = I.truncation_degree
    span = _truncated_span(I, D)
    n = I.nvars
    standard = [e for e in monomials(n, D) if _col(e) not in span.pivots]
    if len(standard) != d:
        raise NotCofinite("standard monomials disagree with the codimension")
    if 2 * max(sum(e) for e in standard) > D:
        raise NotCofinite("truncation degree too small to multiply coset representatives")
    labels = [(None, e) for e in standard]
    basis = [Poly(n, {e: 1}) for e in standard]
    pos = {_col(e): i for i, e in enumerate(standard)}
    Q = QuotientAlgebra(I, labels, basis, {}, {}, None, pos)
    Q._span = (span, D)
    for i, a in enumerate(standard):
        for j, b in enumerate(standard):
            e = tuple(x + y for x, y in zip(a, b))
            nf = Q._normal_form(Poly(n, {e: 1}))
            if nf:
                Q.mult[(i, j)] = nf
    Q.one = Q._normal_form(Poly.const(n, 1))
    Q.one_index = next(iter(Q.one)) if len(Q.one) == 1 and list(Q.one.values()) == [1] else None
    if verify:
        Q.check_axioms()
    return Q
