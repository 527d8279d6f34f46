"""Generalized Cartan matrices and positive roots with multiplicities.

Roots live in simple-root coordinates: ``(n_1, ..., n_l)`` stands for
``sum n_i alpha_i``.  Only finite and untwisted affine types are handled;
for those the multiplicities are known in closed form (1 on real roots,
the rank of the underlying finite algebra on multiples of delta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import IndexOutOfRange, NonCartan, TypeMismatch, UnsupportedType

FINITE = "finite"
AFFINE = "affine-untwisted"
_TYPE_ALIASES = {
    "finite": FINITE,
    "affine": AFFINE,
    "affine-untwisted": AFFINE,
    "affine_untwisted": AFFINE,
    "untwisted-affine": AFFINE,
}

Coords = tuple[int, ...]


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _minor(entries, idx) -> Fraction:
    return _det([[entries[i][j] for j in idx] for i in idx])


def classify(entries: Sequence[Sequence[int]]) -> str | None:
    """Return FINITE, AFFINE or None from the principal-minor test."""
    l = len(entries)
    proper = [
        _minor(entries, idx)
        for k in range(1, l)
        for idx in combinations(range(l), k)
    ]
    full = _det(entries)
    if all(m > 0 for m in proper):
        if full > 0:
            return FINITE
        if full == 0:
            return AFFINE
    return None


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    entries: tuple[tuple[int, ...], ...]
    declared_type: str

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def is_finite(self) -> bool:
        return self.declared_type == FINITE

    def pairing(self, coords: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee> for beta given in simple-root coordinates."""
        return sum(c * self.entries[i][j] for j, c in enumerate(coords))

    def to_json(self) -> dict:
        return {"cartan_matrix": [list(r) for r in self.entries], "type": self.declared_type}


def validate_gcm(entries, declared_type: str = FINITE) -> GeneralizedCartanMatrix:
    rows = [list(r) for r in entries]
    l = len(rows)
    if l == 0 or any(len(r) != l for r in rows):
        raise NonCartan("Cartan matrix must be a non-empty square matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise NonCartan(f"non-integer entry {x!r}")
    rows = [[int(x) for x in r] for r in rows]
    for i in range(l):
        if rows[i][i] != 2:
            raise NonCartan(f"diagonal entry ({i},{i}) is {rows[i][i]}, expected 2")
        for j in range(l):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NonCartan(f"positive off-diagonal entry at ({i},{j})")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise NonCartan(f"zero pattern not symmetric at ({i},{j})")
    kind = _TYPE_ALIASES.get(str(declared_type).lower())
    if kind is None:
        raise TypeMismatch(f"unknown type tag {declared_type!r}")
    if l <= 8:
        found = classify(rows)
        if found != kind:
            raise TypeMismatch(f"declared {kind} but principal minors give {found or 'indefinite'}")
    return GeneralizedCartanMatrix(tuple(tuple(r) for r in rows), kind)


@dataclass(frozen=True, order=True)
class RootVector:
    height: int
    coords: Coords
    multiplicity: int = field(default=1, compare=False)

    def __add__(self, other: "RootVector") -> Coords:
        return tuple(a + b for a, b in zip(self.coords, other.coords))

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "height": self.height, "mult": self.multiplicity}


def root_leq(alpha: RootVector | Coords, beta: RootVector | Coords) -> bool:
    a = alpha.coords if isinstance(alpha, RootVector) else alpha
    b = beta.coords if isinstance(beta, RootVector) else beta
    return all(y >= x for x, y in zip(a, b))


def coroot_pairing(weight, i: int) -> int:
    """Stored value lambda(alpha_i^vee); ``i`` is 1-based."""
    values = getattr(weight, "coroot_values", weight)
    if not 1 <= i <= len(values):
        raise IndexOutOfRange(f"simple index {i} outside 1..{len(values)}")
    return values[i - 1]


@dataclass(frozen=True)
class RootSystemTable:
    gcm: GeneralizedCartanMatrix
    height_bound: int
    roots: tuple[RootVector, ...]
    imaginary: frozenset = frozenset()
    delta: Coords | None = None

    def __post_init__(self):
        object.__setattr__(self, "_index", {r.coords: r for r in self.roots})

    @property
    def rank(self) -> int:
        return self.gcm.rank

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def get(self, coords) -> RootVector | None:
        return self._index.get(tuple(coords))

    def is_root(self, coords) -> bool:
        return tuple(coords) in self._index

    def is_real(self, root: RootVector) -> bool:
        return root.coords not in self.imaginary

    def simple(self, i: int) -> RootVector:
        e = [0] * self.rank
        e[i] = 1
        return self._index[tuple(e)]

    @property
    def simple_roots(self) -> tuple[RootVector, ...]:
        return tuple(self.simple(i) for i in range(self.rank))

    @property
    def highest(self) -> RootVector:
        return max(self.roots)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.roots]


@lru_cache(maxsize=None)
def _finite_roots(entries: tuple[tuple[int, ...], ...]) -> tuple[Coords, ...]:
    l = len(entries)
    simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(l):
                p = sum(c * entries[i][j] for j, c in enumerate(beta))
                gamma = tuple(c - (p if j == i else 0) for j, c in enumerate(beta))
                if all(c >= 0 for c in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
        if len(found) > 10_000:
            raise UnsupportedType("root closure did not terminate; matrix is not of finite type")
    return tuple(sorted(found, key=lambda c: (sum(c), c)))


def _null_vector(entries) -> Coords:
    l = len(entries)
    m = [[Fraction(x) for x in row] for row in entries]
    pivots = []
    r = 0
    for c in range(l):
        p = next((k for k in range(r, l) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(l):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(l) if c not in pivots]
    if len(free) != 1:
        raise UnsupportedType("affine matrix must have a one-dimensional kernel")
    f = free[0]
    vec = [Fraction(0)] * l
    vec[f] = Fraction(1)
    for row, c in zip(m, pivots):
        vec[c] = -row[f]
    from math import lcm

    den = lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    if ints[0] < 0 or any(x < 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


def affine_node(gcm: GeneralizedCartanMatrix) -> tuple[int, Coords]:
    """Locate the extending node of an untwisted affine matrix.

    Returns ``(node, delta)`` where removing ``node`` leaves a finite
    matrix whose highest root equals ``delta - alpha_node``.
    """
    delta = _null_vector(gcm.entries)
    l = gcm.rank
    for node in range(l):
        if delta[node] != 1:
            continue
        keep = [i for i in range(l) if i != node]
        sub = tuple(tuple(gcm.entries[i][j] for j in keep) for i in keep)
        if classify(sub) != FINITE:
            continue
        theta = max(_finite_roots(sub), key=lambda c: (sum(c), c))
        if tuple(delta[i] for i in keep) == theta:
            return node, delta
    raise UnsupportedType("affine matrix is not of untwisted type")


def positive_roots(gcm: GeneralizedCartanMatrix, H: int) -> RootSystemTable:
    if H < 1:
        raise ValueError("height bound must be >= 1")
    if gcm.declared_type == FINITE:
        roots = tuple(RootVector(sum(c), c, 1) for c in _finite_roots(gcm.entries) if sum(c) <= H)
        return RootSystemTable(gcm, H, roots)
    if gcm.declared_type != AFFINE:
        raise UnsupportedType(gcm.declared_type)
    node, delta = affine_node(gcm)
    l = gcm.rank
    keep = [i for i in range(l) if i != node]
    sub = tuple(tuple(gcm.entries[i][j] for j in keep) for i in keep)
    fin = _finite_roots(sub)

    def embed(c, sign=1):
        out = [0] * l
        for i, x in zip(keep, c):
            out[i] = sign * x
        return out

    hdelta = sum(delta)
    found: dict[Coords, int] = {}
    imag = set()
    k = 0
    while True:
        shift = [k * d for d in delta]
        lowest = k * hdelta - max(sum(c) for c in fin)
        if lowest > H:
            break
        signs = (1,) if k == 0 else (1, -1)
        for s in signs:
            for c in fin:
                v = tuple(a + b for a, b in zip(shift, embed(c, s)))
                if sum(v) <= H:
                    found[v] = 1
        if k >= 1 and k * hdelta <= H:
            v = tuple(shift)
            found[v] = len(keep)
            imag.add(v)
        k += 1
    roots = tuple(
        RootVector(sum(c), c, m) for c, m in sorted(found.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    )
    return RootSystemTable(gcm, H, roots, frozenset(imag), delta)


def finite_part(table: RootSystemTable) -> RootSystemTable:
    """For an affine table, the underlying finite table (roots with no delta component)."""
    if table.delta is None:
        return table
    node, _ = affine_node(table.gcm)
    keep = [i for i in range(table.rank) if i != node]
    sub = GeneralizedCartanMatrix(
        tuple(tuple(table.gcm.entries[i][j] for j in keep) for i in keep), FINITE
    )
    return positive_roots(sub, table.height_bound)


def gcm_from_json(payload: dict) -> GeneralizedCartanMatrix:
    if "cartan_matrix" not in payload:
        raise NonCartan("missing key 'cartan_matrix'")
    return validate_gcm(payload["cartan_matrix"], payload.get("type", FINITE))
