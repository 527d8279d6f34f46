"""Chevalley bases of small finite-type Lie algebras from matrix realizations.

The Chevalley generators are written down as explicit matrices (sl, so and
sp in their standard realizations; G2 as the triality-fixed subalgebra of
so(8)).  Root vectors are iterated brackets of generators, and every
bracket is re-expressed in the basis, which yields exact structure
constants.  Signs therefore depend on the realization; dimensions do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from ..errors import UnsupportedType
from ..rootsys import GeneralizedCartanMatrix, RootSystemTable, positive_roots

Matrix = tuple[tuple[Fraction, ...], ...]


def _zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _unit(n, i, j, c=1):
    m = _zero(n)
    m[i][j] = Fraction(c)
    return m


def _add(a, b, c=1):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a, c):
    return [[x * c for x in r] for r in a]


def _mul(a, b):
    n = len(a)
    out = _zero(n)
    for i in range(n):
        ai = a[i]
        for k in range(n):
            x = ai[k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(n):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def commutator(a, b):
    return _add(_mul(a, b), _mul(b, a), -1)


def _is_zero(a):
    return all(x == 0 for r in a for x in r)


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _so_pair(m, i, j):
    """E_{i,j} - E_{m-1-j, m-1-i}: in so(m) for the antidiagonal form (0-based)."""
    return _add(_unit(m, i, j), _unit(m, m - 1 - j, m - 1 - i), -1)


def _sp_pair(m, i, j):
    n = m // 2
    sign = 1 if (i < n) == (j < n) else -1
    return _add(_unit(m, i, j), _unit(m, m - 1 - j, m - 1 - i), sign if i != m - 1 - j else 0)


def _realize_A(l):
    m = l + 1
    es = [_unit(m, i, i + 1) for i in range(l)]
    return es, [_transpose(e) for e in es]


def _realize_B(l):
    m = 2 * l + 1
    es = [_so_pair(m, i, i + 1) for i in range(l - 1)]
    es.append(_so_pair(m, l - 1, l))
    return es, [_transpose(e) for e in es]


def _realize_C(l):
    m = 2 * l
    es = [_sp_pair(m, i, i + 1) for i in range(l - 1)]
    es.append(_unit(m, l - 1, l))
    return es, [_transpose(e) for e in es]


def _realize_D(l):
    m = 2 * l
    es = [_so_pair(m, i, i + 1) for i in range(l - 1)]
    es.append(_so_pair(m, l - 2, l))
    return es, [_transpose(e) for e in es]


def _realize_G2():
    e, f = _realize_D(4)
    # nodes 0, 2, 3 of D4 are the outer ones; node 1 is the centre
    es = [_add(_add(e[0], e[2]), e[3]), e[1]]
    fs = [_add(_add(f[0], f[2]), f[3]), f[1]]
    return es, fs


def _candidates(l):
    yield f"A{l}", _realize_A(l)
    if l >= 2:
        yield f"B{l}", _realize_B(l)
    if l >= 3:
        yield f"C{l}", _realize_C(l)
    if l >= 4:
        yield f"D{l}", _realize_D(l)
    if l == 2:
        yield "G2", _realize_G2()


def _normalize(es, fs):
    """Rescale f_i so that [h_i, e_i] = 2 e_i with h_i = [e_i, f_i]."""
    hs = []
    out_f = []
    for e, f in zip(es, fs):
        h = commutator(e, f)
        c = _coefficient(commutator(h, e), e)
        out_f.append(_scale(f, Fraction(2) / c))
        hs.append(_scale(h, Fraction(2) / c))
    return hs, out_f


def _coefficient(a, b) -> Fraction:
    """c with a = c*b (b non-zero); raises if not proportional."""
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y:
                c = x / y
                if _add(a, b, -c) != _zero(len(a)):
                    raise ValueError("matrices are not proportional")
                return c
    raise ValueError("zero matrix")


def _cartan_of(es, hs):
    l = len(es)
    return tuple(
        tuple(int(_coefficient(commutator(hs[i], es[j]), es[j])) for j in range(l))
        for i in range(l)
    )


def _identify(gcm: GeneralizedCartanMatrix):
    l = gcm.rank
    for name, (es, fs) in _candidates(l):
        hs, fs = _normalize(es, fs)
        A = _cartan_of(es, hs)
        for perm in permutations(range(l)):
            if all(A[perm[i]][perm[j]] == gcm.entries[i][j] for i in range(l) for j in range(l)):
                return name, [es[p] for p in perm], [fs[p] for p in perm], [hs[p] for p in perm]
    raise UnsupportedType(f"no matrix realization for Cartan matrix {gcm.entries}")


@dataclass
class ChevalleyBasis:
    """Basis X_beta (beta > 0), h_1..h_l, X_{-beta} with exact brackets.

    ``kinds[k]`` is 'e', 'h' or 'f'; ``weights[k]`` is the root of basis
    element k in simple-root coordinates (zero for h).
    """

    table: RootSystemTable
    type_name: str
    matrices: list
    kinds: list[str]
    weights: list[tuple[int, ...]]
    bracket: dict[tuple[int, int], dict[int, Fraction]] = field(repr=False)
    e_index: dict = field(default_factory=dict)
    f_index: dict = field(default_factory=dict)
    h_index: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.kinds)

    @property
    def rank(self) -> int:
        return self.table.rank

    def br(self, a: int, b: int) -> dict[int, Fraction]:
        return self.bracket.get((a, b), {})

    def e(self, i: int) -> int:
        return self.e_index[self.table.simple(i).coords]

    def f(self, i: int) -> int:
        return self.f_index[self.table.simple(i).coords]

    def h(self, i: int) -> int:
        return self.h_index[i]

    def bracket_vectors(self, u: dict, v: dict) -> dict:
        out: dict[int, Fraction] = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.br(a, b).items():
                    w = out.get(c, 0) + x * y * z
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
        return out

    def to_json(self) -> dict:
        names = [self.label(k) for k in range(self.dim)]
        return {
            "type": self.type_name,
            "basis": names,
            "brackets": [
                {"x": names[a], "y": names[b], "result": {names[c]: str(v) for c, v in res.items()}}
                for (a, b), res in sorted(self.bracket.items()) if a < b and res
            ],
        }

    def label(self, k: int) -> str:
        kind = self.kinds[k]
        if kind == "h":
            return f"h{self.h_index.index(k) + 1}"
        w = self.weights[k]
        coords = ",".join(str(abs(x)) for x in w)
        return f"X+({coords})" if kind == "e" else f"X-({coords})"


def _express(M, basis_mats, kinds, weights, windex, hs_idx, target_weight):
    if all(x == 0 for x in target_weight):
        # solve in the Cartan span; h's are diagonal in every realization used
        rows = []
        for k in hs_idx:
            rows.append([basis_mats[k][i][i] for i in range(len(M))])
        rhs = [M[i][i] for i in range(len(M))]
        coeffs = _solve(rows, rhs)
        acc = _zero(len(M))
        for k, c in zip(hs_idx, coeffs):
            acc = _add(acc, basis_mats[k], c)
        if acc != M:
            raise AssertionError("bracket of opposite root vectors left the Cartan subalgebra")
        return {k: c for k, c in zip(hs_idx, coeffs) if c}
    k = windex.get(target_weight)
    if k is None:
        if not _is_zero(M):
            raise AssertionError(f"bracket has weight {target_weight} which is not a root")
        return {}
    if _is_zero(M):
        return {}
    return {k: _coefficient(M, basis_mats[k])}


def _solve(rows, rhs):
    """Least-squares-free exact solve of sum_k c_k rows[k] = rhs (consistent systems)."""
    n = len(rows)
    m = len(rhs)
    aug = [[rows[k][i] for k in range(n)] + [rhs[i]] for i in range(m)]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv):
        sol[c] = aug[i][n]
    return sol


_CACHE: dict = {}


def chevalley_basis(gcm: GeneralizedCartanMatrix, verify: bool = True) -> ChevalleyBasis:
    if not gcm.is_finite:
        raise UnsupportedType("module construction supports finite type only")
    if gcm.rank > 4:
        raise UnsupportedType("module construction supports rank <= 4")
    key = (gcm.entries, verify)
    if key in _CACHE:
        return _CACHE[key]
    name, es, fs, hs = _identify(gcm)
    table = positive_roots(gcm, 64)
    l = gcm.rank
    pos = {}
    neg = {}
    for r in table.roots:
        if r.height == 1:
            i = r.coords.index(1)
            pos[r.coords] = es[i]
            neg[r.coords] = fs[i]
            continue
        for i in range(l):
            prev = tuple(c - (1 if j == i else 0) for j, c in enumerate(r.coords))
            if prev in pos:
                X = commutator(es[i], pos[prev])
                if not _is_zero(X):
                    Y = commutator(fs[i], neg[prev])
                    Hb = commutator(X, Y)
                    c = _coefficient(commutator(Hb, X), X)
                    pos[r.coords] = X
                    neg[r.coords] = _scale(Y, Fraction(2) / c)
                    break
        else:
            raise AssertionError(f"could not build a root vector for {r.coords}")
    mats, kinds, weights = [], [], []
    e_index, f_index, h_index = {}, {}, []
    for r in table.roots:
        e_index[r.coords] = len(mats)
        mats.append(pos[r.coords]); kinds.append("e"); weights.append(r.coords)
    for i in range(l):
        h_index.append(len(mats))
        mats.append(hs[i]); kinds.append("h"); weights.append((0,) * l)
    for r in table.roots:
        f_index[r.coords] = len(mats)
        mats.append(neg[r.coords]); kinds.append("f"); weights.append(tuple(-c for c in r.coords))
    windex = {w: k for k, w in enumerate(weights) if kinds[k] != "h"}
    bracket = {}
    n = len(mats)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            if (b, a) in bracket:
                bracket[(a, b)] = {k: -v for k, v in bracket[(b, a)].items()}
                continue
            M = commutator(mats[a], mats[b])
            tw = tuple(x + y for x, y in zip(weights[a], weights[b]))
            res = _express(M, mats, kinds, weights, windex, h_index, tw)
            if res:
                bracket[(a, b)] = res
    cb = ChevalleyBasis(table, name, mats, kinds, weights, bracket, e_index, f_index, h_index)
    if verify:
        verify_chevalley(cb, gcm)
    _CACHE[key] = cb
    return cb


def verify_chevalley(cb: ChevalleyBasis, gcm: GeneralizedCartanMatrix) -> None:
    """Antisymmetry, Jacobi, Cartan action, opposite brackets and Serre."""
    n = cb.dim
    unit = lambda k: {k: Fraction(1)}
    for a in range(n):
        for b in range(n):
            ab = cb.br(a, b)
            ba = cb.br(b, a)
            if {k: -v for k, v in ba.items()} != ab:
                raise AssertionError("bracket not antisymmetric")
    for a in range(n):
        for b in range(a + 1, n):
            ab = cb.br(a, b)
            for c in range(b + 1, n):
                total: dict = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = cb.br(x, y)
                    part = cb.bracket_vectors(inner, unit(z))
                    for k, v in part.items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    raise AssertionError(f"Jacobi fails on basis triple {(a, b, c)}")
    l = cb.rank
    for i in range(l):
        hi = cb.h(i)
        for k in range(n):
            if cb.kinds[k] == "h":
                if cb.br(hi, k):
                    raise AssertionError("Cartan not abelian")
                continue
            expected = gcm.pairing(cb.weights[k], i)
            got = cb.br(hi, k)
            if (got.get(k, 0) if got else 0) != expected or any(j != k for j in got):
                raise AssertionError(f"[h_{i}, basis {k}] has the wrong eigenvalue")
    for coords, ke in cb.e_index.items():
        kf = cb.f_index[coords]
        if any(cb.kinds[j] != "h" for j in cb.br(ke, kf)) or not cb.br(ke, kf):
            raise AssertionError("[X_beta, X_-beta] not a non-zero element of h")
    for i in range(l):
        for j in range(l):
            if i == j:
                continue
            for gen in (cb.e, cb.f):
                v = unit(gen(j))
                for _ in range(1 - gcm.entries[i][j]):
                    v = cb.bracket_vectors(unit(gen(i)), v)
                if v:
                    raise AssertionError(f"Serre relation fails for ({i},{j})")
