"""Graded modules over g' (x) B: Verma modules, quotients by submodule
closure, tensor products and evaluation modules.

Every module here is Q_+-graded below its highest weight.  A vector is a
dict ``{key: Fraction}`` whose keys all have the same weight; keys are
tuples, so vectors in different modules never need a common type.
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction
from itertools import product as cartesian

from ..errors import ResourceCapError, WeightOverflow
from ..linalg import EchelonBasis, add_scaled, nullspace
from .mapalg import MapAlgebra

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Coords = tuple[int, ...]


def max_dim() -> int | None:
    raw = os.environ.get("WEYLFORGE_MAX_DIM")
    return int(raw) if raw else None


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _nonneg(a):
    return all(x >= 0 for x in a)


class GradedModule:
    """Common interface.

    Subclasses provide ``malg``, ``rank``, ``H`` (height bound of the data
    that is known), ``highest`` (the key of the highest weight vector),
    ``keys(eta)``, ``weight_of(key)`` and ``apply_gen(g, key)``.
    """

    malg: MapAlgebra
    H: int

    @property
    def rank(self) -> int:
        return self.malg.rank

    def apply(self, gvec, vec: dict) -> dict:
        """Action of a generator id or a combination ``{gen: coeff}``."""
        if isinstance(gvec, int):
            gvec = {gvec: Fraction(1)}
        out: dict = {}
        for g, c in gvec.items():
            for key, x in vec.items():
                add_scaled(out, self.apply_gen(g, key), c * x)
        return out

    def apply_word(self, word, vec: dict) -> dict:
        """Apply the rightmost element of ``word`` first."""
        for g in reversed(list(word)):
            vec = self.apply(g, vec)
            if not vec:
                break
        return vec

    def vacuum(self) -> dict:
        return {self.highest: Fraction(1)}

    def weight_of_vector(self, vec: dict) -> Coords | None:
        for key in vec:
            return self.weight_of(key)
        return None

    def dim(self, eta) -> int:
        return len(self.keys(tuple(eta)))

    def dims(self, H: int | None = None) -> dict[Coords, int]:
        H = self.H if H is None else H
        out = {}
        for h in range(H + 1):
            for eta in compositions(h, self.rank):
                d = self.dim(eta)
                if d:
                    out[eta] = d
        return out


class VermaModule(GradedModule):
    """M(psi) = U(N^-) v, with PBW monomials as sorted tuples of letter ranks."""

    def __init__(self, malg: MapAlgebra, psi, order: str = "height"):
        self.malg = malg
        self.psi = psi
        self.order = order
        self.H = 10 ** 9
        lows = malg.lowering()
        lows.sort(key=lambda g: malg.letter_key(g, order))
        self.letter_gen = lows
        self.rank_of = {g: r for r, g in enumerate(lows)}
        self.letter_weight = [tuple(-c for c in malg.weight(g)) for g in lows]
        self.highest = ()
        self._act: dict = {}
        self._monos: dict = {}
        self._psi_cache: dict = {}

    def weight_of(self, key) -> Coords:
        w = [0] * self.rank
        for r in key:
            for j, c in enumerate(self.letter_weight[r]):
                w[j] += c
        return tuple(w)

    def keys(self, eta) -> list:
        eta = tuple(eta)
        out = self._enum(eta, 0)
        cap = max_dim()
        if cap is not None and len(out) > cap:
            raise ResourceCapError(f"weight space {eta} has {len(out)} monomials > cap {cap}")
        return out

    def _enum(self, eta, start):
        key = (eta, start)
        got = self._monos.get(key)
        if got is not None:
            return got
        if not any(eta):
            out = [()]
        else:
            out = []
            for r in range(start, len(self.letter_gen)):
                rest = _sub(eta, self.letter_weight[r])
                if _nonneg(rest):
                    for tail in self._enum(rest, r):
                        out.append((r,) + tail)
        self._monos[key] = out
        return out

    def describe(self, key) -> list:
        """Word as [(negative root coords, B index, exponent), ...]."""
        out = []
        for r in key:
            g = self.letter_gen[r]
            item = (list(self.letter_weight[r]), g % self.malg.d)
            if out and out[-1][:2] == item:
                out[-1] = (item[0], item[1], out[-1][2] + 1)
            else:
                out.append((item[0], item[1], 1))
        return [list(x) for x in out]

    def _psi(self, g):
        v = self._psi_cache.get(g)
        if v is None:
            x, k = self.malg.split(g)
            i = self.malg.chevalley.h_index.index(x)
            v = self.psi.value(i, self.malg.coeff, {k: Fraction(1)})
            self._psi_cache[g] = v
        return v

    def apply_gen(self, g: int, m: tuple) -> dict:
        key = (g, m)
        res = self._act.get(key)
        if res is not None:
            return res
        kind = self.malg.kind(g)
        if not m:
            if kind == "f":
                res = {(self.rank_of[g],): Fraction(1)}
            elif kind == "e":
                res = {}
            else:
                c = self._psi(g)
                res = {(): c} if c else {}
        elif kind == "f" and self.rank_of[g] <= m[0]:
            res = {(self.rank_of[g],) + m: Fraction(1)}
        else:
            # g x1 rest = x1 (g rest) + [g, x1] rest
            x1 = self.letter_gen[m[0]]
            rest = m[1:]
            res = {}
            for m2, c in self.apply_gen(g, rest).items():
                add_scaled(res, self.apply_gen(x1, m2), c)
            for g2, c in self.malg.bracket(g, x1).items():
                add_scaled(res, self.apply_gen(g2, rest), c)
        self._act[key] = res
        return res


class Closure:
    """Submodule of ``module`` generated by ``generators``, weight by weight.

    Phase 1 closes the generators under the raising and Cartan currents;
    phase 2 fills heights upward with S_eta = R_eta + sum_i (f_i (x) B) S_{eta - alpha_i}.
    Once a band of heights as wide as the tallest root is entirely in the
    submodule, everything above it is too, and the fill stops.
    """

    def __init__(self, module: GradedModule, generators, H: int, detect_vanishing: bool = True):
        self.module = module
        self.malg = module.malg
        self.rank = module.rank
        self.generators = [dict(v) for v in generators if v]
        self.R: dict[Coords, EchelonBasis] = {}
        self.S: dict[Coords, EchelonBasis] = {}
        self.H = -1
        self.vanish_from: int | None = None
        self.detect = detect_vanishing
        self._band = self.malg.chevalley.table.highest.height
        self._phase1()
        self.extend(H)

    def _phase1(self):
        raising = self.malg.raising_simple() + self.malg.cartan()
        work = list(self.generators)
        while work:
            v = work.pop()
            eta = self.module.weight_of_vector(v)
            R = self.R.setdefault(eta, EchelonBasis())
            if not R.add(v):
                continue
            for g in raising:
                w = self.module.apply(g, v)
                if w:
                    work.append(w)

    def _fill(self, eta):
        S = EchelonBasis()
        R = self.R.get(eta)
        if R is not None:
            S.extend(list(R.rows.values()))
        for i in range(self.rank):
            prev = list(eta)
            prev[i] -= 1
            prev = tuple(prev)
            if prev[i] < 0:
                continue
            Sp = self.S.get(prev)
            if Sp is None or not Sp.rank:
                continue
            rows = list(Sp.rows.values())
            for g in self.malg.lowering_simple(i):
                for row in rows:
                    w = self.module.apply(g, row)
                    if w:
                        S.add(w)
        return S

    def extend(self, H: int):
        for h in range(self.H + 1, H + 1):
            if self.vanish_from is not None:
                break
            zero = True
            for eta in compositions(h, self.rank):
                S = self._fill(eta)
                self.S[eta] = S
                if zero and S.rank != len(self.module.keys(eta)):
                    zero = False
            self._zero_heights = getattr(self, "_zero_heights", 0) + 1 if zero else 0
            if self.detect and self._zero_heights >= self._band:
                self.vanish_from = h - self._band + 1
        self.H = max(self.H, H)

    def vanishes_at(self, eta) -> bool:
        return self.vanish_from is not None and sum(eta) >= self.vanish_from

    def rows(self, eta) -> EchelonBasis:
        eta = tuple(eta)
        if sum(eta) > self.H:
            raise WeightOverflow(f"weight {eta} is above the computed height {self.H}")
        S = self.S.get(eta)
        return S if S is not None else EchelonBasis()

    def contains(self, vec: dict) -> bool:
        if not vec:
            return True
        eta = self.module.weight_of_vector(vec)
        if self.vanishes_at(eta):
            return True
        return self.rows(eta).contains(vec)

    def codim(self, eta) -> int:
        eta = tuple(eta)
        if self.vanishes_at(eta):
            return 0
        return len(self.module.keys(eta)) - self.rows(eta).rank

    def is_everything(self, H: int | None = None) -> bool:
        H = self.H if H is None else H
        return all(
            self.codim(eta) == 0 for h in range(H + 1) for eta in compositions(h, self.rank)
        )


class ModuleState(GradedModule):
    """Quotient of a Verma module by the submodule generated by relations."""

    def __init__(self, verma: VermaModule, relations, H: int, psi=None, label: str = "",
                 detect_vanishing: bool = True):
        self.verma = verma
        self.malg = verma.malg
        self.psi = psi if psi is not None else verma.psi
        self.relations = [dict(r) for r in relations if r]
        self.label = label
        self.closure = Closure(verma, self.relations, H, detect_vanishing)
        self.highest = ()
        self._cache: dict = {}
        self.audit: dict | None = None

    @property
    def H(self) -> int:
        return self.closure.H

    @property
    def finite(self) -> bool:
        return self.closure.vanish_from is not None

    def extend(self, H: int):
        self.closure.extend(H)

    def weight_of(self, key):
        return self.verma.weight_of(key)

    def keys(self, eta) -> list:
        eta = tuple(eta)
        if self.closure.vanishes_at(eta):
            return []
        piv = self.closure.rows(eta).pivots
        return [m for m in self.verma.keys(eta) if m not in piv]

    def dim(self, eta) -> int:
        return self.closure.codim(eta)

    def dims(self, H: int | None = None) -> dict:
        H = self.H if H is None else H
        if H > self.H:
            self.extend(H)
        out = {}
        for h in range(H + 1):
            if self.closure.vanish_from is not None and h >= self.closure.vanish_from:
                break
            for eta in compositions(h, self.rank):
                d = self.dim(eta)
                if d:
                    out[eta] = d
        return out

    def total_dim(self) -> int | None:
        if not self.finite:
            return None
        return sum(self.dims(self.closure.vanish_from).values())

    def normal_form(self, vec: dict) -> dict:
        if not vec:
            return {}
        eta = self.verma.weight_of_vector(vec)
        if self.closure.vanishes_at(eta):
            return {}
        return self.closure.rows(eta).reduce(vec)

    def apply_gen(self, g: int, key) -> dict:
        ck = (g, key)
        res = self._cache.get(ck)
        if res is None:
            res = self.normal_form(self.verma.apply_gen(g, key))
            self._cache[ck] = res
        return res

    def is_zero(self, vec: dict) -> bool:
        return not self.normal_form(vec)

    def describe(self, key):
        return self.verma.describe(key)


class TensorModule(GradedModule):
    """M1 (x) M2 with the coproduct action."""

    def __init__(self, M1: GradedModule, M2: GradedModule):
        self.M1, self.M2 = M1, M2
        self.malg = M1.malg
        self.highest = (M1.highest, M2.highest)
        self._cache: dict = {}
        self._keys: dict = {}

    @property
    def H(self) -> int:
        return min(self.M1.H, self.M2.H)

    def weight_of(self, key):
        a = self.M1.weight_of(key[0])
        b = self.M2.weight_of(key[1])
        return tuple(x + y for x, y in zip(a, b))

    def keys(self, eta) -> list:
        eta = tuple(eta)
        got = self._keys.get(eta)
        if got is not None:
            return got
        out = []
        for eta1 in cartesian(*(range(c + 1) for c in eta)):
            eta2 = _sub(eta, eta1)
            k1 = self.M1.keys(eta1)
            if not k1:
                continue
            k2 = self.M2.keys(eta2)
            out.extend((a, b) for a in k1 for b in k2)
        out.sort()
        cap = max_dim()
        if cap is not None and len(out) > cap:
            raise ResourceCapError(f"weight space {eta} has dimension {len(out)} > cap {cap}")
        self._keys[eta] = out
        return out

    def apply_gen(self, g: int, key) -> dict:
        ck = (g, key)
        res = self._cache.get(ck)
        if res is None:
            a, b = key
            res = {}
            for k, c in self.M1.apply_gen(g, a).items():
                res[(k, b)] = c
            for k, c in self.M2.apply_gen(g, b).items():
                nk = (a, k)
                v = res.get(nk, 0) + c
                if v:
                    res[nk] = v
                else:
                    res.pop(nk, None)
            self._cache[ck] = res
        return res

    def pure(self, u: dict, w: dict) -> dict:
        """u (x) w for vectors of the two factors."""
        return {(a, b): x * y for a, x in u.items() for b, y in w.items()}


class EvaluationModule(GradedModule):
    """V(lambda_1) (x) ... (x) V(lambda_p) with x (x) a acting by sum_i a(p_i) x in slot i.

    Each factor is a module over g' (x) Q, whose generator ids are the
    Chevalley basis indices themselves.
    """

    def __init__(self, malg: MapAlgebra, points, factors):
        self.malg = malg
        self.points = list(points)
        self.factors = list(factors)
        self.highest = tuple(f.highest for f in self.factors)
        self._values = [
            [malg.coeff.basis_value(k, p) for k in range(malg.d)] for p in self.points
        ]
        self._cache: dict = {}
        self._keys: dict = {}

    @property
    def H(self) -> int:
        return min(f.H for f in self.factors)

    def weight_of(self, key):
        w = [0] * self.rank
        for f, k in zip(self.factors, key):
            for j, c in enumerate(f.weight_of(k)):
                w[j] += c
        return tuple(w)

    def keys(self, eta) -> list:
        eta = tuple(eta)
        got = self._keys.get(eta)
        if got is None:
            got = sorted(self._keys_rec(eta, 0))
            self._keys[eta] = got
        return got

    def _keys_rec(self, eta, i):
        f = self.factors[i]
        if i == len(self.factors) - 1:
            return [(k,) for k in f.keys(eta)]
        out = []
        for eta1 in cartesian(*(range(c + 1) for c in eta)):
            k1 = f.keys(eta1)
            if not k1:
                continue
            rest = self._keys_rec(_sub(eta, eta1), i + 1)
            out.extend((a,) + r for a in k1 for r in rest)
        return out

    def apply_gen(self, g: int, key) -> dict:
        ck = (g, key)
        res = self._cache.get(ck)
        if res is None:
            x, k = self.malg.split(g)
            res = {}
            for i, f in enumerate(self.factors):
                c = self._values[i][k]
                if not c:
                    continue
                for nk, v in f.apply_gen(x, key[i]).items():
                    full = key[:i] + (nk,) + key[i + 1:]
                    add_scaled(res, {full: v}, c)
            self._cache[ck] = res
        return res


def singular_vectors(module: GradedModule, eta) -> list[dict]:
    """Basis of the vectors of weight eta killed by every raising current."""
    keys = module.keys(tuple(eta))
    gens = module.malg.raising_simple()
    images = []
    for key in keys:
        img = {}
        for g in gens:
            for k2, c in module.apply_gen(g, key).items():
                img[(g, k2)] = c
        images.append(img)
    return [{keys[j]: c for j, c in sorted(v.items())} for v in nullspace(images)]
