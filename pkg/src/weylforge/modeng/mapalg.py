"""The map algebra g' (x) B for a finite-dimensional quotient algebra B."""

from __future__ import annotations

from fractions import Fraction

from ..commalg import QuotientAlgebra
from .lie import ChevalleyBasis

# Letter orders for PBW monomials.  "height" is the default; "reverse" is a
# second, unrelated total order used to test that nothing depends on it.
LETTER_ORDERS = ("height", "reverse")


class MapAlgebra:
    """Generators x (x) b_k indexed by ``x * dim B + k``."""

    def __init__(self, chevalley: ChevalleyBasis, coeff: QuotientAlgebra):
        self.chevalley = chevalley
        self.coeff = coeff
        self.d = coeff.dim
        self.ngens = chevalley.dim * self.d
        self._br: dict = {}

    @property
    def rank(self) -> int:
        return self.chevalley.rank

    def gen(self, x: int, k: int) -> int:
        return x * self.d + k

    def split(self, g: int) -> tuple[int, int]:
        return divmod(g, self.d)

    def kind(self, g: int) -> str:
        return self.chevalley.kinds[g // self.d]

    def weight(self, g: int) -> tuple[int, ...]:
        return self.chevalley.weights[g // self.d]

    def same_as(self, other: "MapAlgebra") -> bool:
        return self is other or (
            self.chevalley is other.chevalley and self.coeff.ideal == other.coeff.ideal
        )

    def bracket(self, g1: int, g2: int) -> dict[int, Fraction]:
        key = (g1, g2)
        res = self._br.get(key)
        if res is None:
            x1, k1 = self.split(g1)
            x2, k2 = self.split(g2)
            res = {}
            prod = self.coeff.mult.get((k1, k2))
            if prod:
                for z, c in self.chevalley.br(x1, x2).items():
                    for n, c2 in prod.items():
                        g = self.gen(z, n)
                        v = res.get(g, 0) + c * c2
                        if v:
                            res[g] = v
                        else:
                            res.pop(g, None)
            self._br[key] = res
        return res

    def element(self, x: int, b) -> dict[int, Fraction]:
        """x (x) b for b a coefficient vector of B (or a basis index)."""
        if isinstance(b, int):
            b = {b: Fraction(1)}
        return {self.gen(x, k): Fraction(c) for k, c in sorted(b.items()) if c}

    def bracket_elements(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.bracket(a, b).items():
                    w = out.get(c, 0) + x * y * z
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
        return out

    # generator families used by the closure
    def raising_simple(self) -> list[int]:
        cb = self.chevalley
        return [self.gen(cb.e(i), k) for i in range(self.rank) for k in range(self.d)]

    def cartan(self) -> list[int]:
        cb = self.chevalley
        return [self.gen(cb.h(i), k) for i in range(self.rank) for k in range(self.d)]

    def lowering_simple(self, i: int) -> list[int]:
        x = self.chevalley.f(i)
        return [self.gen(x, k) for k in range(self.d)]

    def lowering(self) -> list[int]:
        return [g for g in range(self.ngens) if self.kind(g) == "f"]

    def letter_key(self, g: int, order: str = "height"):
        w = tuple(-c for c in self.weight(g))
        k = g % self.d
        if order == "height":
            return (sum(w), w, k)
        if order == "reverse":
            return (-sum(w), tuple(reversed(w)), -k)
        raise ValueError(f"unknown letter order {order!r}")
