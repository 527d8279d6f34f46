"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def variable_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("t",)
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


class Poly:
    """Immutable-by-convention polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to non-zero Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, shift=0) -> "Poly":
        """The linear form ``x_i - shift``."""
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {e: 1, (0,) * nvars: -Fraction(shift)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different rings")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self) -> int:
        """Smallest total degree present; a large sentinel for zero."""
        return min((sum(e) for e in self.terms), default=1 << 30)

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def shift(self, point: Sequence) -> "Poly":
        """Taylor re-expansion: the polynomial ``q`` with ``q(y) = p(y + point)``."""
        out: dict[Exponent, Fraction] = {}
        pt = [Fraction(x) for x in point]
        for e, c in self.terms.items():
            # expand prod (y_i + p_i)^{e_i}
            partial = {(): c}
            for i, k in enumerate(e):
                nxt = {}
                for pre, v in partial.items():
                    for j in range(k + 1):
                        w = v * comb(k, j) * pt[i] ** (k - j)
                        if w:
                            key = pre + (j,)
                            nxt[key] = nxt.get(key, 0) + w
                partial = nxt
            for key, v in partial.items():
                out[key] = out.get(key, 0) + v
        return Poly(self.nvars, out)

    def vanishing_order(self, point: Sequence) -> int:
        """Order of vanishing at ``point``; membership in m_p^k iff this is >= k."""
        return self.shift(point).low_degree()

    def to_json(self) -> dict[str, str]:
        return {
            ",".join(map(str, e)): str(c)
            for e, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        }

    @classmethod
    def from_json(cls, nvars: int, payload: Mapping[str, str]) -> "Poly":
        terms = {}
        for k, v in payload.items():
            e = tuple(int(x) for x in str(k).strip("()[] ").split(",") if x.strip() != "")
            terms[e] = Fraction(v)
        return cls(nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = variable_names(self.nvars)
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def parse_poly(text: str, nvars: int, names: Iterable[str] | None = None) -> Poly:
    """Parse ``"t^2 - t"`` style input (``^`` or ``**`` for powers)."""
    import sympy

    names = tuple(names) if names is not None else variable_names(nvars)
    symbols = sympy.symbols(names)
    if nvars == 1 and not isinstance(symbols, (tuple, list)):
        symbols = (symbols,)
    local = {n: s for n, s in zip(names, symbols)}
    try:
        expr = sympy.parse_expr(text.replace("^", "**"), local_dict=local)
        p = sympy.Poly(expr, *symbols, domain="QQ")
    except (sympy.SympifyError, SyntaxError, sympy.PolynomialError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from exc
    return Poly(nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in p.terms()})
