"""Sparse multivariate polynomials with exact integer coefficients.

Fixed variable order ``(x, y, a, b1, b2, c1, c2)``: the two translation
coordinates followed by the half-angle images of the rotation angle and the
four projection angles.  Coefficients are Python ints, so no precision is
ever lost during expansion.
"""

from __future__ import annotations

from typing import Iterable, Mapping

VARIABLES = ("x", "y", "a", "b1", "b2", "c1", "c2")
NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * NVARS


class IntPolynomial:
    """Immutable-by-convention sparse polynomial over the seven variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @staticmethod
    def constant(c: int) -> "IntPolynomial":
        return IntPolynomial({_ZERO_EXP: int(c)})

    @staticmethod
    def variable(name: str) -> "IntPolynomial":
        e = [0] * NVARS
        e[VARIABLES.index(name)] = 1
        return IntPolynomial({tuple(e): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial({e: c * other for e, c in self.terms.items()})
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(out)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def evaluate(self, values: Iterable[float]) -> float:
        vals = tuple(values)
        total = 0.0
        for e, c in self.terms.items():
            term = float(c)
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            total += term
        return total

    def to_string(self) -> str:
        """Render as ``c*x^i*... +/- ...`` in graded-lexicographic order."""
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-p for p in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            factors = []
            for name, p in zip(VARIABLES, e):
                if p == 1:
                    factors.append(name)
                elif p > 1:
                    factors.append(f"{name}^{p}")
            mono = "*".join(factors)
            mag = abs(c)
            body = f"{mag}*{mono}" if mono and mag != 1 else (mono or str(mag))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({self.to_string()})"


ZERO = IntPolynomial()
ONE = IntPolynomial.constant(1)
