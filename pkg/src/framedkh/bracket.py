"""Unreduced Kauffman bracket: Laurent polynomials in A and two state sums."""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping

from .diagram import LinkDiagram, smooth_crossing
from .resolution import StateTable, sign_vectors

__all__ = [
    "LaurentPoly",
    "A",
    "DELTA",
    "bracket_state_sum",
    "bracket_enhanced_sum",
    "skein_check",
]


class LaurentPoly:
    """Integer Laurent polynomial in ``A``; zero coefficients are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        self._c = {int(e): int(c) for e, c in (coefficients or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _lift(other)
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_lift(other))

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _lift(other)
        out: dict[int, int] = defaultdict(int)
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] += c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of a Laurent polynomial are not supported")
        out = LaurentPoly({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("A" if e == 1 else f"A^{e}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> dict[str, int]:
        return {str(e): self._c[e] for e in sorted(self._c, reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): c for e, c in data.items()})


def _lift(x: "LaurentPoly | int") -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly({0: x})


A = LaurentPoly.monomial(1)
A_INV = LaurentPoly.monomial(-1)
DELTA = LaurentPoly({2: -1, -2: -1})


def bracket_state_sum(d: LinkDiagram) -> LaurentPoly:
    """Sum over states of A^(#A - #B) * (-A^2 - A^-2)^(number of circles)."""
    table = StateTable(d)
    n = d.n_crossings
    # group by (sigma, circles) first; many states share both
    weights: dict[tuple[int, int], int] = defaultdict(int)
    for idx in range(1 << n):
        sigma = n - 2 * bin(idx).count("1")
        weights[sigma, int(table.counts[idx])] += 1
    total = LaurentPoly()
    powers: dict[int, LaurentPoly] = {}
    for (sigma, c), mult in weights.items():
        if c not in powers:
            powers[c] = DELTA ** c
        total = total + LaurentPoly.monomial(sigma, mult) * powers[c]
    return total


def bracket_enhanced_sum(d: LinkDiagram) -> LaurentPoly:
    """Sum over enhanced states of (-1)^(circles) * A^(sigma + 2 tau)."""
    table = StateTable(d)
    n = d.n_crossings
    coeffs: dict[int, int] = defaultdict(int)
    for idx in range(1 << n):
        sigma = n - 2 * bin(idx).count("1")
        c = int(table.counts[idx])
        sgn = -1 if c % 2 else 1
        for signs in sign_vectors(c):
            coeffs[sigma + 2 * sum(signs)] += sgn
    return LaurentPoly(coeffs)


def skein_check(d: LinkDiagram, v: int) -> bool:
    """Whether [D] = A [D_A] + A^-1 [D_B] at crossing ``v``."""
    if not 0 <= v < d.n_crossings:
        raise ValueError(f"crossing {v} out of range for a {d.n_crossings}-crossing diagram")
    d_a, _ = smooth_crossing(d, v, "A")
    d_b, _ = smooth_crossing(d, v, "B")
    return bracket_state_sum(d) == A * bracket_state_sum(d_a) + A_INV * bracket_state_sum(d_b)
