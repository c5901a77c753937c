"""Kauffman states, their circle systems, and enhanced states.

States are indexed by integers: bit ``n-1-k`` is set when crossing ``k``
carries a B marker, so counting upward enumerates states lexicographically
in crossing order with A < B. Circles get canonical ids sorted by their
smallest arc label; free loops come last.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator

import numpy as np

from .diagram import A_PAIRS, B_PAIRS, LinkDiagram

__all__ = [
    "Marker",
    "KauffmanState",
    "CircleSystem",
    "EnhancedState",
    "StateTable",
    "smooth",
    "enumerate_states",
    "enumerate_enhanced",
    "bigrading",
    "sign_vectors",
]


class Marker(str, Enum):
    A = "A"
    B = "B"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class KauffmanState:
    markers: tuple[Marker, ...]

    @classmethod
    def from_index(cls, n: int, index: int) -> "KauffmanState":
        return cls(tuple(Marker.B if index >> (n - 1 - k) & 1 else Marker.A for k in range(n)))

    @classmethod
    def parse(cls, text: str) -> "KauffmanState":
        return cls(tuple(Marker(ch) for ch in text))

    @property
    def index(self) -> int:
        n = len(self.markers)
        return sum(1 << (n - 1 - k) for k, m in enumerate(self.markers) if m is Marker.B)

    @property
    def sigma(self) -> int:
        b = sum(1 for m in self.markers if m is Marker.B)
        return len(self.markers) - 2 * b

    def flip(self, v: int) -> "KauffmanState":
        m = list(self.markers)
        m[v] = Marker.B if m[v] is Marker.A else Marker.A
        return KauffmanState(tuple(m))

    def __len__(self) -> int:
        return len(self.markers)

    def __str__(self) -> str:
        return "".join(m.value for m in self.markers)


@dataclass(frozen=True)
class CircleSystem:
    """Circles of a smoothed diagram.

    ``circles[i]`` lists the arcs on circle ``i`` (empty for a free loop);
    ``circle_of_slot`` maps each (crossing, slot) to its circle.
    """

    circle_count: int
    circles: tuple[tuple[int, ...], ...]
    circle_of_slot: dict[tuple[int, int], int]

    def circle_of_arc(self, arc: int) -> int:
        for i, arcs in enumerate(self.circles):
            if arc in arcs:
                return i
        raise KeyError(arc)


@dataclass(frozen=True, slots=True)
class EnhancedState:
    state: KauffmanState
    signs: tuple[int, ...]

    @property
    def sigma(self) -> int:
        return self.state.sigma

    @property
    def tau(self) -> int:
        return sum(self.signs)

    @property
    def bigrading(self) -> tuple[int, int]:
        s = self.sigma
        return s, s + 2 * self.tau

    def __str__(self) -> str:
        return f"{self.state}|{''.join('+' if e > 0 else '-' for e in self.signs)}"


class StateTable:
    """Circle labelling for every Kauffman state of a diagram.

    ``labels[s, i]`` is the circle id of the ``i``-th arc (arcs sorted by
    label) in state ``s``; ``counts[s]`` includes free loops.
    """

    def __init__(self, d: LinkDiagram):
        self.diagram = d
        self.n = d.n_crossings
        self.arcs = d.arcs
        self.arc_index = {a: i for i, a in enumerate(self.arcs)}
        self.slot_arcs = [[self.arc_index[a] for a in c] for c in d.pd]

    def resolve(self, index: int) -> tuple[int, list[int]]:
        """(circle count, per-arc circle ids) for the state with this index."""
        m = len(self.arcs)
        parent = list(range(m))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n = self.n
        for k, slots in enumerate(self.slot_arcs):
            pairs = B_PAIRS if index >> (n - 1 - k) & 1 else A_PAIRS
            for i, j in pairs:
                ri, rj = find(slots[i]), find(slots[j])
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        ids: dict[int, int] = {}
        labels = []
        for x in range(m):
            r = find(x)
            if r not in ids:
                ids[r] = len(ids)
            labels.append(ids[r])
        return len(ids) + self.diagram.free_loops, labels

    @cached_property
    def _table(self) -> tuple[np.ndarray, np.ndarray]:
        size = 1 << self.n
        labels = np.zeros((size, len(self.arcs)), dtype=np.int16)
        counts = np.zeros(size, dtype=np.int64)
        for s in range(size):
            c, lab = self.resolve(s)
            counts[s] = c
            labels[s] = lab
        return counts, labels

    @property
    def counts(self) -> np.ndarray:
        return self._table[0]

    @property
    def labels(self) -> np.ndarray:
        return self._table[1]

    def circle_system(self, index: int) -> CircleSystem:
        count, lab = self.resolve(index)
        arcs_of: list[list[int]] = [[] for _ in range(count)]
        for i, c in enumerate(lab):
            arcs_of[c].append(self.arcs[i])
        slot_map = {(k, s): lab[slots[s]] for k, slots in enumerate(self.slot_arcs)
                    for s in range(4)}
        return CircleSystem(count, tuple(tuple(x) for x in arcs_of), slot_map)


def smooth(d: LinkDiagram, s: KauffmanState) -> CircleSystem:
    """Circle system obtained by smoothing every crossing per its marker."""
    if len(s) != d.n_crossings:
        raise ValueError(f"state has {len(s)} markers, diagram has {d.n_crossings} crossings")
    return StateTable(d).circle_system(s.index)


def enumerate_states(d: LinkDiagram) -> Iterator[KauffmanState]:
    n = d.n_crossings
    for idx in range(1 << n):
        yield KauffmanState.from_index(n, idx)


_SIGN_CACHE: dict[int, list[tuple[int, ...]]] = {}


def sign_vectors(c: int) -> list[tuple[int, ...]]:
    """All sign vectors on ``c`` circles, lexicographic with + before -."""
    if c not in _SIGN_CACHE:
        _SIGN_CACHE[c] = [tuple(-1 if m >> (c - 1 - i) & 1 else 1 for i in range(c))
                          for m in range(1 << c)]
    return _SIGN_CACHE[c]


def enumerate_enhanced(d: LinkDiagram) -> Iterator[tuple[EnhancedState, int, int]]:
    """Stream (enhanced state, a, b) in state order, then sign order."""
    table = StateTable(d)
    n = d.n_crossings
    for idx in range(1 << n):
        count, _ = table.resolve(idx)
        state = KauffmanState.from_index(n, idx)
        sigma = state.sigma
        for signs in sign_vectors(count):
            yield EnhancedState(state, signs), sigma, sigma + 2 * sum(signs)


def bigrading(S: EnhancedState) -> tuple[int, int]:
    return S.bigrading
