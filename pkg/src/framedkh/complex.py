"""The bigraded chain complex spanned by enhanced states.

The differential flips one A marker to B. At the flipped crossing two
circles fuse or one circle splits, and the signs follow the table

    fusion: (-,-) -> -,  (+,-) -> +,  (-,+) -> +,  (+,+) -> nothing
    split:  + -> (+,+),  - -> (+,-) and (-,+)

which is exactly the condition that tau rises by one while every other
circle keeps its sign. The coefficient is (-1)^t with t the number of B
markers on crossings after the flipped one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable

import numpy as np

from .diagram import LinkDiagram
from .linalg import IntegerMatrix
from .resolution import EnhancedState, KauffmanState, Marker, StateTable, sign_vectors, smooth

__all__ = [
    "GradedBasis",
    "BigradedComplex",
    "incidence",
    "t_sign",
    "build_complex",
    "verify_dd_zero",
    "direct_sum",
    "dump_triplets",
    "parse_triplets",
]

Grading = tuple[int, int]


@dataclass
class GradedBasis:
    """Ordered basis of one chain group, stored compactly.

    ``states[i]`` is the Kauffman state index and ``masks[i]`` the sign mask
    (bit set = minus, circle 0 most significant) of the i-th basis element.
    """

    bigrading: Grading
    n_crossings: int
    states: np.ndarray
    masks: np.ndarray
    circle_counts: np.ndarray

    def __len__(self) -> int:
        return len(self.states)

    @cached_property
    def basis(self) -> list[EnhancedState]:
        n = self.n_crossings
        cache: dict[int, KauffmanState] = {}
        out = []
        for s, m, c in zip(self.states.tolist(), self.masks.tolist(), self.circle_counts.tolist()):
            if s not in cache:
                cache[s] = KauffmanState.from_index(n, s)
            out.append(EnhancedState(cache[s], sign_vectors(c)[m]))
        return out

    @cached_property
    def position(self) -> dict[tuple[int, int], int]:
        return {(s, m): i for i, (s, m) in enumerate(zip(self.states.tolist(), self.masks.tolist()))}

    def index_of(self, S: EnhancedState) -> int:
        mask = 0
        for e in S.signs:
            mask = (mask << 1) | (e < 0)
        return self.position[S.state.index, mask]

    def marker_at(self, v: int) -> np.ndarray:
        """Boolean array: True where crossing ``v`` carries a B marker."""
        return (self.states >> (self.n_crossings - 1 - v)) & 1 == 1


@dataclass
class BigradedComplex:
    """Chain groups keyed by (a, b) and differentials d_(a,b): C_(a,b) -> C_(a-2,b)."""

    bases: dict[Grading, GradedBasis]
    differentials: dict[Grading, IntegerMatrix] = field(default_factory=dict)
    n_crossings: int = 0

    def dim(self, a: int, b: int) -> int:
        g = self.bases.get((a, b))
        return len(g) if g is not None else 0

    def differential(self, a: int, b: int) -> IntegerMatrix:
        m = self.differentials.get((a, b))
        if m is None:
            return IntegerMatrix.zeros(self.dim(a - 2, b), self.dim(a, b))
        return m

    @property
    def gradings(self) -> list[Grading]:
        return sorted(self.bases, key=lambda g: (-g[1], g[0]))

    @property
    def b_values(self) -> list[int]:
        return sorted({b for _, b in self.bases}, reverse=True)

    def a_values(self, b: int) -> list[int]:
        return sorted((a for a, bb in self.bases if bb == b), reverse=True)

    def total_dim(self) -> int:
        return sum(len(g) for g in self.bases.values())


def _popcount_table(c: int) -> np.ndarray:
    m = np.arange(1 << c, dtype=np.int64)
    pc = np.zeros_like(m)
    for i in range(c):
        pc += (m >> i) & 1
    return pc


_RANK_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _rank_within_popcount(c: int) -> tuple[np.ndarray, np.ndarray]:
    """(popcount, rank among masks of equal popcount) for every c-bit mask."""
    if c not in _RANK_CACHE:
        pc = _popcount_table(c)
        rk = np.zeros_like(pc)
        seen = np.zeros(c + 1, dtype=np.int64)
        for m in range(1 << c):
            rk[m] = seen[pc[m]]
            seen[pc[m]] += 1
        _RANK_CACHE[c] = (pc, rk)
    return _RANK_CACHE[c]


def build_complex(d: LinkDiagram) -> BigradedComplex:
    """Chain complex of ``d`` with bases in enumeration order."""
    n = d.n_crossings
    table = StateTable(d)
    counts = table.counts
    labels = table.labels
    free = d.free_loops
    size = 1 << n

    # basis layout: block (a, b) members ordered by state, then mask
    offsets: list[dict[int, int]] = [dict() for _ in range(size)]
    block_sizes: dict[Grading, int] = {}
    parts: dict[Grading, list[tuple[int, np.ndarray, int]]] = {}
    for s in range(size):
        c = int(counts[s])
        sigma = n - 2 * bin(s).count("1")
        pc, _ = _rank_within_popcount(c)
        for p in range(c + 1):
            g = (sigma, sigma + 2 * (c - 2 * p))
            offsets[s][p] = block_sizes.get(g, 0)
            block_sizes[g] = offsets[s][p] + comb(c, p)
            parts.setdefault(g, []).append((s, np.nonzero(pc == p)[0], c))

    bases = {}
    for g, plist in parts.items():
        states = np.concatenate([np.full(len(m), s, dtype=np.int64) for s, m, _ in plist])
        masks = np.concatenate([m for _, m, _ in plist]).astype(np.int64)
        ccount = np.concatenate([np.full(len(m), c, dtype=np.int64) for _, m, c in plist])
        bases[g] = GradedBasis(g, n, states, masks, ccount)

    rows_acc: list[np.ndarray] = []
    cols_acc: list[np.ndarray] = []
    vals_acc: list[np.ndarray] = []
    a_acc: list[np.ndarray] = []
    b_acc: list[np.ndarray] = []

    for s in range(size):
        c = int(counts[s])
        lab_s = labels[s]
        nc_s = c - free
        sigma = n - 2 * bin(s).count("1")
        pc_s, rk_s = _rank_within_popcount(c)
        masks = np.arange(1 << c, dtype=np.int64)
        bits = [(masks >> (c - 1 - i)) & 1 for i in range(c)]
        src_off = np.array([offsets[s][p] for p in range(c + 1)], dtype=np.int64)
        col = src_off[pc_s] + rk_s
        b_src = sigma + 2 * (c - 2 * pc_s)
        # representative arc for each arc-circle of s
        rep = {}
        for i, lab in enumerate(lab_s.tolist()):
            rep.setdefault(lab, i)
        for v in range(n):
            bit = 1 << (n - 1 - v)
            if s & bit:
                continue
            t = s | bit
            ct = int(counts[t])
            lab_t = labels[t]
            nc_t = ct - free
            sgn = -1 if bin(s & (bit - 1)).count("1") % 2 else 1
            slots = table.slot_arcs[v]
            c12, c34 = int(lab_s[slots[0]]), int(lab_s[slots[2]])
            cmap = {}
            for i in range(nc_s):
                if i != c12 and i != c34:
                    cmap[i] = int(lab_t[rep[i]])
            for f in range(free):
                cmap[nc_s + f] = nc_t + f
            base = np.zeros(1 << c, dtype=np.int64)
            for i, j in cmap.items():
                base |= bits[i] << (ct - 1 - j)
            pc_t, rk_t = _rank_within_popcount(ct)
            tgt_off = np.array([offsets[t][p] for p in range(ct + 1)], dtype=np.int64)
            if c12 != c34:
                tc = int(lab_t[slots[0]])
                bi, bj = bits[c12], bits[c34]
                ok = (bi | bj) == 1
                tmask = base | ((bi & bj) << (ct - 1 - tc))
                targets = [(ok, tmask)]
            else:
                t1, t2 = int(lab_t[slots[0]]), int(lab_t[slots[1]])
                bi = bits[c12]
                plus = bi == 0
                minus = ~plus
                targets = [
                    (plus, base),
                    (minus, base | (1 << (ct - 1 - t2))),
                    (minus, base | (1 << (ct - 1 - t1))),
                ]
            for ok, tmask in targets:
                if not ok.any():
                    continue
                tm = tmask[ok]
                rows_acc.append(tgt_off[pc_t[tm]] + rk_t[tm])
                cols_acc.append(col[ok])
                vals_acc.append(np.full(len(tm), sgn, dtype=np.int64))
                a_acc.append(np.full(len(tm), sigma, dtype=np.int64))
                b_acc.append(b_src[ok])

    differentials: dict[Grading, IntegerMatrix] = {}
    if rows_acc:
        rows = np.concatenate(rows_acc)
        cols = np.concatenate(cols_acc)
        vals = np.concatenate(vals_acc)
        aa = np.concatenate(a_acc)
        bb = np.concatenate(b_acc)
        order = np.lexsort((bb, aa))
        rows, cols, vals, aa, bb = rows[order], cols[order], vals[order], aa[order], bb[order]
        keys = np.stack([aa, bb], axis=1)
        cut = np.nonzero(np.any(np.diff(keys, axis=0) != 0, axis=1))[0] + 1
        starts = np.concatenate([[0], cut])
        ends = np.concatenate([cut, [len(rows)]])
        for lo, hi in zip(starts.tolist(), ends.tolist()):
            a, b = int(aa[lo]), int(bb[lo])
            differentials[a, b] = IntegerMatrix.from_int64_triplets(
                block_sizes.get((a - 2, b), 0), block_sizes[a, b],
                rows[lo:hi], cols[lo:hi], vals[lo:hi])
    return BigradedComplex(bases, differentials, n)


def t_sign(S: EnhancedState, v: int) -> int:
    """Number of crossings after ``v`` that carry a B marker in ``S``."""
    markers = S.state.markers
    if not 0 <= v < len(markers):
        raise ValueError(f"crossing {v} out of range")
    return sum(1 for m in markers[v + 1:] if m is Marker.B)


def incidence(d: LinkDiagram, S: EnhancedState, S2: EnhancedState) -> int:
    """Incidence number (0 or 1) of S and S2, checked literally.

    S2 must differ from S at exactly one crossing, which goes A -> B, tau
    must rise by one, and every circle away from that crossing must keep
    its sign.
    """
    n = d.n_crossings
    if len(S.state) != n or len(S2.state) != n:
        raise ValueError("states do not belong to this diagram")
    diff = [k for k in range(n) if S.state.markers[k] != S2.state.markers[k]]
    if len(diff) != 1:
        return 0
    v = diff[0]
    if S.state.markers[v] is not Marker.A:
        return 0
    cs, cs2 = smooth(d, S.state), smooth(d, S2.state)
    if len(S.signs) != cs.circle_count or len(S2.signs) != cs2.circle_count:
        raise ValueError("sign vectors do not match the circle systems")
    if S2.tau != S.tau + 1:
        return 0
    touched = {cs.circle_of_slot[v, s] for s in range(4)}
    where2 = {arcs: i for i, arcs in enumerate(cs2.circles) if arcs}
    n_arc1 = sum(1 for arcs in cs.circles if arcs)
    n_arc2 = len(where2)
    for i, arcs in enumerate(cs.circles):
        if i in touched:
            continue
        j = where2[arcs] if arcs else n_arc2 + (i - n_arc1)
        if S.signs[i] != S2.signs[j]:
            return 0
    return 1


def verify_dd_zero(c: BigradedComplex) -> bool:
    """True when every composable pair of differentials multiplies to zero."""
    for (a, b), m in c.differentials.items():
        nxt = c.differentials.get((a - 2, b))
        if nxt is None:
            continue
        if not (nxt @ m).is_zero():
            return False
    return True


def direct_sum(c1: BigradedComplex, c2: BigradedComplex) -> BigradedComplex:
    """Block direct sum; bases of ``c2`` follow those of ``c1`` in each grading.

    Basis bookkeeping of the summands is not carried over; only dimensions
    and differentials are meaningful in the result.
    """
    bases = {}
    for g in set(c1.bases) | set(c2.bases):
        n1, n2 = c1.dim(*g), c2.dim(*g)
        z = np.zeros(n1 + n2, dtype=np.int64)
        bases[g] = GradedBasis(g, 0, z, z.copy(), z.copy())
    diffs = {}
    for (a, b) in set(c1.differentials) | set(c2.differentials):
        m1, m2 = c1.differential(a, b), c2.differential(a, b)
        r1, c1n = m1.shape
        r = [i for i, _, _ in m1.triplets()] + [i + r1 for i, _, _ in m2.triplets()]
        cc = [j for _, j, _ in m1.triplets()] + [j + c1n for _, j, _ in m2.triplets()]
        v = [x for _, _, x in m1.triplets()] + [x for _, _, x in m2.triplets()]
        diffs[a, b] = IntegerMatrix.from_triplets(r1 + m2.rows, c1n + m2.cols, r, cc, v)
    return BigradedComplex(bases, diffs, max(c1.n_crossings, c2.n_crossings))


def dump_triplets(c: BigradedComplex) -> str:
    """Sparse text dump: ``# dim a b size`` headers, then ``a b row col value``."""
    lines = [f"# dim {a} {b} {c.dim(a, b)}" for a, b in c.gradings]
    for (a, b) in sorted(c.differentials, key=lambda g: (-g[1], -g[0])):
        for i, j, x in c.differentials[a, b].triplets():
            lines.append(f"{a} {b} {i} {j} {x}")
    return "\n".join(lines) + "\n"


def parse_triplets(text: str) -> BigradedComplex:
    """Inverse of :func:`dump_triplets`; sizes default to the largest index seen."""
    dims: dict[Grading, int] = {}
    entries: dict[Grading, list[tuple[int, int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tok = line[1:].split()
            if len(tok) == 4 and tok[0] == "dim":
                dims[int(tok[1]), int(tok[2])] = int(tok[3])
            continue
        tok = line.split()
        if len(tok) != 5:
            raise ValueError(f"line {lineno}: expected 'a b row col value'")
        a, b, i, j, x = (int(t) for t in tok)
        entries.setdefault((a, b), []).append((i, j, x))
        dims[a, b] = max(dims.get((a, b), 0), j + 1)
        dims[a - 2, b] = max(dims.get((a - 2, b), 0), i + 1)
    bases = {}
    for g, size in dims.items():
        z = np.zeros(size, dtype=np.int64)
        bases[g] = GradedBasis(g, 0, z, z.copy(), z.copy())
    diffs = {}
    for (a, b), trip in entries.items():
        diffs[a, b] = IntegerMatrix.from_triplets(
            dims[a - 2, b], dims[a, b], [t[0] for t in trip], [t[1] for t in trip], [t[2] for t in trip])
    return BigradedComplex(bases, diffs, 0)


def gradings_of(states: Iterable[EnhancedState]) -> set[Grading]:
    return {S.bigrading for S in states}
