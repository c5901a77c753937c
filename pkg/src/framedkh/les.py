"""The skein long exact sequence of framed Khovanov homology.

Fix a crossing v. Enhanced states with a B marker at v span a subcomplex
(the differential only turns A into B), and those with an A marker span
the quotient. Up to the grading shifts (+1, +1) and (-1, -1) these are the
complexes of the B- and A-smoothed diagrams, giving

    ... -> H_(a+1,b+1)(D_B) -alpha*-> H_(a,b)(D) -beta*-> H_(a-1,b-1)(D_A)
        -conn-> H_(a-1,b+1)(D_B) -> ...

Everything here is indexed by the parent grading (a, b): the subcomplex
node at (a, b) is H_(a+1,b+1)(D_B) and the quotient node is H_(a-1,b-1)(D_A).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .complex import BigradedComplex, GradedBasis, Grading, build_complex
from .diagram import LinkDiagram, smooth_crossing
from .homology import AbelianGroup, ChainComplexError
from .linalg import IntegerMatrix, invariant_factors, kernel_basis, matmul_dense, smith_normal_form
from .resolution import StateTable

__all__ = [
    "ComplexSplit",
    "HomologyPresentation",
    "InducedMap",
    "LESNode",
    "ExactnessReport",
    "BetaStatus",
    "ConnectingProbe",
    "SplitError",
    "split_at_crossing",
    "presentation",
    "induced_maps",
    "verify_les_exact",
    "beta_status",
    "probe_connecting",
    "is_mono",
    "is_epi",
    "induced_map",
    "boundaries_map_to_boundaries",
    "compose",
    "compositions_vanish",
    "connecting_probes",
]

SUB, PARENT, QUOT = "B", "D", "A"
_SHIFT = {SUB: (1, 1), PARENT: (0, 0), QUOT: (-1, -1)}


class SplitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the split


@dataclass
class ComplexSplit:
    """Subcomplex (B at v) and quotient (A at v) of a parent complex.

    ``sub_index[g]`` / ``quot_index[g]`` give the parent basis positions of
    the sub / quotient basis at parent grading ``g``; ``connecting[g]`` is
    the chain-level connecting map quotient(g) -> sub(a-2, b).
    """

    crossing: int
    parent: BigradedComplex
    sub_B: BigradedComplex
    quotient_A: BigradedComplex
    sub_index: dict[Grading, np.ndarray]
    quot_index: dict[Grading, np.ndarray]
    connecting: dict[Grading, IntegerMatrix]
    diagram_B: LinkDiagram | None = None
    diagram_A: LinkDiagram | None = None

    def complex(self, which: str) -> BigradedComplex:
        return {SUB: self.sub_B, PARENT: self.parent, QUOT: self.quotient_A}[which]

    @cached_property
    def _presentations(self) -> dict:
        return {}

    def homology_at(self, which: str, g: Grading) -> "HomologyPresentation":
        key = (which, g)
        if key not in self._presentations:
            self._presentations[key] = presentation(self.complex(which), g)
        return self._presentations[key]

    def parent_gradings(self) -> list[Grading]:
        keys = set(self.parent.bases)
        return sorted(keys, key=lambda g: (-g[1], -g[0]))


def _sub_basis(basis: GradedBasis, idx: np.ndarray) -> GradedBasis:
    return GradedBasis(basis.bigrading, basis.n_crossings, basis.states[idx],
                       basis.masks[idx], basis.circle_counts[idx])


def split_at_crossing(d: LinkDiagram, v: int, complex: BigradedComplex | None = None,
                      verify: bool = True) -> ComplexSplit:
    """Split the complex of ``d`` at crossing ``v``.

    Checks that the B part is closed under the differential. With
    ``verify=True`` it also checks that the two parts are, after the grading
    shifts, the complexes of the smoothed diagrams (basis bijection with
    matching differentials; the subcomplex matches up to the basis signs
    (-1)^(number of B markers before v)).
    """
    if not 0 <= v < d.n_crossings:
        raise SplitError(f"crossing {v} out of range 0..{d.n_crossings - 1}")
    parent = complex if complex is not None else build_complex(d)
    sub_index, quot_index = {}, {}
    sub_bases, quot_bases = {}, {}
    for g, basis in parent.bases.items():
        mask = basis.marker_at(v)
        si, qi = np.nonzero(mask)[0], np.nonzero(~mask)[0]
        sub_index[g], quot_index[g] = si, qi
        if len(si):
            sub_bases[g] = _sub_basis(basis, si)
        if len(qi):
            quot_bases[g] = _sub_basis(basis, qi)
    empty = np.zeros(0, dtype=np.int64)
    sub_d, quot_d, conn = {}, {}, {}
    for (a, b), m in parent.differentials.items():
        tgt = (a - 2, b)
        s_src, s_tgt = sub_index.get((a, b), empty), sub_index.get(tgt, empty)
        q_src, q_tgt = quot_index.get((a, b), empty), quot_index.get(tgt, empty)
        leak = m.submatrix(q_tgt, s_src)
        if not leak.is_zero():
            raise SplitError(f"B-marker part is not closed under the differential at {(a, b)}")
        if len(s_src):
            sub_d[a, b] = m.submatrix(s_tgt, s_src)
        if len(q_src):
            quot_d[a, b] = m.submatrix(q_tgt, q_src)
            conn[a, b] = m.submatrix(s_tgt, q_src)
    n = parent.n_crossings
    split = ComplexSplit(
        v, parent,
        BigradedComplex(sub_bases, sub_d, n),
        BigradedComplex(quot_bases, quot_d, n),
        sub_index, quot_index, conn,
    )
    for g in parent.bases:
        if len(sub_index[g]) + len(quot_index[g]) != parent.dim(*g):
            raise SplitError(f"chain groups do not add up at {g}")
    if verify:
        split.diagram_B, amap_b = smooth_crossing(d, v, "B")
        split.diagram_A, amap_a = smooth_crossing(d, v, "A")
        _check_smoothing(d, v, split.sub_B, split.diagram_B, amap_b, SUB)
        _check_smoothing(d, v, split.quotient_A, split.diagram_A, amap_a, QUOT)
    return split


def _circle_permutation(d: LinkDiagram, table: StateTable, s: int, small: LinkDiagram,
                        small_table: StateTable, s_small: int, amap: dict[int, int]) -> list[int]:
    """Parent circle id -> circle id in the smoothed diagram."""
    count, labels = table.resolve(s)
    count2, labels2 = small_table.resolve(s_small)
    if count != count2:
        raise SplitError("circle counts differ between a state and its smoothing")
    nc = count - d.free_loops
    nc2 = count2 - small.free_loops
    perm = [-1] * count
    for i, arc in enumerate(table.arcs):
        c = labels[i]
        if perm[c] >= 0:
            continue
        new = amap[arc]
        if new > 0:
            perm[c] = labels2[small_table.arc_index[new]]
        else:
            perm[c] = nc2 + d.free_loops + (-new - 1)
    for f in range(d.free_loops):
        perm[nc + f] = nc2 + f
    if sorted(perm) != list(range(count)):
        raise SplitError("circle correspondence is not a bijection")
    return perm


def _check_smoothing(d: LinkDiagram, v: int, part: BigradedComplex, small: LinkDiagram,
                     amap: dict[int, int], which: str) -> None:
    n = d.n_crossings
    target = build_complex(small)
    shift = _SHIFT[which]
    table, small_table = StateTable(d), StateTable(small)
    low = (1 << (n - 1 - v)) - 1
    perms: dict[int, list[int]] = {}
    maps: dict[Grading, np.ndarray] = {}
    signs: dict[Grading, np.ndarray] = {}
    for g, basis in part.bases.items():
        tg = (g[0] + shift[0], g[1] + shift[1])
        tb = target.bases.get(tg)
        if tb is None or len(tb) != len(basis):
            raise SplitError(f"{which}-part at {g} does not match the smoothed diagram at {tg}")
        pos = np.empty(len(basis), dtype=np.int64)
        sg = np.ones(len(basis), dtype=np.int64)
        for k, (s, m, c) in enumerate(zip(basis.states.tolist(), basis.masks.tolist(),
                                          basis.circle_counts.tolist())):
            s_small = ((s >> (n - v)) << (n - 1 - v)) | (s & low)
            if s not in perms:
                perms[s] = _circle_permutation(d, table, s, small, small_table, s_small, amap)
            perm = perms[s]
            m2 = 0
            for i in range(c):
                if m >> (c - 1 - i) & 1:
                    m2 |= 1 << (c - 1 - perm[i])
            pos[k] = tb.position[s_small, m2]
            if which == SUB and bin(s >> (n - v)).count("1") % 2:
                sg[k] = -1
        if sorted(pos.tolist()) != list(range(len(tb))):
            raise SplitError(f"basis map at {g} is not a bijection")
        maps[g], signs[g] = pos, sg
    for (a, b), m in part.differentials.items():
        tg = (a + shift[0], b + shift[1])
        expected = target.differential(*tg)
        src_pos, src_sg = maps[a, b], signs[a, b]
        tgt_pos, tgt_sg = maps.get((a - 2, b)), signs.get((a - 2, b))
        got = {}
        for i, j, x in m.triplets():
            got[int(tgt_pos[i]), int(src_pos[j])] = x * int(tgt_sg[i]) * int(src_sg[j])
        if got != expected.entries():
            raise SplitError(f"{which}-part differential at {(a, b)} differs from the smoothed diagram's")


# ---------------------------------------------------------------------------
# homology with explicit generators


@dataclass
class HomologyPresentation:
    """H at one grading as Z^free + torsion, with chain-level generators.

    ``orders[i]`` is 0 for a free generator and the order of a torsion one.
    """

    grading: Grading
    dim: int
    generators: list[list[int]]
    orders: list[int]
    _out: IntegerMatrix | None = None
    _vinv_tail: list[list[int]] = field(default_factory=list)
    _ux_rows: list[list[int]] = field(default_factory=list)

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(sum(1 for o in self.orders if o == 0),
                            tuple(sorted(o for o in self.orders if o)))

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    def coordinates(self, z: list[int]) -> list[int]:
        """Coordinates of a cycle on the generators (torsion ones reduced)."""
        if len(z) != self.dim:
            raise ValueError("vector has the wrong length")
        if self._out is not None and any(self._out.matvec(z)):
            raise ChainComplexError(f"vector is not a cycle at {self.grading}")
        y = [sum(r * x for r, x in zip(row, z)) for row in self._vinv_tail]
        out = []
        for row, o in zip(self._ux_rows, self.orders):
            c = sum(r * x for r, x in zip(row, y))
            out.append(c % o if o else c)
        return out


def presentation(c: BigradedComplex, g: Grading) -> HomologyPresentation:
    """Homology of ``c`` at ``g`` with generators and a coordinate map."""
    a, b = g
    n = c.dim(a, b)
    if n == 0:
        return HomologyPresentation(g, 0, [], [])
    d_out = c.differential(a, b)
    d_in = c.differential(a + 2, b)
    snf_out = smith_normal_form(d_out, inverses=True)
    r = snf_out.rank
    K = kernel_basis(d_out, snf_out)  # k vectors of length n
    k = len(K)
    vinv_tail = snf_out.V_inv[r:]
    vinv_head = snf_out.V_inv[:r]
    m = d_in.cols
    din = d_in.to_dense()
    X = matmul_dense(vinv_tail, din) if m else [[] for _ in vinv_tail]
    if m and vinv_head and any(any(row) for row in matmul_dense(vinv_head, din)):
        raise ChainComplexError(f"image of the incoming differential leaves the kernel at {g}")
    if k == 0:
        return HomologyPresentation(g, n, [], [], d_out, [], [])
    if m:
        snf_x = smith_normal_form(X, inverses=True)
        factors, Ux, Ux_inv = snf_x.invariant_factors, snf_x.U, snf_x.U_inv
    else:
        factors, Ux, Ux_inv = [], [[int(i == j) for j in range(k)] for i in range(k)], \
            [[int(i == j) for j in range(k)] for i in range(k)]
    keep = [i for i in range(k) if (factors[i] if i < len(factors) else 0) != 1]
    orders = [factors[i] if i < len(factors) else 0 for i in keep]
    rows = [Ux[i] for i in keep]
    cols = [[Ux_inv[t][i] for t in range(k)] for i in keep]
    gens = matmul_dense(cols, K) if keep else []
    return HomologyPresentation(g, n, gens, orders, d_out, vinv_tail, rows)


# ---------------------------------------------------------------------------
# induced maps


@dataclass
class InducedMap:
    """Matrix of a map on homology: column j is the image of source generator j."""

    kind: str  # "alpha", "beta" or "conn"
    source: tuple[str, Grading]
    target: tuple[str, Grading]
    matrix: list[list[int]]
    source_orders: list[int]
    target_orders: list[int]

    @property
    def rational_rank(self) -> int:
        """Rank after tensoring with Q: the free-to-free block."""
        rows = [i for i, o in enumerate(self.target_orders) if o == 0]
        cols = [j for j, o in enumerate(self.source_orders) if o == 0]
        if not rows or not cols:
            return 0
        return len(invariant_factors([[self.matrix[i][j] for j in cols] for i in rows]))

    def is_zero(self) -> bool:
        for i, o in enumerate(self.target_orders):
            for x in self.matrix[i]:
                if (x % o if o else x):
                    return False
        return True


def _chain_image(split: ComplexSplit, kind: str, g: Grading, x: list[int],
                 lift_noise: list[int] | None = None) -> tuple[str, Grading, list[int]]:
    a, b = g
    if kind == "alpha":
        out = [0] * split.parent.dim(a, b)
        for p, val in zip(split.sub_index[g].tolist(), x):
            out[p] = val
        return PARENT, g, out
    if kind == "beta":
        return QUOT, g, [x[p] for p in split.quot_index[g].tolist()]
    if kind == "conn":
        tgt = (a - 2, b)
        m = split.connecting.get(g)
        n_t = split.sub_B.dim(*tgt)
        out = m.matvec(x) if m is not None else [0] * n_t
        if lift_noise is not None:
            extra = split.sub_B.differential(a, b).matvec(lift_noise)
            out = [p + q for p, q in zip(out, extra)]
        return SUB, tgt, out
    raise ValueError(f"unknown map kind {kind!r}")


_SOURCE = {"alpha": SUB, "beta": PARENT, "conn": QUOT}


def induced_map(split: ComplexSplit, kind: str, g: Grading, rng: random.Random | None = None) -> InducedMap:
    """Map on homology out of the ``kind``-source node at parent grading ``g``.

    With ``rng`` the connecting map uses a randomly perturbed lift.
    """
    src = split.homology_at(_SOURCE[kind], g)
    cols = []
    tgt_which, tgt_g = None, None
    for gen in src.generators:
        noise = None
        if kind == "conn" and rng is not None:
            noise = [rng.randint(-3, 3) for _ in range(split.sub_B.dim(*g))]
        tgt_which, tgt_g, img = _chain_image(split, kind, g, gen, noise)
        tgt = split.homology_at(tgt_which, tgt_g)
        cols.append(tgt.coordinates(img))
    if tgt_which is None:
        tgt_which = {"alpha": PARENT, "beta": QUOT, "conn": SUB}[kind]
        tgt_g = (g[0] - 2, g[1]) if kind == "conn" else g
    tgt = split.homology_at(tgt_which, tgt_g)
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt.orders))]
    return InducedMap(kind, (_SOURCE[kind], g), (tgt_which, tgt_g), matrix, src.orders, tgt.orders)


def boundaries_map_to_boundaries(split: ComplexSplit, kind: str, g: Grading) -> bool:
    """Whether the chain map sends every boundary at ``g`` to a boundary."""
    src = split.complex(_SOURCE[kind])
    d_in = src.differential(g[0] + 2, g[1])
    for j in range(d_in.cols):
        col = d_in.column(j)
        x = [col.get(i, 0) for i in range(d_in.rows)]
        which, tg, img = _chain_image(split, kind, g, x)
        if any(split.homology_at(which, tg).coordinates(img)):
            return False
    return True


def compose(f: InducedMap, g: InducedMap) -> list[list[int]]:
    """Matrix of ``g`` after ``f``, reduced modulo the torsion orders of g's target."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: {f.target} is not {g.source}")
    rows, mid, cols = len(g.target_orders), len(f.target_orders), len(f.source_orders)
    out = []
    for i in range(rows):
        o = g.target_orders[i]
        row = []
        for j in range(cols):
            x = sum(g.matrix[i][k] * f.matrix[k][j] for k in range(mid))
            row.append(x % o if o else x)
        out.append(row)
    return out


def compositions_vanish(split: ComplexSplit, g: Grading) -> bool:
    """beta*.alpha*, conn.beta* and alpha*.conn all vanish around ``g``."""
    a, b = g
    alpha, beta, conn = (induced_map(split, k, g) for k in ("alpha", "beta", "conn"))
    alpha_next = induced_map(split, "alpha", (a - 2, b))
    for f, h in ((alpha, beta), (beta, conn), (conn, alpha_next)):
        if any(x for row in compose(f, h) for x in row):
            return False
    return True


def induced_maps(split: ComplexSplit) -> list[InducedMap]:
    """alpha*, beta* and the connecting map at every populated parent grading."""
    out = []
    for g in split.parent_gradings():
        for kind in ("alpha", "beta", "conn"):
            out.append(induced_map(split, kind, g))
    return out


# ---------------------------------------------------------------------------
# integral mono / epi


def is_epi(f: InducedMap) -> bool:
    """Whether the image plus the target relations span the target lattice."""
    rows = len(f.target_orders)
    if rows == 0:
        return True
    aug = [list(f.matrix[i]) + [f.target_orders[i] if k == i else 0 for k in range(rows)]
           for i in range(rows)]
    fac = invariant_factors(aug)
    return len(fac) == rows and all(d == 1 for d in fac)


def is_mono(f: InducedMap) -> bool:
    """Whether every source element mapping into the target relations is zero."""
    ns = len(f.source_orders)
    if ns == 0:
        return True
    rows = len(f.target_orders)
    if rows == 0:
        vectors = [[int(i == j) for i in range(ns)] for j in range(ns)]
    else:
        aug = [list(f.matrix[i]) + [-f.target_orders[i] if k == i else 0 for k in range(rows)]
               for i in range(rows)]
        vectors = [vec[:ns] for vec in kernel_basis(aug)]
    for x in vectors:
        for xi, o in zip(x, f.source_orders):
            if (xi % o if o else xi):
                return False
    return True


# ---------------------------------------------------------------------------
# exactness


@dataclass
class LESNode:
    space: str  # "B", "D" or "A"
    parent_grading: Grading
    group: AbelianGroup | None
    rank_in: int | None
    rank_out: int | None
    exact: bool
    note: str = ""

    @property
    def grading(self) -> Grading:
        s = _SHIFT[self.space]
        return self.parent_grading[0] + s[0], self.parent_grading[1] + s[1]

    def label(self) -> str:
        g = "?" if self.group is None else str(self.group)
        tag = {"B": "H_B", "D": "H", "A": "H_A"}[self.space]
        return f"{tag}{self.grading}[{g}]".replace(" ", "")


@dataclass
class ExactnessReport:
    diagram_crossings: int
    crossing: int
    sequences: dict[int, list[LESNode]]
    maps: dict[tuple[str, Grading], InducedMap | None] = field(default_factory=dict)

    @property
    def nodes(self) -> list[LESNode]:
        return [node for b in sorted(self.sequences, reverse=True) for node in self.sequences[b]]

    @property
    def failures(self) -> list[LESNode]:
        return [node for node in self.nodes if not node.exact]

    @property
    def exact(self) -> bool:
        return not self.failures

    def render(self) -> str:
        arrow = {"B": "a*", "D": "b*", "A": "conn"}
        lines = [f"long exact sequence at crossing {self.crossing}"]
        for b in sorted(self.sequences, reverse=True):
            seq = self.sequences[b]
            if all(node.group is not None and node.group.is_trivial for node in seq):
                continue
            lines.append(f"b = {b}:")
            for k in range(0, len(seq), 3):
                parts = []
                for node in seq[k:k + 3]:
                    mark = "" if node.exact else " !INEXACT"
                    parts.append(f"{node.label()}{mark}")
                    f = self.maps.get((node.space, node.parent_grading))
                    r = "?" if f is None else str(f.rational_rank)
                    parts.append(f"--{arrow[node.space]}(r={r})-->")
                lines.append("  " + " ".join(parts))
        lines.append("EXACT" if self.exact else f"NOT EXACT at {len(self.failures)} node(s)")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        nodes = []
        for node in self.nodes:
            nodes.append({
                "space": node.space,
                "a": node.grading[0], "b": node.grading[1],
                "parent_a": node.parent_grading[0], "parent_b": node.parent_grading[1],
                "group": None if node.group is None else str(node.group),
                "rank_in": node.rank_in, "rank_out": node.rank_out,
                "exact": node.exact, "note": node.note,
            })
        return json.dumps({"crossing": self.crossing, "exact": self.exact, "nodes": nodes},
                          separators=(",", ":"))


def verify_les_exact(d: LinkDiagram, v: int, complex: BigradedComplex | None = None) -> ExactnessReport:
    """Check rational exactness at every node of the sequence at crossing ``v``.

    A supplied ``complex`` is used in place of the diagram's own complex
    (for deliberately broken fixtures); nodes whose homology cannot be
    formed are reported as inexact.
    """
    split = split_at_crossing(d, v, complex=complex, verify=complex is None)
    by_b: dict[int, set[int]] = {}
    for (a, b) in split.parent.bases:
        by_b.setdefault(b, set()).add(a)
    maps: dict[tuple[str, Grading], InducedMap | None] = {}
    notes: dict[tuple[str, Grading], str] = {}
    groups: dict[tuple[str, Grading], AbelianGroup | None] = {}
    for b, a_set in by_b.items():
        for a in range(max(a_set), min(a_set) - 1, -2):
            g = (a, b)
            for which in (SUB, PARENT, QUOT):
                try:
                    groups[which, g] = split.homology_at(which, g).group
                except ChainComplexError as exc:
                    groups[which, g] = None
                    notes[which, g] = str(exc)
            for kind in ("alpha", "beta", "conn"):
                try:
                    maps[_SOURCE[kind], g] = induced_map(split, kind, g)
                except ChainComplexError as exc:
                    maps[_SOURCE[kind], g] = None
                    notes.setdefault((_SOURCE[kind], g), str(exc))
    sequences: dict[int, list[LESNode]] = {}
    for b, a_set in by_b.items():
        order = []
        for a in range(max(a_set), min(a_set) - 1, -2):
            order.extend([(SUB, (a, b)), (PARENT, (a, b)), (QUOT, (a, b))])
        seq = []
        for k, key in enumerate(order):
            incoming = maps.get(order[k - 1]) if k > 0 else None
            outgoing = maps.get(key)
            grp = groups.get(key)
            r_in = 0 if k == 0 else (incoming.rational_rank if incoming else None)
            r_out = outgoing.rational_rank if outgoing else None
            if k == len(order) - 1 and outgoing is not None and outgoing.target[1] not in split.parent.bases:
                r_out = outgoing.rational_rank
            if grp is None or r_in is None or r_out is None:
                exact = False
            else:
                exact = r_in + r_out == grp.free_rank
            seq.append(LESNode(key[0], key[1], grp, r_in, r_out, exact, notes.get(key, "")))
        sequences[b] = seq
    return ExactnessReport(d.n_crossings, v, sequences, maps)


# ---------------------------------------------------------------------------
# probes


@dataclass
class BetaStatus:
    grading: Grading
    b_before_zero: bool
    b_after_zero: bool
    prediction: str  # "iso", "mono", "epi" or "none"
    observed_mono: bool
    observed_epi: bool

    @property
    def observed(self) -> str:
        if self.observed_mono and self.observed_epi:
            return "iso"
        if self.observed_mono:
            return "mono"
        if self.observed_epi:
            return "epi"
        return "none"

    @property
    def holds(self) -> bool:
        if self.prediction == "iso":
            return self.observed_mono and self.observed_epi
        if self.prediction == "mono":
            return self.observed_mono
        if self.prediction == "epi":
            return self.observed_epi
        return True


def beta_status(d: LinkDiagram, v: int, a: int, b: int,
                 split: ComplexSplit | None = None) -> BetaStatus:
    """Predict and observe beta*: H_(a,b)(D) -> H_(a-1,b-1)(D_A).

    The flanking groups are H_(a+1,b+1)(D_B) (before) and H_(a-1,b+1)(D_B)
    (after the connecting map); a zero before forces a monomorphism, a zero
    after forces an epimorphism.
    """
    split = split or split_at_crossing(d, v)
    before = split.homology_at(SUB, (a, b)).group.is_trivial
    after = split.homology_at(SUB, (a - 2, b)).group.is_trivial
    prediction = "iso" if before and after else "mono" if before else "epi" if after else "none"
    beta = induced_map(split, "beta", (a, b))
    return BetaStatus((a, b), before, after, prediction, is_mono(beta), is_epi(beta))


@dataclass
class ConnectingProbe:
    parent_grading: Grading
    source: AbelianGroup  # H_(a-1,b-1)(D_A)
    target: AbelianGroup  # H_(a-1,b+1)(D_B)
    map: InducedMap

    @property
    def degree(self) -> int | None:
        """|multiplier| when both ends are Z, else None."""
        if self.map.source_orders == [0] and self.map.target_orders == [0]:
            return abs(self.map.matrix[0][0])
        return None


def probe_connecting(d: LinkDiagram, v: int, a: int, b: int,
                     split: ComplexSplit | None = None) -> ConnectingProbe:
    """Connecting map out of the quotient node at parent grading (a, b)."""
    split = split or split_at_crossing(d, v, verify=False)
    f = induced_map(split, "conn", (a, b))
    src = split.homology_at(QUOT, (a, b)).group
    tgt = split.homology_at(SUB, (a - 2, b)).group
    return ConnectingProbe((a, b), src, tgt, f)


def connecting_probes(d: LinkDiagram, v: int) -> list[ConnectingProbe]:
    """Every connecting map whose source and target are both Z."""
    split = split_at_crossing(d, v, verify=False)
    out = []
    for g in split.parent_gradings():
        src = split.homology_at(QUOT, g).group
        tgt = split.homology_at(SUB, (g[0] - 2, g[1])).group
        if src == AbelianGroup(1) and tgt == AbelianGroup(1):
            out.append(probe_connecting(d, v, *g, split=split))
    return out
