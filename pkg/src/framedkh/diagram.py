"""Unoriented link diagrams in planar-diagram (PD) form.

A crossing is a 4-tuple of arc labels read counterclockwise starting from
the incoming under-strand, so the under-strand sits in slots 1 and 3 and
the over-strand in slots 2 and 4. The A-smoothing joins slots 1-2 and 3-4,
the B-smoothing joins slots 1-4 and 2-3. Rotating a crossing by two slots
gives the same unoriented crossing. Crossingless circles are kept as a
counter (``free_loops``) instead of arcs.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Crossing",
    "LinkDiagram",
    "OrientedDiagram",
    "DiagramError",
    "PDSyntaxError",
    "parse_pd",
    "emit_pd",
    "read_pd",
    "torus_diagram",
    "framed_unknot",
    "braid_closure",
    "apply_r1",
    "mirror",
    "reorder",
    "canonical_form",
    "smooth_crossing",
    "orient",
    "writhe",
    "parse_orientation",
    "emit_orientation",
]

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


class DiagramError(ValueError):
    pass


class PDSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    index: int


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")
        counts: Counter[int] = Counter()
        for k, c in enumerate(self.crossings):
            if c.index != k:
                raise DiagramError(f"crossing at position {k} has index {c.index}")
            if len(c.slots) != 4:
                raise DiagramError(f"crossing {k} does not have four slots")
            for a in c.slots:
                if not isinstance(a, int) or a <= 0:
                    raise DiagramError(f"crossing {k}: arc label {a!r} is not a positive integer")
            counts.update(c.slots)
        bad = sorted(a for a, n in counts.items() if n != 2)
        if bad:
            raise DiagramError(
                "arcs must occur exactly twice; offending arcs: "
                + ", ".join(f"{a} (x{counts[a]})" for a in bad))

    @classmethod
    def from_pd(cls, codes: Iterable[Sequence[int]], free_loops: int = 0) -> "LinkDiagram":
        return cls(tuple(Crossing(tuple(int(x) for x in c), k) for k, c in enumerate(codes)),
                   free_loops)

    @property
    def pd(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(c.slots for c in self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for c in self.crossings for a in c.slots}))

    def positions(self, arc: int) -> list[tuple[int, int]]:
        """(crossing, slot) positions of an arc, in file order."""
        return [(k, s) for k, c in enumerate(self.crossings)
                for s, a in enumerate(c.slots) if a == arc]

    def __len__(self) -> int:
        return len(self.crossings)


# ---------------------------------------------------------------------------
# PD text format

_TOKEN = re.compile(r"\S+")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text: ``X a b c d`` crossings, ``L k`` free loops, ``#`` comments."""
    codes: list[tuple[int, ...]] = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        head, col = tokens[0]
        args = tokens[1:]
        if head == "X":
            if len(args) != 4:
                where = args[4][1] if len(args) > 4 else len(line.rstrip()) + 1
                raise PDSyntaxError(f"X expects 4 arc labels, got {len(args)}", lineno, where)
            labels = []
            for tok, c in args:
                value = _parse_int(tok, lineno, c)
                if value <= 0:
                    raise PDSyntaxError(f"arc label must be positive, got {value}", lineno, c)
                labels.append(value)
            codes.append(tuple(labels))
        elif head == "L":
            if len(args) != 1:
                raise PDSyntaxError("L expects one count", lineno, col)
            value = _parse_int(args[0][0], lineno, args[0][1])
            if value < 0:
                raise PDSyntaxError("free loop count must be non-negative", lineno, args[0][1])
            loops += value
        else:
            raise PDSyntaxError(f"unknown directive {head!r}", lineno, col)
    return LinkDiagram.from_pd(codes, loops)


def _parse_int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PDSyntaxError(f"expected an integer, got {tok!r}", line, col) from None


def emit_pd(d: LinkDiagram) -> str:
    lines = [f"X {a} {b} {c} {e}" for a, b, c, e in d.pd]
    if d.free_loops:
        lines.append(f"L {d.free_loops}")
    return "\n".join(lines) + "\n"


def read_pd(path: str | Path) -> LinkDiagram:
    return parse_pd(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# generators


def braid_closure(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; generator ``i`` is sigma_i, ``-i`` its inverse.

    Positive generators are positive crossings, so the A-smoothing of each
    follows the braid strands. Strands never touched become free loops.
    """
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
    current = list(range(1, strands + 1))
    fresh = strands + 1
    codes = []
    for g in word:
        i = abs(g) - 1
        bl, br = current[i], current[i + 1]
        tl, tr = fresh, fresh + 1
        fresh += 2
        if g > 0:
            # over-strand runs bottom-left to top-right
            codes.append([br, tr, tl, bl])
        else:
            codes.append([bl, br, tr, tl])
        current[i], current[i + 1] = tl, tr
    rename = {}
    loops = 0
    for pos, final in enumerate(current):
        start = pos + 1
        if final == start:
            loops += 1
        else:
            rename[final] = start
    codes = [[rename.get(a, a) for a in c] for c in codes]
    return canonical_form(LinkDiagram.from_pd(codes, loops))


def torus_diagram(n: int) -> LinkDiagram:
    """Standard diagram of T(2, n): closure of sigma_1^n on two strands."""
    if n < 1:
        raise DiagramError(f"torus_diagram needs n >= 1, got {n}")
    return braid_closure([1] * n, strands=2)


def framed_unknot(k: int) -> LinkDiagram:
    """Unknot diagram with |k| kinks of sign(k); k = 0 is a plain circle."""
    m = abs(k)
    if m == 0:
        return LinkDiagram((), 1)
    codes = []
    for j in range(m):
        loop, out, inc = 2 * j + 1, 2 * j + 2, 2 * ((j - 1) % m) + 2
        if k > 0:
            codes.append((loop, loop, out, inc))
        else:
            codes.append((loop, out, inc, loop))
    return LinkDiagram.from_pd(codes)


def apply_r1(d: LinkDiagram, arc: int | None, sign: int) -> LinkDiagram:
    """Insert one kink of the given sign on ``arc`` (``None`` uses a free loop).

    The new crossing is appended last in the ordering.
    """
    if sign not in (1, -1):
        raise DiagramError("sign must be +1 or -1")
    top = max(d.arcs, default=0)
    loop, new = top + 1, top + 2
    if arc is None:
        if d.free_loops == 0:
            raise DiagramError("diagram has no free loop to kink")
        codes = [list(c) for c in d.pd]
        inc = out = new
        loops = d.free_loops - 1
    else:
        pos = d.positions(arc)
        if not pos:
            raise DiagramError(f"unknown arc {arc}")
        codes = [list(c) for c in d.pd]
        k, s = pos[1]
        codes[k][s] = new
        inc, out = arc, new
        loops = d.free_loops
    if sign > 0:
        codes.append([loop, loop, out, inc])
    else:
        codes.append([loop, out, inc, loop])
    return LinkDiagram.from_pd(codes, loops)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing."""
    return LinkDiagram.from_pd([(b, c, e, a) for a, b, c, e in d.pd], d.free_loops)


def reorder(d: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """Same diagram with crossings listed in ``order`` (old indices)."""
    if sorted(order) != list(range(d.n_crossings)):
        raise DiagramError("order must be a permutation of the crossing indices")
    return LinkDiagram.from_pd([d.pd[k] for k in order], d.free_loops)


def canonical_form(d: LinkDiagram) -> LinkDiagram:
    """Relabel arcs 1, 2, ... in order of first appearance."""
    rename: dict[int, int] = {}
    for c in d.pd:
        for a in c:
            if a not in rename:
                rename[a] = len(rename) + 1
    return LinkDiagram.from_pd([[rename[a] for a in c] for c in d.pd], d.free_loops)


def smooth_crossing(d: LinkDiagram, v: int, marker: str) -> tuple[LinkDiagram, dict[int, int]]:
    """Remove crossing ``v`` by its A- or B-smoothing.

    Returns the smaller diagram and a map from each old arc to its new arc
    label, or to ``-(j + 1)`` when the arc closed up into the new free loop
    number ``j`` (counting after the existing free loops).
    """
    if not 0 <= v < d.n_crossings:
        raise DiagramError(f"crossing {v} out of range 0..{d.n_crossings - 1}")
    if marker not in ("A", "B"):
        raise DiagramError(f"marker must be 'A' or 'B', got {marker!r}")
    pairs = A_PAIRS if marker == "A" else B_PAIRS
    slots = d.pd[v]
    parent = {a: a for a in slots}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        ri, rj = find(slots[i]), find(slots[j])
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    rest = [c for k, c in enumerate(d.pd) if k != v]
    elsewhere = Counter(a for c in rest for a in c)
    groups: dict[int, list[int]] = {}
    for a in set(slots):
        groups.setdefault(find(a), []).append(a)
    amap: dict[int, int] = {}
    loops = d.free_loops
    for root in sorted(groups):
        members = groups[root]
        if sum(elsewhere[a] for a in members) == 0:
            loops += 1
            for a in members:
                amap[a] = -(loops - d.free_loops)
        else:
            for a in members:
                amap[a] = root
    for c in rest:
        for a in c:
            amap.setdefault(a, a)
    codes = [[amap[a] for a in c] for c in rest]
    return LinkDiagram.from_pd(codes, loops), amap


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True)
class OrientedDiagram:
    """A diagram plus a direction for every arc.

    ``+1`` means the arc runs from its first occurrence (in file order,
    crossing then slot) to its second; ``-1`` the reverse.
    """

    base: LinkDiagram
    arc_directions: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        arcs = set(self.base.arcs)
        if set(self.arc_directions) != arcs:
            missing = sorted(arcs - set(self.arc_directions))
            extra = sorted(set(self.arc_directions) - arcs)
            raise DiagramError(f"orientation mismatch: missing {missing}, unknown {extra}")
        if any(v not in (1, -1) for v in self.arc_directions.values()):
            raise DiagramError("arc directions must be +1 or -1")
        self.crossing_signs()

    def _incoming(self) -> dict[tuple[int, int], bool]:
        inc = {}
        for a, direction in self.arc_directions.items():
            first, second = self.base.positions(a)
            inc[first] = direction < 0
            inc[second] = direction > 0
        return inc

    def crossing_signs(self) -> list[int]:
        inc = self._incoming()
        signs = []
        for k in range(self.base.n_crossings):
            i = [inc[k, s] for s in range(4)]
            if i[0] == i[2] or i[1] == i[3]:
                raise DiagramError(f"inconsistent orientation at crossing {k}")
            signs.append(1 if (i[0] and i[3]) or (i[2] and i[1]) else -1)
        return signs


def writhe(od: OrientedDiagram) -> int:
    return sum(od.crossing_signs())


def _components(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Strand components as position walks; each entry is (arc, direction)."""
    seen: set[int] = set()
    comps = []
    for arc in d.arcs:
        if arc in seen:
            continue
        walk = []
        a, direction = arc, 1
        while a not in seen:
            seen.add(a)
            walk.append((a, direction))
            first, second = d.positions(a)
            k, s = second if direction > 0 else first
            s2 = (s + 2) % 4
            nxt = d.pd[k][s2]
            direction = 1 if d.positions(nxt)[0] == (k, s2) else -1
            a = nxt
        comps.append(walk)
    return comps


def orient(d: LinkDiagram, reverse: Iterable[int] = ()) -> OrientedDiagram:
    """Orient every strand component; components listed in ``reverse`` flip."""
    flip = set(reverse)
    dirs = {}
    for idx, walk in enumerate(_components(d)):
        for a, direction in walk:
            dirs[a] = -direction if idx in flip else direction
    return OrientedDiagram(d, dirs)


def parse_orientation(text: str, d: LinkDiagram) -> OrientedDiagram:
    """Parse ``O arc +|-`` lines into an oriented diagram."""
    dirs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        if tokens[0][0] != "O" or len(tokens) != 3:
            raise PDSyntaxError("expected 'O arc +|-'", lineno, tokens[0][1])
        arc = _parse_int(tokens[1][0], lineno, tokens[1][1])
        flag = tokens[2][0]
        if flag not in ("+", "-"):
            raise PDSyntaxError(f"direction must be + or -, got {flag!r}", lineno, tokens[2][1])
        dirs[arc] = 1 if flag == "+" else -1
    return OrientedDiagram(d, dirs)


def emit_orientation(od: OrientedDiagram) -> str:
    return "".join(f"O {a} {'+' if od.arc_directions[a] > 0 else '-'}\n"
                   for a in sorted(od.arc_directions))
