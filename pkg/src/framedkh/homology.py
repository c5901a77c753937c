"""Homology tables of bigraded complexes, regrading, and comparison."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .bracket import LaurentPoly
from .complex import BigradedComplex, Grading, build_complex, verify_dd_zero
from .diagram import LinkDiagram
from .linalg import IntegerMatrix, invariant_factors

__all__ = [
    "AbelianGroup",
    "HomologyTable",
    "ChainComplexError",
    "compute_homology",
    "homology",
    "classical_table",
    "tables_equal",
    "tables_shifted",
    "euler_polynomial",
]


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic torsion summands with d_1 | d_2 | ..."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return "+".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Inverse of ``str``: ``"Z^2+Z_2"`` and friends."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z_"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls(free, tuple(sorted(tors)))


Z = AbelianGroup(1)
Z2 = AbelianGroup(0, (2,))


@dataclass
class HomologyTable:
    """Nontrivial groups keyed by bigrading; absent keys are trivial.

    ``convention`` is ``"framed"`` for (a, b) keys or ``"classical"`` for
    (i, j) keys, in which case ``writhe`` records the writhe used.
    """

    groups: dict[Grading, AbelianGroup] = field(default_factory=dict)
    convention: str = "framed"
    writhe: int | None = None

    def __post_init__(self):
        if self.convention not in ("framed", "classical"):
            raise ValueError(f"unknown convention {self.convention!r}")
        self.groups = {k: g for k, g in self.groups.items() if not g.is_trivial}

    def __getitem__(self, key: Grading) -> AbelianGroup:
        return self.groups.get(tuple(key), AbelianGroup())

    def __len__(self) -> int:
        return len(self.groups)

    def keys(self) -> list[Grading]:
        """Keys in display order: second index descending, first ascending."""
        return sorted(self.groups, key=lambda g: (-g[1], g[0]))

    @property
    def total_free_rank(self) -> int:
        return sum(g.free_rank for g in self.groups.values())

    def shifted(self, da: int, db: int) -> "HomologyTable":
        return HomologyTable({(a + da, b + db): g for (a, b), g in self.groups.items()},
                             self.convention, self.writhe)

    def to_records(self) -> list[dict]:
        x, y = ("a", "b") if self.convention == "framed" else ("i", "j")
        return [{x: k[0], y: k[1], "free_rank": self.groups[k].free_rank,
                 "torsion": list(self.groups[k].torsion)} for k in self.keys()]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), separators=(",", ":"))

    @classmethod
    def from_records(cls, records: Iterable[Mapping], convention: str = "framed",
                     writhe: int | None = None) -> "HomologyTable":
        x, y = ("a", "b") if convention == "framed" else ("i", "j")
        groups = {(int(r[x]), int(r[y])): AbelianGroup(int(r["free_rank"]), tuple(r["torsion"]))
                  for r in records}
        return cls(groups, convention, writhe)

    def to_csv(self) -> str:
        x, y = ("a", "b") if self.convention == "framed" else ("i", "j")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([x, y, "free_rank", "torsion"])
        for k in self.keys():
            g = self.groups[k]
            w.writerow([k[0], k[1], g.free_rank, ";".join(str(t) for t in g.torsion)])
        return buf.getvalue()

    def render(self) -> str:
        """Grid with rows by second index descending, columns ascending."""
        x, y = ("a", "b") if self.convention == "framed" else ("i", "j")
        if not self.groups:
            return f"(trivial homology; {y} rows / {x} columns)\n"
        cols = sorted({k[0] for k in self.groups})
        step = 2 if self.convention == "framed" else 1
        if len(cols) > 1 and all((c - cols[0]) % step == 0 for c in cols):
            cols = list(range(cols[0], cols[-1] + 1, step))
        rows = sorted({k[1] for k in self.groups}, reverse=True)
        cells = {k: str(g) for k, g in self.groups.items()}
        width = max([len(s) for s in cells.values()] + [len(str(c)) for c in cols] + [1])
        head = f"{y} | {x}"
        lw = max(len(head), *(len(str(r)) for r in rows))
        lines = [head.rjust(lw) + " || " + " | ".join(str(c).center(width) for c in cols)]
        lines.append("=" * len(lines[0]))
        for r in rows:
            lines.append(str(r).rjust(lw) + " || "
                         + " | ".join(cells.get((c, r), "").center(width) for c in cols))
        return "\n".join(lines) + "\n"


def _factors_job(item: tuple[Grading, IntegerMatrix]) -> tuple[Grading, list[int]]:
    key, m = item
    return key, invariant_factors(m)


def compute_homology(c: BigradedComplex, workers: int = 1, check: bool = True) -> HomologyTable:
    """H_(a,b) = ker d_(a,b) / im d_(a+2,b) for every populated grading.

    Free rank is dim - rank(outgoing) - rank(incoming); torsion is read off
    the invariant factors of the incoming differential.
    """
    if check and not verify_dd_zero(c):
        raise ChainComplexError("differential does not square to zero")
    items = sorted(((k, m) for k, m in c.differentials.items() if m.nnz),
                   key=lambda kv: (-kv[1].nnz, kv[0]))
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            factors = dict(pool.map(_factors_job, items))
    else:
        factors = dict(_factors_job(it) for it in items)
    groups = {}
    for (a, b) in c.bases:
        out_f = factors.get((a, b), [])
        in_f = factors.get((a + 2, b), [])
        free = c.dim(a, b) - len(out_f) - len(in_f)
        tors = tuple(d for d in in_f if d > 1)
        if free < 0:
            raise ChainComplexError(f"negative free rank at {(a, b)}")
        groups[a, b] = AbelianGroup(free, tors)
    return HomologyTable(groups)


def homology(d: LinkDiagram, workers: int = 1) -> HomologyTable:
    """Framed Khovanov homology of a diagram."""
    return compute_homology(build_complex(d), workers=workers)


def classical_table(t: HomologyTable, w: int) -> HomologyTable:
    """Regrade a framed table to (i, j) = ((w - a)/2, (3w - b)/2)."""
    if t.convention != "framed":
        raise ValueError("classical_table expects a framed table")
    groups = {}
    for (a, b), g in t.groups.items():
        if (w - a) % 2 or (3 * w - b) % 2:
            raise ValueError(f"parity violation at {(a, b)} for writhe {w}")
        groups[(w - a) // 2, (3 * w - b) // 2] = g
    return HomologyTable(groups, "classical", w)


def tables_equal(t1: HomologyTable, t2: HomologyTable) -> bool:
    return t1.convention == t2.convention and t1.groups == t2.groups


def tables_shifted(t1: HomologyTable, t2: HomologyTable, da: int, db: int) -> bool:
    """Whether t1 equals t2 with every key moved by (da, db)."""
    return tables_equal(t1, t2.shifted(da, db))


def euler_polynomial(t: HomologyTable) -> LaurentPoly:
    """Sum of (-1)^((b-a)/2) * free_rank * A^b over a framed table."""
    if t.convention != "framed":
        raise ValueError("euler_polynomial expects a framed table")
    out: dict[int, int] = {}
    for (a, b), g in t.groups.items():
        sgn = -1 if ((b - a) // 2) % 2 else 1
        out[b] = out.get(b, 0) + sgn * g.free_rank
    return LaurentPoly(out)
