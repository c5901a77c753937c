"""``kh``: command-line front end.

    kh compute FILE [--format table|json|csv] [--classical --orient FILE] [--parallel N]
    kh torus N [--oracle | --direct | --check] [--format ...]
    kh bracket FILE [--format text|json]
    kh les FILE --crossing V [--probe-connecting [--grading A B]] [--format table|json]
    kh check FILE
    kh dump FILE
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .bracket import bracket_enhanced_sum, bracket_state_sum, skein_check
from .complex import build_complex, dump_triplets, parse_triplets, verify_dd_zero
from .diagram import DiagramError, parse_orientation, parse_pd, torus_diagram, writhe
from .homology import (
    ChainComplexError,
    HomologyTable,
    classical_table,
    compute_homology,
    euler_polynomial,
    tables_equal,
)
from .les import SplitError, beta_status, connecting_probes, probe_connecting, split_at_crossing, verify_les_exact
from .torus import torus_kh

FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    format: str = "table"
    orient: str | None = None
    crossing: int | None = None
    classical: bool = False
    parallel: int = 1

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.parallel < 1:
            raise ValueError("--parallel must be at least 1")
        if self.classical and not self.orient:
            raise ValueError("--classical needs an orientation overlay (--orient FILE)")


def default_parallelism() -> int:
    env = os.environ.get("KH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"KH_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def render_table(t: HomologyTable, fmt: str) -> str:
    if fmt == "json":
        return t.to_json() + "\n"
    if fmt == "csv":
        return t.to_csv()
    return t.render()


# ---------------------------------------------------------------------------
# commands; each returns an exit code


def cmd_compute(cfg: RunConfig, out) -> int:
    d = parse_pd(_read(cfg.inputs[0]))
    table = compute_homology(build_complex(d), workers=cfg.parallel)
    if cfg.classical:
        od = parse_orientation(_read(cfg.orient), d)
        table = classical_table(table, writhe(od))
    out.write(render_table(table, cfg.format))
    return 0


def cmd_torus(n: int, mode: str, fmt: str, workers: int, out) -> int:
    if mode == "oracle":
        out.write(render_table(torus_kh(n), fmt))
        return 0
    direct = compute_homology(build_complex(torus_diagram(n)), workers=workers)
    if mode == "direct":
        out.write(render_table(direct, fmt))
        return 0
    ok = tables_equal(direct, torus_kh(n))
    out.write(f"T(2,{n}): direct {'matches' if ok else 'DIFFERS FROM'} closed form: {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_bracket(path: str, fmt: str, out) -> int:
    p = bracket_state_sum(parse_pd(_read(path)))
    if fmt == "json":
        out.write(json.dumps(p.to_json(), separators=(",", ":")) + "\n")
    else:
        out.write(f"{p}\n")
    return 0


def cmd_les(cfg: RunConfig, probe: bool, grading: tuple[int, int] | None, out) -> int:
    d = parse_pd(_read(cfg.inputs[0]))
    v = cfg.crossing
    if not 0 <= v < d.n_crossings:
        raise SplitError(f"crossing {v} out of range 0..{d.n_crossings - 1}")
    report = verify_les_exact(d, v)
    split = split_at_crossing(d, v, verify=False)
    betas = []
    for g in split.parent_gradings():
        st = beta_status(d, v, *g, split=split)
        interesting = not (split.homology_at("D", g).group.is_trivial
                           and split.homology_at("A", g).group.is_trivial)
        if st.prediction != "none" and interesting:
            betas.append(st)
    probes = []
    if probe:
        probes = [probe_connecting(d, v, *grading, split=split)] if grading else connecting_probes(d, v)
    if cfg.format == "json":
        data = json.loads(report.to_json())
        data["beta"] = [{"a": s.grading[0], "b": s.grading[1], "predicted": s.prediction,
                          "observed": s.observed, "holds": s.holds} for s in betas]
        if probe:
            data["connecting"] = [{"parent_a": p.parent_grading[0], "parent_b": p.parent_grading[1],
                                   "source": str(p.source), "target": str(p.target),
                                   "matrix": p.map.matrix, "degree": p.degree} for p in probes]
        out.write(json.dumps(data, separators=(",", ":")) + "\n")
    else:
        out.write(report.render())
        for s in betas:
            a, b = s.grading
            out.write(f"beta*: H({a},{b}) -> H_A({a - 1},{b - 1}): predicted {s.prediction}, "
                      f"observed {s.observed} [{'ok' if s.holds else 'VIOLATED'}]\n")
        for p in probes:
            a, b = p.parent_grading
            deg = "n/a" if p.degree is None else str(p.degree)
            out.write(f"conn: H_A({a - 1},{b - 1})[{p.source}] -> H_B({a - 1},{b + 1})[{p.target}]: "
                      f"matrix {p.map.matrix}, |degree| = {deg}\n")
        if probe and not probes:
            out.write("conn: no connecting map between two copies of Z\n")
    ok = report.exact and all(s.holds for s in betas)
    return 0 if ok else 1


def _is_triplet_dump(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line:
            return line.startswith("# dim")
    return False


def cmd_check(path: str, out) -> int:
    text = _read(path)
    results: list[tuple[str, bool, str]] = []
    if _is_triplet_dump(text):
        c = parse_triplets(text)
        results.append(("dd=0", verify_dd_zero(c), ""))
    else:
        d = parse_pd(text)
        c = build_complex(d)
        dd = verify_dd_zero(c)
        results.append(("dd=0", dd, ""))
        state = bracket_state_sum(d)
        results.append(("bracket state sum = enhanced sum", state == bracket_enhanced_sum(d), f"bracket {state}"))
        bad = [v for v in range(d.n_crossings) if not skein_check(d, v)]
        results.append(("skein relation at every crossing", not bad,
                        f"failing at {bad}" if bad else f"{d.n_crossings} crossing(s)"))
        if dd:
            euler = euler_polynomial(compute_homology(c, check=False))
            results.append(("Euler characteristic = bracket", euler == state, f"euler {euler}"))
        else:
            results.append(("Euler characteristic = bracket", False, "skipped: dd != 0"))
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else "") + "\n")
    return 0 if all(ok for _, ok, _ in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kh", description="Framed Khovanov homology over the integers.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="homology table of a PD diagram")
    c.add_argument("input")
    c.add_argument("--format", choices=FORMATS, default="table")
    c.add_argument("--classical", action="store_true", help="regrade to (i, j) using the overlay's writhe")
    c.add_argument("--orient", help="orientation overlay (O arc +|- lines)")
    c.add_argument("--parallel", type=int, default=None, help="worker processes (default KH_THREADS or cores)")

    t = sub.add_parser("torus", help="T(2, n) from the closed form and/or directly")
    t.add_argument("n", type=int)
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--direct", dest="mode", action="store_const", const="direct")
    mode.add_argument("--check", dest="mode", action="store_const", const="check")
    t.add_argument("--format", choices=FORMATS, default="table")
    t.add_argument("--parallel", type=int, default=None)

    b = sub.add_parser("bracket", help="unreduced Kauffman bracket")
    b.add_argument("input")
    b.add_argument("--format", choices=("text", "json"), default="text")

    les = sub.add_parser("les", help="long exact sequence at a crossing")
    les.add_argument("input")
    les.add_argument("--crossing", type=int, required=True)
    les.add_argument("--probe-connecting", action="store_true")
    les.add_argument("--grading", type=int, nargs=2, metavar=("A", "B"),
                     help="parent grading of the connecting map to probe")
    les.add_argument("--format", choices=("table", "json"), default="table")

    ch = sub.add_parser("check", help="run the self-consistency checks")
    ch.add_argument("input")

    du = sub.add_parser("dump", help="write the chain complex as sparse triplets")
    du.add_argument("input")
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        parallel = getattr(args, "parallel", None)
        if parallel is None and args.command in ("compute", "torus"):
            parallel = default_parallelism()
        if parallel is not None and parallel < 1:
            parser.error("--parallel must be at least 1")
        if args.command == "compute":
            cfg = RunConfig("compute", [args.input], args.format, args.orient,
                            classical=args.classical, parallel=parallel)
            try:
                cfg.validate()
            except ValueError as exc:
                parser.error(str(exc))
            return cmd_compute(cfg, out)
        if args.command == "torus":
            if args.n < 1:
                parser.error(f"n must be a positive integer, got {args.n}")
            return cmd_torus(args.n, args.mode or "oracle", args.format, parallel, out)
        if args.command == "bracket":
            return cmd_bracket(args.input, args.format, out)
        if args.command == "les":
            cfg = RunConfig("les", [args.input], args.format, crossing=args.crossing)
            return cmd_les(cfg, args.probe_connecting, tuple(args.grading) if args.grading else None, out)
        if args.command == "check":
            return cmd_check(args.input, out)
        if args.command == "dump":
            out.write(dump_triplets(build_complex(parse_pd(_read(args.input)))))
            return 0
    except (DiagramError, SplitError, ChainComplexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
