"""Replay the inductive step for T(2, n) through the skein long exact sequence.

For each n the sequence is taken at crossing 0, where the A-smoothing is
T(2, n-1) and the B-smoothing an unknot with framing 1 - n. The script
reports exactness, the connecting map at parent grading (2 - n, 4 - 3n)
next to its predicted |degree|, and the beta* predictions that follow
from vanishing flanking groups.

    python3 scripts/les_probe.py --n-max 7
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from framedkh.diagram import canonical_form, torus_diagram
from framedkh.homology import compute_homology, tables_shifted, homology
from framedkh.les import beta_status, probe_connecting, split_at_crossing, verify_les_exact
from framedkh.torus import framed_unknot_kh, predicted_connecting_degree, torus_kh


@dataclass
class ProbeConfig:
    n_min: int = 2
    n_max: int = 7
    crossing: int = 0


def probe(n: int, v: int) -> dict:
    d = torus_diagram(n)
    split = split_at_crossing(d, v)
    a_side = canonical_form(split.diagram_A) == canonical_form(torus_diagram(n - 1))
    b_side = tables_shifted(compute_homology(split.sub_B), framed_unknot_kh(1 - n), -1, -1)
    report = verify_les_exact(d, v)
    out = {"n": n, "A_is_T(2,n-1)": a_side, "B_is_unknot": b_side, "exact": report.exact}
    if n >= 3:
        p = probe_connecting(d, v, 2 - n, 4 - 3 * n, split=split)
        out["conn"] = f"{p.source}->{p.target} |deg|={p.degree} (predicted {predicted_connecting_degree(n)})"
    held = total = 0
    for g in split.parent_gradings():
        st = beta_status(d, v, *g, split=split)
        if st.prediction != "none":
            total += 1
            held += st.holds
    out["beta"] = f"{held}/{total}"
    out["table_ok"] = homology(d).groups == torus_kh(n).groups
    return out


def main() -> None:
    p = argparse.ArgumentParser(description="skein sequence probes on T(2, n)")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--crossing", type=int, default=0)
    a = p.parse_args()
    cfg = ProbeConfig(a.n_min, a.n_max, a.crossing)
    for n in range(cfg.n_min, cfg.n_max + 1):
        row = probe(n, cfg.crossing % n)
        print("  ".join(f"{k}={v}" for k, v in row.items()), flush=True)


if __name__ == "__main__":
    main()
