#!/usr/bin/env python3
"""Run the full analysis over the built-in corpus and tabulate residuals.

Writes one JSON report per graph into --outdir and prints a summary line per
graph: vertex count, detected Q-orderings, and the worst residual across all
verified identities. Exits nonzero if any graph fails its pipeline.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from drgnorton.cli_report import analyze_graph, render_json
from drgnorton.families import FamilySpec, generate

CORPUS = [
    ("petersen", FamilySpec("petersen")),
    ("cycle-5", FamilySpec("cycle", (5,))),
    ("cycle-6", FamilySpec("cycle", (6,))),
    ("cycle-8", FamilySpec("cycle", (8,))),
    ("cycle-10", FamilySpec("cycle", (10,))),
    ("hamming-2-2", FamilySpec("hamming", (2, 2))),
    ("hamming-3-2", FamilySpec("hamming", (3, 2))),
    ("hamming-2-3", FamilySpec("hamming", (2, 3))),
    ("hamming-3-3", FamilySpec("hamming", (3, 3))),
    ("johnson-5-2", FamilySpec("johnson", (5, 2))),
    ("johnson-6-3", FamilySpec("johnson", (6, 3))),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="reports", help="where the JSON reports go")
    parser.add_argument("--tolerance", type=float, default=1e-8)
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    print(f"{'graph':14s} {'n':>4s} {'orderings':>10s} {'worst residual':>15s}")
    for name, spec in CORPUS:
        g = generate(spec)
        outcome = analyze_graph(g, f"family:{name}", tol=args.tolerance)
        (outdir / f"{name}.json").write_text(render_json(outcome.report) + "\n")
        if outcome.exit_code != 0:
            failures += 1
            print(f"{name:14s} {g.n:4d} {'-':>10s} status={outcome.report['status']}")
            continue
        orderings = [tuple(o["ordering"]) for o in outcome.report["qOrderings"]]
        worst = max(max(o["residuals"].values()) for o in outcome.report["qOrderings"])
        print(f"{name:14s} {g.n:4d} {len(orderings):10d} {worst:15.3e}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
