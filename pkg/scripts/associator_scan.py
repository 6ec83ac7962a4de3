#!/usr/bin/env python3
"""Measure how far each corpus Norton algebra is from being associative.

For every corpus graph and every Q-ordering, sweeps all vertex triples and
prints the largest associator max-norm |(u*v)*w - u*(v*w)| together with the
self-product coefficient q^1_{1,1}/n. Vanishing q^1_{1,1} forces a zero
product, hence a zero associator; the interesting rows are the nonzero ones.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from drgnorton import (
    check_distance_regular,
    distance_matrix,
    krein_parameters,
    make_context,
    spectral_decomposition,
)
from drgnorton.families import FamilySpec, generate
from drgnorton.norton import max_associator_norm
from drgnorton.qpoly import complete_structures, find_q_polynomial_orderings

from run_corpus import CORPUS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=30, help="skip graphs larger than this")
    args = parser.parse_args()

    print(f"{'graph':14s} {'ordering':>16s} {'q111/n':>12s} {'max associator':>15s}")
    for name, spec in CORPUS:
        g = generate(spec)
        if g.n > args.max_n:
            continue
        dm = distance_matrix(g)
        idata = check_distance_regular(g, dm)
        A = g.adjacency.astype(np.float64)
        decomp = spectral_decomposition(A, idata)
        kt = krein_parameters(decomp)
        structures = complete_structures(find_q_polynomial_orderings(kt), decomp, dm)
        for qs in structures:
            ctx = make_context(A, dm, idata, decomp, qs)
            s = qs.source_idempotent
            coef = float(kt.q[s, s, s]) / g.n
            norm = max_associator_norm(ctx)
            label = ",".join(map(str, qs.ordering))
            print(f"{name:14s} {label:>16s} {coef:12.3e} {norm:15.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
