"""Q-polynomial ordering detection and dual eigenvalues.

An ordering E_1..E_d of the nontrivial idempotents is Q-polynomial when the
Krein slice q[h, 1, j] is tridiagonal: zero for |h - j| > 1 and nonzero for
|h - j| = 1. Candidates are grown greedily from each possible E_1 and then
the full pattern is verified. Boundary dual eigenvalues (index -1 and d+1)
are never materialized; formulas referencing them skip the term instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, NotConstantOnDistanceClasses, DegenerateDenominator
from .graph_core import DistanceMatrix, IntersectionData
from .spectral import DEFAULT_TOL, KreinTensor, SpectralDecomposition, tol_bound

#: "Nonzero Krein parameter" means above this fraction of the largest entry.
DEFAULT_NZ_THRESHOLD = 1e-6


@dataclass(frozen=True)
class QPolynomialStructure:
    """One Q-polynomial ordering. `ordering` permutes the nontrivial
    idempotents of the source decomposition (ordering[0] indexes E_1);
    `dual_theta` is filled in by `complete_structures`."""

    ordering: tuple[int, ...]
    source_idempotent: int
    dual_theta: tuple[float, ...] | None = None


def _cutoff(kt: KreinTensor, nz_threshold: float) -> float:
    return nz_threshold * float(np.abs(kt.q).max())


def krein_pattern_holds(kt: KreinTensor, ordering: tuple[int, ...], cutoff: float) -> bool:
    """Check the tridiagonal zero/nonzero pattern of q[h, 1, j] under the
    given ordering of nontrivial idempotents (index 0 stays the trivial one)."""
    full = (0,) + tuple(ordering)
    d = kt.d
    s = full[1]
    for h in range(d + 1):
        for j in range(d + 1):
            val = abs(float(kt.q[full[h], s, full[j]]))
            if abs(h - j) > 1 and val > cutoff:
                return False
            if abs(h - j) == 1 and val <= cutoff:
                return False
    return True


def find_q_polynomial_orderings(
    kt: KreinTensor, nz_threshold: float = DEFAULT_NZ_THRESHOLD
) -> list[QPolynomialStructure]:
    """All orderings of the nontrivial idempotents under which the Krein
    slice through E_1 is tridiagonal. Empty list means not Q-polynomial.

    For each candidate E_1, the chain is grown by taking, at each step, the
    unique unused h with q[h, 1, last] nonzero; ambiguity or a dead end kills
    the candidate. Results are sorted by source idempotent for determinism.
    """
    d = kt.d
    cutoff = _cutoff(kt, nz_threshold)
    found = []
    for s in range(1, d + 1):
        chain = [s]
        used = {0, s}
        while len(chain) < d:
            candidates = [
                h
                for h in range(1, d + 1)
                if h not in used and abs(float(kt.q[h, s, chain[-1]])) > cutoff
            ]
            if len(candidates) != 1:
                break
            chain.append(candidates[0])
            used.add(candidates[0])
        if len(chain) == d and krein_pattern_holds(kt, tuple(chain), cutoff):
            found.append(QPolynomialStructure(ordering=tuple(chain), source_idempotent=s))
    return found


def dual_eigenvalues(
    E: np.ndarray, dm: DistanceMatrix, n: int, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Coefficients theta*_i with E = n^{-1} sum_i theta*_i A_i, read off as
    n * E[x,y] over pairs at distance i.

    Averages each distance class and rejects the matrix if any entry deviates
    from its class mean beyond tolerance (E would not lie in the algebra).
    """
    duals = np.zeros(dm.d + 1, dtype=np.float64)
    scaled = n * np.asarray(E, dtype=np.float64)
    for i in range(dm.d + 1):
        values = scaled[dm.dist == i]
        mean = float(values.mean())
        spread = float(np.abs(values - mean).max())
        if spread > tol_bound(tol, mean):
            raise NotConstantOnDistanceClasses(
                f"entries at distance {i} vary by {spread:.3e} around {mean:.12g}"
            )
        duals[i] = mean
    duals.setflags(write=False)
    return duals


def complete_structures(
    skeletons: list[QPolynomialStructure],
    decomp: SpectralDecomposition,
    dm: DistanceMatrix,
    tol: float = DEFAULT_TOL,
) -> list[QPolynomialStructure]:
    """Attach dual eigenvalues to each detected ordering and verify they are
    mutually distinct with theta*_0 = trace(E_1)."""
    out = []
    for qs in skeletons:
        E1 = decomp.E[qs.source_idempotent]
        duals = dual_eigenvalues(E1, dm, decomp.n, tol)
        sorted_duals = np.sort(duals)
        gap = float(np.diff(sorted_duals).min())
        if gap <= tol_bound(tol, float(np.abs(duals).max())):
            raise DegenerateSpectrum(f"dual eigenvalues nearly coincide (gap {gap:.3e})")
        mult = decomp.mult[qs.source_idempotent]
        if abs(duals[0] - mult) > tol_bound(tol, mult):
            raise NotConstantOnDistanceClasses(
                f"theta*_0 = {duals[0]!r} does not match the rank {mult!r}"
            )
        out.append(
            QPolynomialStructure(
                ordering=qs.ordering,
                source_idempotent=qs.source_idempotent,
                dual_theta=tuple(float(v) for v in duals),
            )
        )
    return out


def reordered_theta(decomp: SpectralDecomposition, qs: QPolynomialStructure) -> tuple[float, ...]:
    """Eigenvalues permuted so that theta_i names the eigenvalue of E_i under
    the Q-ordering (theta_0 stays the valency)."""
    return (decomp.theta[0],) + tuple(decomp.theta[s] for s in qs.ordering)


def verify_recurrence(
    qs: QPolynomialStructure, idata: IntersectionData, theta1: float
) -> np.ndarray:
    """Per-i residuals of c_i theta*_{i-1} + a_i theta*_i + b_i theta*_{i+1}
    = theta_1 theta*_i; the c term is absent at i=0 and the b term at i=d."""
    duals = qs.dual_theta
    d = idata.d
    res = np.zeros(d + 1, dtype=np.float64)
    for i in range(d + 1):
        lhs = idata.a[i] * duals[i]
        if i > 0:
            lhs += idata.c[i] * duals[i - 1]
        if i < d:
            lhs += idata.b[i] * duals[i + 1]
        res[i] = abs(lhs - theta1 * duals[i])
    return res


def theta2_identity_check(
    theta: tuple[float, ...], dual_theta: tuple[float, ...], tol: float = DEFAULT_TOL
) -> float:
    """Residual of (1 + theta_1)/(theta_0 - theta_2) =
    (1 + theta*_1)/(theta*_0 - theta*_2) under a Q-ordering."""
    den = theta[0] - theta[2]
    dual_den = dual_theta[0] - dual_theta[2]
    if abs(den) <= tol_bound(tol, theta[0]) or abs(dual_den) <= tol_bound(tol, dual_theta[0]):
        raise DegenerateDenominator("theta_0 - theta_2 or theta*_0 - theta*_2 vanishes")
    return abs((1.0 + theta[1]) / den - (1.0 + dual_theta[1]) / dual_den)
