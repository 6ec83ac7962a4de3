"""Spectral decomposition of the Bose-Mesner algebra and Krein parameters.

Eigenvalues come from the (d+1)-dimensional tridiagonal intersection matrix,
never from the n x n adjacency matrix; the primitive idempotents are then
Lagrange matrix polynomials in A. Tolerances are mixed: a residual r against
scale s passes iff |r| <= tol * max(1, s).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSpectrum,
    EigensolverFailure,
    IdempotencyViolation,
    KreinInvariantViolation,
    SpectralInvariantViolation,
)
from .graph_core import IntersectionData

DEFAULT_TOL = 1e-8


def tol_bound(tol: float, scale: float) -> float:
    return tol * max(1.0, abs(scale))


def eigenvalues(idata: IntersectionData, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The d+1 distinct eigenvalues of the adjacency matrix, theta_0 = k first,
    the rest in descending order.

    Computed from the tridiagonal intersection matrix T (subdiagonal c_i,
    diagonal a_i, superdiagonal b_i) via its symmetrization with off-diagonal
    entries sqrt(b_{i-1} c_i), which is similar to T.
    """
    d = idata.d
    sym = np.zeros((d + 1, d + 1), dtype=np.float64)
    for i in range(d + 1):
        sym[i, i] = idata.a[i]
        if i < d:
            off = np.sqrt(float(idata.b[i]) * float(idata.c[i + 1]))
            sym[i, i + 1] = sym[i + 1, i] = off
    try:
        theta = np.linalg.eigvalsh(sym)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    theta = np.sort(theta)[::-1].copy()
    scale = max(abs(float(theta[0])), abs(float(theta[-1])))
    gaps = np.diff(theta[::-1])
    if gaps.size and float(gaps.min()) <= tol_bound(tol, scale):
        raise DegenerateSpectrum(f"minimal eigenvalue gap {float(gaps.min()):.3e}")
    if abs(float(theta[0]) - idata.k) > tol_bound(tol, idata.k):
        raise EigensolverFailure(
            f"largest eigenvalue {float(theta[0]):.12g} does not match the valency {idata.k}"
        )
    theta[0] = float(idata.k)  # theta_0 = k holds exactly
    theta.setflags(write=False)
    return theta


def primitive_idempotents(A: np.ndarray, theta: np.ndarray, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Projections E_i onto the eigenspaces of A, as Lagrange products
    prod_{j != i} (A - theta_j I) / (theta_i - theta_j).

    Valid because A generates the algebra and the theta_i are distinct.
    Raises IdempotencyViolation if E_i E_j - delta_ij E_i exceeds tolerance.
    """
    n = A.shape[0]
    A = np.asarray(A, dtype=np.float64)
    eye = np.eye(n)
    E = []
    for i, th_i in enumerate(theta):
        M = eye
        for j, th_j in enumerate(theta):
            if j != i:
                M = M @ ((A - th_j * eye) / (th_i - th_j))
        M = (M + M.T) / 2.0  # exact symmetry; the product is symmetric up to roundoff
        M.setflags(write=False)
        E.append(M)
    worst = 0.0
    for i in range(len(E)):
        for j in range(i, len(E)):
            target = E[i] if i == j else 0.0
            worst = max(worst, float(np.abs(E[i] @ E[j] - target).max()))
    if worst > tol_bound(tol, 1.0):
        raise IdempotencyViolation(f"max |E_i E_j - delta_ij E_i| = {worst:.3e}")
    return E


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues, multiplicities, and primitive idempotents of one graph."""

    theta: tuple[float, ...]
    mult: tuple[float, ...]
    E: tuple[np.ndarray, ...]

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    @property
    def n(self) -> int:
        return self.E[0].shape[0]


def spectral_decomposition(A: np.ndarray, idata: IntersectionData, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Full decomposition with every invariant checked: E_0 = J/n, sum E_i = I,
    A = sum theta_i E_i, and integer multiplicities summing to n."""
    n = A.shape[0]
    theta = eigenvalues(idata, tol)
    E = primitive_idempotents(np.asarray(A, dtype=np.float64), theta, tol)
    resolution = float(np.abs(sum(E) - np.eye(n)).max())
    if resolution > tol_bound(tol, 1.0):
        raise SpectralInvariantViolation(f"sum E_i - I residual {resolution:.3e}")
    recon = float(np.abs(sum(th * Ei for th, Ei in zip(theta, E)) - A).max())
    if recon > tol_bound(tol, float(theta[0])):
        raise SpectralInvariantViolation(f"A reconstruction residual {recon:.3e}")
    e0 = float(np.abs(E[0] - 1.0 / n).max())
    if e0 > tol_bound(tol, 1.0):
        raise SpectralInvariantViolation(f"E_0 - J/n residual {e0:.3e}")
    mult = [float(np.trace(Ei)) for Ei in E]
    for m in mult:
        if abs(m - round(m)) > tol_bound(tol, m) or round(m) < 1:
            raise SpectralInvariantViolation(f"multiplicity {m!r} is not a positive integer")
    if round(sum(mult)) != n:
        raise SpectralInvariantViolation(f"multiplicities sum to {sum(mult)!r}, expected {n}")
    return SpectralDecomposition(theta=tuple(float(t) for t in theta), mult=tuple(mult), E=tuple(E))


@dataclass(frozen=True)
class KreinTensor:
    """Structure constants q[h,i,j] of the idempotent basis under the
    entrywise product: E_i o E_j = n^{-1} sum_h q[h,i,j] E_h."""

    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64)
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @property
    def d(self) -> int:
        return self.q.shape[0] - 1

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        if not np.array_equal(self.q, self.q.transpose(0, 2, 1)):
            raise KreinInvariantViolation("q[h,i,j] != q[h,j,i]")
        lowest = float(self.q.min())
        if lowest < -tol:
            raise KreinInvariantViolation(f"negative Krein parameter {lowest:.3e}")


def krein_parameters(decomp: SpectralDecomposition) -> KreinTensor:
    """q[h,i,j] = (n / m_h) * trace(E_h (E_i o E_j)), computed once per
    unordered pair (i, j) and mirrored, so symmetry in i,j is exact."""
    E, n, d = decomp.E, decomp.n, decomp.d
    q = np.zeros((d + 1, d + 1, d + 1), dtype=np.float64)
    for i in range(d + 1):
        for j in range(i, d + 1):
            had = E[i] * E[j]
            for h in range(d + 1):
                # all factors are symmetric, so the trace pairing is an entrywise sum
                val = n / decomp.mult[h] * float(np.sum(E[h] * had))
                q[h, i, j] = q[h, j, i] = val
    return KreinTensor(q=q)


def krein_reconstruction_residual(decomp: SpectralDecomposition, kt: KreinTensor) -> float:
    """Max-norm residual of E_i o E_j - n^{-1} sum_h q[h,i,j] E_h over all i,j."""
    E, n, d = decomp.E, decomp.n, decomp.d
    worst = 0.0
    for i in range(d + 1):
        for j in range(i, d + 1):
            rhs = sum(kt.q[h, i, j] * E[h] for h in range(d + 1)) / n
            worst = max(worst, float(np.abs(E[i] * E[j] - rhs).max()))
    return worst


def entrywise_span_residual(
    decomp: SpectralDecomposition,
    kt: KreinTensor,
    nz_cutoff: float,
    pairs: list[tuple[int, int]],
) -> float:
    """For every (i,j,h) with q[h,i,j] below the cutoff, E_h V should be
    orthogonal to E_i V o E_j V; returns the worst projection max-norm of
    E_h (E_i xhat o E_j yhat) over the sampled vertex pairs."""
    E, d = decomp.E, decomp.d
    worst = 0.0
    for i in range(d + 1):
        for j in range(i, d + 1):
            zero_h = [h for h in range(d + 1) if abs(kt.q[h, i, j]) <= nz_cutoff]
            if not zero_h:
                continue
            for x, y in pairs:
                had = E[i][:, x] * E[j][:, y]
                for h in zero_h:
                    worst = max(worst, float(np.abs(E[h] @ had).max()))
    return worst


def sample_pairs(n: int, limit: int = 144) -> list[tuple[int, int]]:
    """Deterministic vertex-pair sample: all pairs when n*n <= limit, else a
    fixed-stride subsample covering every residue class."""
    if n * n <= limit:
        return [(x, y) for x in range(n) for y in range(n)]
    stride = max(1, n * n // limit)
    flat = range(0, n * n, stride)
    return [(t // n, t % n) for t in flat]
