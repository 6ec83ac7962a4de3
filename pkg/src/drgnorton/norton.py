"""The Norton product on a Q-polynomial eigenspace, three ways.

The eigenspace EV of a Q-polynomial idempotent E carries the commutative,
generally nonassociative product u * v = E(u o v), with o the entrywise
product. `norton_product_direct` evaluates that definition and serves as the
oracle; `norton_product_formula` and `norton_product_symmetric` evaluate the
closed forms in terms of eigenvalues theta_0, theta_1, theta_2 and the dual
eigenvalues theta*_i, and the remaining functions check the supporting
identities (local neighborhood splits, the balanced set condition, and the
scalar identities tying the two forms together).

All formulas follow the convention that the terms carrying theta*_{-1} or
theta*_{d+1} are simply omitted at i = 0 and i = d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDenominator,
    DegenerateSpectrum,
    InputNotInEigenspace,
    SameVertex,
    SpectralInvariantViolation,
)
from .graph_core import DistanceMatrix, IntersectionData
from .qpoly import QPolynomialStructure, reordered_theta
from .spectral import DEFAULT_TOL, SpectralDecomposition, tol_bound


@dataclass(frozen=True)
class NortonContext:
    """Everything needed to multiply in one Norton algebra: the idempotent E,
    eigenvalues under the Q-ordering, dual eigenvalues, and the combinatorics
    (distance matrix, adjacency, intersection numbers). Immutable and safe to
    share across workers."""

    n: int
    E: np.ndarray
    theta: tuple[float, ...]
    dual_theta: tuple[float, ...]
    dm: DistanceMatrix
    A: np.ndarray
    idata: IntersectionData
    tol: float = DEFAULT_TOL

    @property
    def d(self) -> int:
        return self.idata.d

    def ex(self, x: int) -> np.ndarray:
        """E xhat, read off as column x of E."""
        return self.E[:, x]


@dataclass(frozen=True)
class LocalSplit:
    """Indicator vectors splitting the neighborhood of x by distance to y:
    x_plus on G(x) n G_{i+1}(y), x_zero on G(x) n G_i(y), x_minus on
    G(x) n G_{i-1}(y), where i = dist(x,y). Entries are exact integers."""

    i: int
    x_plus: np.ndarray
    x_zero: np.ndarray
    x_minus: np.ndarray


def make_context(
    A: np.ndarray,
    dm: DistanceMatrix,
    idata: IntersectionData,
    decomp: SpectralDecomposition,
    qs: QPolynomialStructure,
    tol: float = DEFAULT_TOL,
) -> NortonContext:
    """Bundle one completed Q-ordering into a product context, checking that
    E is idempotent, that EA = theta_1 E, and that theta_1 != theta_2."""
    if qs.dual_theta is None:
        raise ValueError("Q-polynomial structure is missing dual eigenvalues")
    theta = reordered_theta(decomp, qs)
    E = decomp.E[qs.source_idempotent]
    if abs(theta[1] - theta[2]) <= tol_bound(tol, theta[0]):
        raise DegenerateSpectrum("theta_1 and theta_2 coincide")
    A = np.asarray(A, dtype=np.float64)
    idem = float(np.abs(E @ E - E).max())
    if idem > tol_bound(tol, 1.0):
        raise SpectralInvariantViolation(f"E is not idempotent (residual {idem:.3e})")
    eigrel = float(np.abs(E @ A - theta[1] * E).max())
    if eigrel > tol_bound(tol, theta[1]):
        raise SpectralInvariantViolation(f"EA != theta_1 E (residual {eigrel:.3e})")
    return NortonContext(
        n=decomp.n, E=E, theta=theta, dual_theta=qs.dual_theta, dm=dm, A=A, idata=idata, tol=tol
    )


def _require_in_eigenspace(ctx: NortonContext, v: np.ndarray) -> None:
    scale = float(np.abs(v).max()) if v.size else 0.0
    res = float(np.abs(ctx.E @ v - v).max())
    if res > tol_bound(ctx.tol, scale):
        raise InputNotInEigenspace(f"vector deviates from EV by {res:.3e}")


def norton_product_direct(u: np.ndarray, v: np.ndarray, ctx: NortonContext) -> np.ndarray:
    """The defining product E(u o v) for u, v in EV. This is the oracle that
    both closed forms are tested against."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    _require_in_eigenspace(ctx, u)
    _require_in_eigenspace(ctx, v)
    return ctx.E @ (u * v)


def local_split(x: int, y: int, ctx: NortonContext) -> LocalSplit:
    """Split G(x) against the distance classes of y. The x_minus part is empty
    at i = 0 and the x_plus part is empty at i = d, without special cases,
    because no vertex has distance -1 or d+1."""
    i = int(ctx.dm.dist[x, y])
    near_x = ctx.dm.dist[x] == 1
    dist_y = ctx.dm.dist[y]
    return LocalSplit(
        i=i,
        x_plus=(near_x & (dist_y == i + 1)).astype(np.int64),
        x_zero=(near_x & (dist_y == i)).astype(np.int64),
        x_minus=(near_x & (dist_y == i - 1)).astype(np.int64),
    )


def norton_product_formula(x: int, y: int, ctx: NortonContext) -> np.ndarray:
    """Closed form for E xhat * E yhat with i = dist(x,y):

        [(th*_{i-1} - th*_i) E x_minus + (th*_{i+1} - th*_i) E x_plus
         + (th_1 - th_2) th*_i E xhat + (th_2 - th_0) E yhat]
        / (n (th_1 - th_2))

    with the x_minus term dropped at i = 0 and the x_plus term at i = d.
    """
    th = ctx.theta
    ds = ctx.dual_theta
    sp = local_split(x, y, ctx)
    i = sp.i
    num = (th[1] - th[2]) * ds[i] * ctx.ex(x) + (th[2] - th[0]) * ctx.ex(y)
    if i > 0:
        num = num + (ds[i - 1] - ds[i]) * (ctx.E @ sp.x_minus)
    if i < ctx.d:
        num = num + (ds[i + 1] - ds[i]) * (ctx.E @ sp.x_plus)
    return num / (ctx.n * (th[1] - th[2]))


def cb_vectors(x: int, y: int, ctx: NortonContext) -> tuple[np.ndarray, np.ndarray]:
    """The symmetric building blocks

        C(x,y) = E x_minus - c_i (th*_1 - th*_{i-1})/(th*_0 - th*_i) E xhat
        B(x,y) = E x_plus  - b_i (th*_1 - th*_{i+1})/(th*_0 - th*_i) E xhat

    for distinct x, y at distance i; B is identically zero at i = d.
    Both are invariant under swapping x and y (the balanced set condition).
    """
    if x == y:
        raise SameVertex("C and B need two distinct vertices")
    ds = ctx.dual_theta
    sp = local_split(x, y, ctx)
    i = sp.i
    den = ds[0] - ds[i]
    if abs(den) <= tol_bound(ctx.tol, ds[0]):
        raise DegenerateDenominator(f"theta*_0 - theta*_{i} vanishes")
    C = ctx.E @ sp.x_minus - ctx.idata.c[i] * (ds[1] - ds[i - 1]) / den * ctx.ex(x)
    if i == ctx.d:
        B = np.zeros(ctx.n, dtype=np.float64)
    else:
        B = ctx.E @ sp.x_plus - ctx.idata.b[i] * (ds[1] - ds[i + 1]) / den * ctx.ex(x)
    return C, B


def norton_product_symmetric(x: int, y: int, ctx: NortonContext) -> np.ndarray:
    """Closed form for E xhat * E yhat in terms of C and B, symmetric in x, y:

        [(th*_{i-1} - th*_i) C(x,y) + (th*_{i+1} - th*_i) B(x,y)
         + (th_2 - th_0)(E xhat + E yhat)] / (n (th_1 - th_2))

    for distinct x, y; the B term is dropped at i = d.
    """
    if x == y:
        raise SameVertex("the symmetric form needs two distinct vertices")
    th = ctx.theta
    ds = ctx.dual_theta
    i = int(ctx.dm.dist[x, y])
    C, B = cb_vectors(x, y, ctx)
    num = (ds[i - 1] - ds[i]) * C + (th[2] - th[0]) * (ctx.ex(x) + ctx.ex(y))
    if i < ctx.d:
        num = num + (ds[i + 1] - ds[i]) * B
    return num / (ctx.n * (th[1] - th[2]))


def balanced_set_check(x: int, y: int, ctx: NortonContext) -> tuple[float, float]:
    """Max-norm residuals of the balanced set condition

        E x_minus - E y_minus = c_i (th*_1 - th*_{i-1})/(th*_0 - th*_i) (E xhat - E yhat)
        E x_plus  - E y_plus  = b_i (th*_1 - th*_{i+1})/(th*_0 - th*_i) (E xhat - E yhat)

    for distinct x, y; the plus-side coefficient is zero at i = d.
    """
    if x == y:
        raise SameVertex("the balanced set condition needs two distinct vertices")
    ds = ctx.dual_theta
    sp_xy = local_split(x, y, ctx)
    sp_yx = local_split(y, x, ctx)
    i = sp_xy.i
    den = ds[0] - ds[i]
    if abs(den) <= tol_bound(ctx.tol, ds[0]):
        raise DegenerateDenominator(f"theta*_0 - theta*_{i} vanishes")
    diff = ctx.ex(x) - ctx.ex(y)
    lhs_minus = ctx.E @ sp_xy.x_minus - ctx.E @ sp_yx.x_minus
    res_minus = float(
        np.abs(lhs_minus - ctx.idata.c[i] * (ds[1] - ds[i - 1]) / den * diff).max()
    )
    lhs_plus = ctx.E @ sp_xy.x_plus - ctx.E @ sp_yx.x_plus
    if i == ctx.d:
        res_plus = float(np.abs(lhs_plus).max())
    else:
        res_plus = float(
            np.abs(lhs_plus - ctx.idata.b[i] * (ds[1] - ds[i + 1]) / den * diff).max()
        )
    return res_minus, res_plus


def cibi_identity_check(ctx: NortonContext) -> np.ndarray:
    """Residuals, for i = 1..d, of the scalar identity

        c_i (th*_1 - th*_{i-1})(th*_{i-1} - th*_i)/(th*_0 - th*_i)
        + b_i (th*_1 - th*_{i+1})(th*_{i+1} - th*_i)/(th*_0 - th*_i)
        = (th_2 - th_1) th*_i + th_2 - th_0

    where the b term is absent at i = d. Entry [i-1] holds the residual for i.
    """
    th = ctx.theta
    ds = ctx.dual_theta
    d = ctx.d
    res = np.zeros(d, dtype=np.float64)
    for i in range(1, d + 1):
        den = ds[0] - ds[i]
        if abs(den) <= tol_bound(ctx.tol, ds[0]):
            raise DegenerateDenominator(f"theta*_0 - theta*_{i} vanishes")
        lhs = ctx.idata.c[i] * (ds[1] - ds[i - 1]) * (ds[i - 1] - ds[i]) / den
        if i < d:
            lhs += ctx.idata.b[i] * (ds[1] - ds[i + 1]) * (ds[i + 1] - ds[i]) / den
        rhs = (th[2] - th[1]) * ds[i] + th[2] - th[0]
        res[i - 1] = abs(lhs - rhs)
    return res


def q111_from_formula(ctx: NortonContext) -> float:
    """The Krein parameter q[1,1,1] recovered from eigenvalue data alone:
    (theta_1 theta*_1 - theta_2 theta*_0 + theta_2 - theta_0)/(theta_1 - theta_2)."""
    th = ctx.theta
    ds = ctx.dual_theta
    return (th[1] * ds[1] - th[2] * ds[0] + th[2] - th[0]) / (th[1] - th[2])


def associator(u: np.ndarray, v: np.ndarray, w: np.ndarray, ctx: NortonContext) -> np.ndarray:
    """(u * v) * w - u * (v * w); nonzero in general since the product is
    commutative but not associative."""
    left = norton_product_direct(norton_product_direct(u, v, ctx), w, ctx)
    right = norton_product_direct(u, norton_product_direct(v, w, ctx), ctx)
    return left - right


def sum_identity_check(x: int, y: int, ctx: NortonContext) -> tuple[int, float]:
    """The split of G(x) sums back: x_plus + x_zero + x_minus = A xhat exactly
    (integer arithmetic), and applying E gives theta_1 E xhat within tolerance."""
    sp = local_split(x, y, ctx)
    total = sp.x_plus + sp.x_zero + sp.x_minus
    res1 = int(np.abs(total - (ctx.dm.dist[x] == 1).astype(np.int64)).max())
    lhs = ctx.E @ sp.x_plus + ctx.E @ sp.x_zero + ctx.E @ sp.x_minus
    res2 = float(np.abs(lhs - ctx.theta[1] * ctx.ex(x)).max())
    return res1, res2


# ---------------------------------------------------------------------------
# whole-graph sweeps (used by the CLI report and the acceptance suite)

def formula_equivalence_residual(ctx: NortonContext) -> float:
    """Max over all vertex pairs of |formula - direct| in max-norm."""
    worst = 0.0
    for x in range(ctx.n):
        ex = ctx.ex(x)
        for y in range(ctx.n):
            direct = ctx.E @ (ex * ctx.ex(y))
            worst = max(worst, float(np.abs(norton_product_formula(x, y, ctx) - direct).max()))
    return worst


def symmetric_equivalence_residual(ctx: NortonContext) -> float:
    """Max over distinct pairs of |symmetric form - direct| in max-norm."""
    worst = 0.0
    for x in range(ctx.n):
        ex = ctx.ex(x)
        for y in range(ctx.n):
            if x == y:
                continue
            direct = ctx.E @ (ex * ctx.ex(y))
            worst = max(worst, float(np.abs(norton_product_symmetric(x, y, ctx) - direct).max()))
    return worst


def commutativity_residual(ctx: NortonContext) -> float:
    """Max over distinct pairs of |symmetric(x,y) - symmetric(y,x)|."""
    worst = 0.0
    for x in range(ctx.n):
        for y in range(x + 1, ctx.n):
            delta = norton_product_symmetric(x, y, ctx) - norton_product_symmetric(y, x, ctx)
            worst = max(worst, float(np.abs(delta).max()))
    return worst


def balanced_set_max_residual(ctx: NortonContext) -> float:
    worst = 0.0
    for x in range(ctx.n):
        for y in range(ctx.n):
            if x != y:
                worst = max(worst, max(balanced_set_check(x, y, ctx)))
    return worst


def sum_identity_max(ctx: NortonContext) -> tuple[int, float]:
    worst_exact, worst_float = 0, 0.0
    for x in range(ctx.n):
        for y in range(ctx.n):
            r1, r2 = sum_identity_check(x, y, ctx)
            worst_exact = max(worst_exact, r1)
            worst_float = max(worst_float, r2)
    return worst_exact, worst_float


def max_associator_norm(ctx: NortonContext) -> float:
    """Max-norm of the associator over all vertex triples (E xhat inputs).
    O(n^3) products; enable deliberately."""
    worst = 0.0
    products = [[ctx.E @ (ctx.ex(x) * ctx.ex(y)) for y in range(ctx.n)] for x in range(ctx.n)]
    for x in range(ctx.n):
        for y in range(ctx.n):
            left_base = products[x][y]
            for z in range(ctx.n):
                left = ctx.E @ (left_base * ctx.ex(z))
                right = ctx.E @ (ctx.ex(x) * products[y][z])
                worst = max(worst, float(np.abs(left - right).max()))
    return worst
