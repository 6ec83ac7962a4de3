"""Finite simple graphs, BFS distances, and distance-regularity checking.

Everything in this module is integer arithmetic: distances come from BFS,
intersection numbers from integer matrix products. All returned objects are
immutable (arrays are marked read-only) and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque

import numpy as np

from .errors import DiameterTooSmall, DisconnectedGraph, NotDistanceRegular


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with a dense boolean adjacency."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        if self.n <= 0:
            raise ValueError("vertex count must be positive")
        if adj.shape != (self.n, self.n):
            raise ValueError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        object.__setattr__(self, "adjacency", _freeze(adj))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    def neighbor_lists(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.adjacency[x]) for x in range(self.n)]

    def degree_sequence(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path distances and the diameter."""

    dist: np.ndarray
    d: int

    def __post_init__(self):
        dist = np.asarray(self.dist, dtype=np.int64)
        if dist.diagonal().any():
            raise ValueError("distance matrix must have zero diagonal")
        if not np.array_equal(dist, dist.T):
            raise ValueError("distance matrix must be symmetric")
        if int(dist.max()) != self.d:
            raise ValueError("recorded diameter does not match the matrix")
        object.__setattr__(self, "dist", _freeze(dist))

    @property
    def n(self) -> int:
        return self.dist.shape[0]


@dataclass(frozen=True)
class IntersectionData:
    """Intersection numbers p[h,i,j] = |G_i(x) n G_j(y)| for dist(x,y)=h,
    with the derived arrays c_i = p[i,1,i-1], a_i = p[i,1,i], b_i = p[i,1,i+1]
    and the valency k = b_0."""

    d: int
    p: np.ndarray
    c: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    k: int = field(default=0)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.int64)
        object.__setattr__(self, "p", _freeze(p))
        if self.k == 0:
            object.__setattr__(self, "k", int(self.b[0]))
        self._validate()

    def _validate(self):
        d, p = self.d, self.p
        if p.shape != (d + 1, d + 1, d + 1):
            raise ValueError("tensor shape mismatch")
        if not np.array_equal(p, p.transpose(0, 2, 1)):
            raise ValueError("p[h,i,j] must be symmetric in i,j")
        for h in range(d + 1):
            for i in range(d + 1):
                for j in range(d + 1):
                    triangle_ok = h <= i + j and i <= h + j and j <= h + i
                    if not triangle_ok and p[h, i, j] != 0:
                        raise ValueError(f"p[{h},{i},{j}] nonzero outside the triangle pattern")
                    tight = h == i + j or i == h + j or j == h + i
                    if triangle_ok and tight and p[h, i, j] == 0:
                        raise ValueError(f"p[{h},{i},{j}] zero on the triangle boundary")
        if any(self.c[i] == 0 for i in range(1, d + 1)):
            raise ValueError("c_i must be nonzero for 1 <= i <= d")
        if any(self.b[i] == 0 for i in range(d)):
            raise ValueError("b_i must be nonzero for 0 <= i <= d-1")
        k = self.k
        for i in range(d + 1):
            if self.c[i] + self.a[i] + self.b[i] != k:
                raise ValueError(f"c_{i}+a_{i}+b_{i} != k")

    @property
    def intersection_array(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(self.b[:-1]), tuple(self.c[1:])


def distance_matrix(g: Graph) -> DistanceMatrix:
    """All-pairs BFS. Raises DisconnectedGraph if some vertex is unreachable."""
    n = g.n
    nbrs = g.neighbor_lists()
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = row[u]
            for v in nbrs[u]:
                if row[v] < 0:
                    row[v] = du + 1
                    queue.append(v)
        unreachable = np.flatnonzero(row < 0)
        if unreachable.size:
            raise DisconnectedGraph(s, int(unreachable[0]))
    return DistanceMatrix(dist=dist, d=int(dist.max()))


def distance_matrices(dm: DistanceMatrix) -> list[np.ndarray]:
    """0/1 integer matrices A_0..A_d with (A_i)[x,y] = 1 iff dist(x,y) = i.

    A_0 is the identity and the A_i sum to the all-ones matrix.
    """
    return [_freeze((dm.dist == i).astype(np.int64)) for i in range(dm.d + 1)]


def check_distance_regular(g: Graph, dm: DistanceMatrix) -> IntersectionData:
    """Verify the full tensor p[h,i,j] is constant on each distance class.

    Counts come from integer products A_i A_j, whose (x,y) entry is
    |G_i(x) n G_j(y)|. The scan order over (h, i, j) and then row-major
    vertex pairs fixes which witness is reported on failure.
    """
    if dm.d < 2:
        raise DiameterTooSmall(dm.d)
    d, n = dm.d, dm.n
    A = distance_matrices(dm)
    products = {}
    for i in range(d + 1):
        for j in range(i, d + 1):
            products[(i, j)] = A[i] @ A[j]
    masks = [dm.dist == h for h in range(d + 1)]
    pair_index = [np.nonzero(m) for m in masks]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for h in range(d + 1):
        xs, ys = pair_index[h]
        for i in range(d + 1):
            for j in range(d + 1):
                if i <= j:
                    counts = products[(i, j)][xs, ys]
                else:
                    # (A_i A_j)[x,y] = (A_j A_i)[y,x] since the A's are symmetric
                    counts = products[(j, i)][ys, xs]
                ref = int(counts[0])
                bad = np.flatnonzero(counts != ref)
                if bad.size:
                    w = int(bad[0])
                    raise NotDistanceRegular(h, i, j, int(xs[w]), int(ys[w]), ref, int(counts[w]))
                p[h, i, j] = ref
    c = tuple(int(p[i, 1, i - 1]) if i >= 1 else 0 for i in range(d + 1))
    a = tuple(int(p[i, 1, i]) for i in range(d + 1))
    b = tuple(int(p[i, 1, i + 1]) if i < d else 0 for i in range(d + 1))
    return IntersectionData(d=d, p=p, c=c, a=a, b=b)
