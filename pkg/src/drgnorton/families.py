"""Deterministic generators for the distance-regular test corpus.

Vertex labelings are fixed enumerations (lexicographic words for Hamming,
lexicographic subsets for Johnson and Petersen), so repeated generation is
bit-identical. Grassmann and dual polar families are a known extension point
and deliberately not provided here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidFamilyParams
from .graph_core import Graph

FAMILY_KINDS = ("cycle", "hamming", "johnson", "petersen", "hypercube")

#: Refuse graphs larger than this unless the caller raises the cap; the
#: downstream idempotents are dense |X| x |X| matrices.
DEFAULT_MAX_VERTICES = 10000


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = ()


def cycle_graph(n: int) -> Graph:
    """Cycle C_n, n >= 5 (smaller cycles are complete or complete bipartite)."""
    if n < 5:
        raise InvalidFamilyParams(f"cycle requires n >= 5, got {n}")
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    adj[idx, (idx + 1) % n] = True
    adj[(idx + 1) % n, idx] = True
    return Graph(n, adj)


def hamming_graph(d: int, q: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Hamming graph H(d,q): words of length d over a q-letter alphabet,
    adjacent iff they differ in exactly one coordinate."""
    if d < 2 or q < 2:
        raise InvalidFamilyParams(f"hamming requires d >= 2 and q >= 2, got d={d}, q={q}")
    n = q**d
    if n > max_vertices:
        raise InvalidFamilyParams(f"hamming({d},{q}) has {n} vertices, cap is {max_vertices}")
    words = list(itertools.product(range(q), repeat=d))
    index = {w: i for i, w in enumerate(words)}
    adj = np.zeros((n, n), dtype=bool)
    for i, w in enumerate(words):
        for pos in range(d):
            for letter in range(q):
                if letter != w[pos]:
                    j = index[w[:pos] + (letter,) + w[pos + 1 :]]
                    adj[i, j] = True
    return Graph(n, adj)


def hypercube_graph(d: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """The d-cube; identical to hamming_graph(d, 2) including vertex labels."""
    return hamming_graph(d, 2, max_vertices)


def johnson_graph(n: int, k: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Johnson graph J(n,k): k-subsets of an n-set, adjacent iff the
    intersection has size k-1. Requires n > k >= 2 and n >= 2k."""
    if k < 2 or n <= k or n < 2 * k:
        raise InvalidFamilyParams(f"johnson requires n > k >= 2 and n >= 2k, got n={n}, k={k}")
    subsets = list(itertools.combinations(range(n), k))
    m = len(subsets)
    if m > max_vertices:
        raise InvalidFamilyParams(f"johnson({n},{k}) has {m} vertices, cap is {max_vertices}")
    sets = [frozenset(s) for s in subsets]
    adj = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if len(sets[i] & sets[j]) == k - 1:
                adj[i, j] = adj[j, i] = True
    return Graph(m, adj)


def petersen_graph() -> Graph:
    """Petersen graph: 2-subsets of a 5-set, adjacent iff disjoint."""
    subsets = [frozenset(s) for s in itertools.combinations(range(5), 2)]
    adj = np.zeros((10, 10), dtype=bool)
    for i in range(10):
        for j in range(i + 1, 10):
            if not subsets[i] & subsets[j]:
                adj[i, j] = adj[j, i] = True
    return Graph(10, adj)


def _arity(kind: str) -> int:
    return {"cycle": 1, "hamming": 2, "johnson": 2, "petersen": 0, "hypercube": 1}[kind]


def generate(spec: FamilySpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Build the graph named by `spec`. Raises InvalidFamilyParams on bad input."""
    if spec.kind not in FAMILY_KINDS:
        raise InvalidFamilyParams(f"unknown family {spec.kind!r}, expected one of {FAMILY_KINDS}")
    if len(spec.params) != _arity(spec.kind):
        raise InvalidFamilyParams(
            f"family {spec.kind!r} takes {_arity(spec.kind)} parameter(s), got {len(spec.params)}"
        )
    if spec.kind == "cycle":
        n = spec.params[0]
        if n > max_vertices:
            raise InvalidFamilyParams(f"cycle({n}) exceeds the {max_vertices}-vertex cap")
        return cycle_graph(n)
    if spec.kind == "hamming":
        return hamming_graph(*spec.params, max_vertices=max_vertices)
    if spec.kind == "johnson":
        return johnson_graph(*spec.params, max_vertices=max_vertices)
    if spec.kind == "hypercube":
        return hypercube_graph(spec.params[0], max_vertices=max_vertices)
    return petersen_graph()
