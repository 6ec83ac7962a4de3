import hypothesis
import numpy as np
import pytest

from drgnorton import (
    check_distance_regular,
    cycle_graph,
    distance_matrix,
    hamming_graph,
    johnson_graph,
    krein_parameters,
    make_context,
    petersen_graph,
    spectral_decomposition,
)
from drgnorton.qpoly import complete_structures, find_q_polynomial_orderings

hypothesis.settings.register_profile("default", deadline=None, max_examples=25)
hypothesis.settings.load_profile("default")

TOL = 1e-8

CORPUS_BUILDERS = {
    "petersen": petersen_graph,
    "C5": lambda: cycle_graph(5),
    "C6": lambda: cycle_graph(6),
    "C8": lambda: cycle_graph(8),
    "C10": lambda: cycle_graph(10),
    "H(2,2)": lambda: hamming_graph(2, 2),
    "H(3,2)": lambda: hamming_graph(3, 2),
    "H(2,3)": lambda: hamming_graph(2, 3),
    "H(3,3)": lambda: hamming_graph(3, 3),
    "J(5,2)": lambda: johnson_graph(5, 2),
    "J(6,3)": lambda: johnson_graph(6, 3),
}


class Bundle:
    """One fully analyzed corpus graph, computed once per session."""

    def __init__(self, graph):
        self.graph = graph
        self.A = graph.adjacency.astype(np.float64)
        self.dm = distance_matrix(graph)
        self.idata = check_distance_regular(graph, self.dm)
        self.decomp = spectral_decomposition(self.A, self.idata, TOL)
        self.kt = krein_parameters(self.decomp)
        skeletons = find_q_polynomial_orderings(self.kt)
        self.structures = complete_structures(skeletons, self.decomp, self.dm, TOL)
        self.contexts = [
            make_context(self.A, self.dm, self.idata, self.decomp, qs, TOL)
            for qs in self.structures
        ]


@pytest.fixture(scope="session")
def corpus():
    return {name: Bundle(build()) for name, build in CORPUS_BUILDERS.items()}


@pytest.fixture(scope="session")
def petersen(corpus):
    return corpus["petersen"]


@pytest.fixture(scope="session")
def c6(corpus):
    return corpus["C6"]


@pytest.fixture(scope="session")
def cube(corpus):
    return corpus["H(3,2)"]
