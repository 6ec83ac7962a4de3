"""Distance-regular graph analysis: spectra, Krein parameters, Q-polynomial
orderings, and the Norton algebra product computed three independent ways."""

from .errors import (
    DegenerateDenominator,
    DegenerateSpectrum,
    DiameterTooSmall,
    DisconnectedGraph,
    EdgeListParseError,
    EigensolverFailure,
    IdempotencyViolation,
    InputNotInEigenspace,
    InvalidFamilyParams,
    KreinInvariantViolation,
    NortonError,
    NotConstantOnDistanceClasses,
    NotDistanceRegular,
    SameVertex,
    SpectralInvariantViolation,
)
from .families import FamilySpec, cycle_graph, generate, hamming_graph, hypercube_graph, johnson_graph, petersen_graph
from .graph_core import (
    DistanceMatrix,
    Graph,
    IntersectionData,
    check_distance_regular,
    distance_matrices,
    distance_matrix,
)
from .norton import (
    LocalSplit,
    NortonContext,
    associator,
    balanced_set_check,
    cb_vectors,
    cibi_identity_check,
    local_split,
    make_context,
    norton_product_direct,
    norton_product_formula,
    norton_product_symmetric,
    q111_from_formula,
    sum_identity_check,
)
from .qpoly import (
    QPolynomialStructure,
    complete_structures,
    dual_eigenvalues,
    find_q_polynomial_orderings,
    theta2_identity_check,
    verify_recurrence,
)
from .spectral import (
    KreinTensor,
    SpectralDecomposition,
    eigenvalues,
    krein_parameters,
    primitive_idempotents,
    spectral_decomposition,
)

__version__ = "0.1.0"
