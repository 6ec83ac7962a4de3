"""Exception types shared across the package.

Every error raised by the library derives from NortonError, so callers
(notably the CLI) can map failures to exit codes without string matching.
"""

from __future__ import annotations


class NortonError(Exception):
    """Base class for all library errors."""


class DisconnectedGraph(NortonError):
    """Some vertex pair has no connecting path."""

    def __init__(self, source: int, unreachable: int):
        self.source = source
        self.unreachable = unreachable
        super().__init__(
            f"graph is disconnected: vertex {unreachable} is unreachable from {source}"
        )


class DiameterTooSmall(NortonError):
    """The analysis needs diameter >= 2; complete graphs are rejected."""

    def __init__(self, d: int):
        self.d = d
        super().__init__(f"diameter {d} < 2: the analysis requires at least three distance classes")


class NotDistanceRegular(NortonError):
    """Intersection counts are not constant on some distance class.

    Carries the first witnessing (h, i, j, x, y) in lexicographic scan order,
    together with the count seen at the first pair of the class (`expected`)
    and the differing count (`actual`).
    """

    def __init__(self, h: int, i: int, j: int, x: int, y: int, expected: int, actual: int):
        self.witness = (h, i, j, x, y)
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"not distance-regular: |G_{i}(x) n G_{j}(y)| at distance {h} is "
            f"{actual} for (x,y)=({x},{y}) but {expected} at the first pair of the class"
        )


class InvalidFamilyParams(NortonError):
    """Family parameters out of range, or the generated graph would be too large."""


class EigensolverFailure(NortonError):
    """The symmetric tridiagonal eigensolver did not converge."""


class DegenerateSpectrum(NortonError):
    """Two eigenvalues (or dual eigenvalues) coincide within tolerance."""


class IdempotencyViolation(NortonError):
    """E_i E_j - delta_ij E_i exceeded tolerance for some pair."""


class SpectralInvariantViolation(NortonError):
    """A spectral decomposition invariant failed (resolution of identity,
    reconstruction of A, or non-integer multiplicities)."""


class KreinInvariantViolation(NortonError):
    """A Krein parameter is negative beyond tolerance."""


class NotConstantOnDistanceClasses(NortonError):
    """A matrix expected to lie in the Bose-Mesner algebra has entries that
    vary within a distance class."""


class DegenerateDenominator(NortonError):
    """A denominator of a closed-form identity vanished within tolerance."""


class SameVertex(NortonError):
    """Operation requires two distinct vertices."""


class InputNotInEigenspace(NortonError):
    """A vector passed to the Norton product is not fixed by E."""


class EdgeListParseError(NortonError):
    """Malformed edge-list input; carries file path and 1-based line number."""

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")
