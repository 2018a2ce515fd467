"""Exception hierarchy shared across the package.

Every error raised on a user-facing path derives from :class:`QsmoothError`,
so the CLI can map any of them to exit code 2.
"""

from __future__ import annotations


class QsmoothError(Exception):
    """Base class for all package errors."""


class ParseError(QsmoothError):
    """Malformed input file; carries the file path and 1-based line number."""

    def __init__(self, message: str, path: str = "<string>", line: int | None = None):
        self.path = path
        self.line = line
        where = path if line is None else f"{path}:{line}"
        super().__init__(f"{where}: {message}")


class EmptyInput(QsmoothError):
    """An operation received an empty point or row list."""


class DimensionMismatch(QsmoothError):
    """Vectors or polytopes of incompatible ambient dimension."""


class NotFullDim(QsmoothError):
    """Operation requires a full-dimensional polytope."""


class NotInteriorOrigin(QsmoothError):
    """Polar dual requires the origin strictly inside the polytope."""


class DegenerateFan(QsmoothError):
    """Fan rays do not span the ambient lattice over the rationals."""


class IrrelevantStratum(QsmoothError):
    """Variable subset contains an irrelevant component."""


class NotBaseStratum(QsmoothError):
    """Variable subset is not a stratum of the base locus."""


class EmptyGamma(QsmoothError):
    """A nonempty variable subset was required."""


class NotHomogeneous(QsmoothError):
    """Monomials do not share a common degree; carries the offending pair."""

    def __init__(self, row_a: int, row_b: int, difference):
        self.row_a = row_a
        self.row_b = row_b
        self.difference = tuple(difference)
        super().__init__(
            f"monomials {row_a + 1} and {row_b + 1} differ in degree "
            f"(graded difference {self.difference})"
        )


class DuplicateMonomial(QsmoothError):
    """The exponent matrix contains two identical rows."""


class MethodDisagreement(QsmoothError):
    """The two decision procedures disagreed on a stratum.

    This signals an implementation bug or a genuine reading discrepancy;
    it is never resolved silently.
    """

    def __init__(self, stratum, rank_result, polytope_result):
        self.stratum = tuple(stratum)
        self.rank_result = rank_result
        self.polytope_result = polytope_result
        super().__init__(
            f"rank and polytope checks disagree on stratum {self.stratum}: "
            f"rank={rank_result!r}, polytope={polytope_result!r}"
        )


class NotFakeWPS(QsmoothError):
    """Ambient is not a fake weighted projective space."""


class GeneratorInBasis(QsmoothError):
    """The monomial basis contains a coordinate variable."""


class NotSquare(QsmoothError):
    """Exponent matrix must be square."""


class DegreeTooSmall(QsmoothError):
    """System degree does not exceed every variable degree."""


class SingularMatrix(QsmoothError):
    """Exponent matrix is not invertible over the rationals."""


class NoPositiveSolution(QsmoothError):
    """Transposed system admits no positive weight vector."""


class PointOutsideP2(QsmoothError):
    """A lattice point maps to a negative exponent."""


class NonIntegralDual(QsmoothError):
    """A polar dual has non-integral vertices."""
