"""Exception types shared across the library.

Every domain-level failure derives from TdaError so callers (and the
command-line front end) can distinguish bad inputs from genuine bugs.
"""


class TdaError(Exception):
    """Base class for precondition and validation failures."""


class ParseError(TdaError):
    """A text input could not be parsed.

    Carries the offending path and 1-based line number when known.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix += f"{path}:"
        if line is not None:
            prefix += f"{line}:"
        if prefix:
            prefix += " "
        super().__init__(prefix + message)


class FiltrationViolation(TdaError):
    """A cell would enter the filtration before one of its faces."""


class MissingVertexValue(TdaError):
    """A vertex has no value in a vertex-based filtration assignment."""


class MissingTopCellValue(TdaError):
    """A maximal cell has no value in a top-cell filtration assignment."""


class UnsortedComplex(TdaError):
    """A boundary matrix was requested from a complex not in canonical order."""


class AsymmetricMatrix(TdaError):
    """A distance matrix is not symmetric within tolerance."""


class NegativeEntry(TdaError):
    """A distance matrix contains a negative entry."""


class NonzeroDiagonal(TdaError):
    """A distance matrix has a nonzero diagonal entry."""


class SizeMismatch(TdaError):
    """A grid's value count does not match the product of its extents."""


class NonBinaryValue(TdaError):
    """A bitmap declared binary contains a value other than 0 or 1."""


class BadProbability(TdaError):
    """A probability parameter lies outside [0, 1]."""


class EmptyPointCloud(TdaError):
    """An operation that needs at least one point received none."""


class BadBandwidth(TdaError):
    """A kernel bandwidth is not strictly positive."""


class WindowTooLarge(TdaError):
    """A sliding window is longer than the series it slides over."""


class DanglingEdge(TdaError):
    """A graph edge references a vertex that is not in the vertex set."""


class DisconnectedGraph(TdaError):
    """An operation that requires a connected graph received one that is not."""


class MixedEssential(TdaError):
    """Diagrams have mismatched essential points and no finite cutoff was given."""


class BadInterval(TdaError):
    """A persistence interval does not satisfy birth < death."""


class BadExponent(TdaError):
    """A norm exponent is below 1."""


class EmptyInput(TdaError):
    """A sequence argument that must be non-empty is empty."""


class UnequalSampleSizes(TdaError):
    """The two samples of a permutation test differ in size."""


class BadParameter(TdaError):
    """A numeric parameter violates an operation's precondition."""
