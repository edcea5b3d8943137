"""Exception hierarchy.

Every error names the invariant that failed, so the CLI can report it
verbatim and exit with code 2.
"""


class TrisectError(ValueError):
    """Base class for all invalid-input errors raised by this package."""

    invariant = "Invalid"

    def __init__(self, message=""):
        super().__init__(f"{self.invariant}: {message}" if message else self.invariant)


class DimensionMismatch(TrisectError):
    invariant = "DimensionMismatch"


class NotSquare(TrisectError):
    invariant = "NotSquare"


class NotSymmetric(TrisectError):
    invariant = "NotSymmetric"


class NotUnimodular(TrisectError):
    invariant = "NotUnimodular"


class Degenerate(TrisectError):
    invariant = "Degenerate"


class NotIsotropic(TrisectError):
    invariant = "NotIsotropic"


class NotPrimitive(TrisectError):
    invariant = "NotPrimitive"


class WrongRank(TrisectError):
    invariant = "WrongRank"


class InvalidDiagram(TrisectError):
    invariant = "InvalidDiagram"


class NonInvertiblePairing(TrisectError):
    invariant = "NonInvertiblePairing"


class AsymmetricResult(TrisectError):
    invariant = "AsymmetricResult"


class NonStandardDiagram(TrisectError):
    invariant = "NonStandardDiagram"


class InvalidChain(TrisectError):
    invariant = "InvalidChain"


class NoIntegerSolution(TrisectError):
    invariant = "NoIntegerSolution"


class InvalidBasis(TrisectError):
    invariant = "InvalidBasis"


class OddRank(TrisectError):
    invariant = "OddRank"


class DegeneratePairing(TrisectError):
    invariant = "DegeneratePairing"


class IncompleteLinkingData(TrisectError):
    invariant = "IncompleteLinkingData"


class OddForm(TrisectError):
    invariant = "OddForm"


class ParseError(TrisectError):
    invariant = "ParseError"
