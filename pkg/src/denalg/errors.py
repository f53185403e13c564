"""Exception types shared across the package."""


class DenalgError(Exception):
    """Base class for all library errors."""


class UniverseMismatch(DenalgError):
    """Operands live in different variable universes."""


class UnknownVariable(DenalgError):
    """A variable name does not exist in the universe."""


class ParityMismatch(DenalgError):
    """A substitution or component violates parity bookkeeping."""


class SubstitutionInfeasible(DenalgError):
    """A pseudo-power substitution cannot be carried out exactly."""


class NotInvertible(SubstitutionInfeasible):
    """Element is not a unit of the graded ring (constant times 1 + nilpotent)."""


class WeightOneSingular(DenalgError):
    """Weight-1 component present where (w - 1) must be inverted."""


class NotWeightHomogeneous(DenalgError):
    """Operation requires a weight-homogeneous input."""


class NotParityHomogeneous(DenalgError):
    """Operation requires a parity-homogeneous input."""


class NotAntiSelfAdjoint(DenalgError):
    """Operator fails the L* = -L precondition."""


class NotSelfAdjoint(DenalgError):
    """Operator fails the L* = L precondition."""


class OrderViolation(DenalgError):
    """Differential operator exceeds the stated order bound."""


class SingularMatrix(DenalgError):
    """Matrix has no inverse over the graded ring."""


class ChartMapError(DenalgError):
    """Chart map is malformed (parity, dimension or round-trip failure)."""


class CoercionError(DenalgError):
    """Parsed object does not have the shape a command requires."""


class ParseError(DenalgError):
    """Syntax or lookup error in the expression DSL, with position info."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
