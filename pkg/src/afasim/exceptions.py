"""
afasim.exceptions - errors that may be raised
"""


class StructuralError(ValueError):
    """An input violates a precondition of the requested operation."""


class DimensionMismatch(StructuralError):
    pass


class UnknownSymbol(StructuralError):
    pass


class BasisMismatch(StructuralError):
    pass


class InsufficientPrecision(StructuralError):
    pass


class NotUnary(StructuralError):
    pass


class InvalidAutomaton(StructuralError):
    """
    A type invariant of an automaton does not hold.

    :param message: description of the first violated invariant
    :param lineno: 1-based line in the automaton text, if known
    """

    def __init__(self, message, lineno=None):
        super().__init__(message)
        self.message = message
        self.lineno = lineno

    def at_line(self, lineno):
        """Return a copy of this error pinned to `lineno`."""
        return type(self)(self.message, lineno=lineno)

    def __str__(self):
        if self.lineno is None:
            return self.message
        return "line {}: {}".format(self.lineno, self.message)


class AutomatonSyntaxError(InvalidAutomaton):
    pass


class SpaceBoundExceeded(AssertionError):
    """A working register grew past the logarithmic width contract."""


class LowDegreePolynomial(Warning):
    """A polynomial language of degree <= 2, outside the non-affinity criterion."""
