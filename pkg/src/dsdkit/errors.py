"""Exception hierarchy shared by every dsdkit module."""


class DsdError(ValueError):
    """Base class for all dsdkit errors."""


class ParseError(DsdError):
    pass


class DuplicateEdge(DsdError):
    pass


class SelfLoopInInput(DsdError):
    pass


class DegenerateGraph(DsdError):
    pass


class SizeLimit(DsdError):
    pass


class Disconnected(DsdError):
    pass


class IsolatedVertex(DsdError):
    pass


class InvalidVertex(DsdError, IndexError):
    pass


class InvalidParameter(DsdError):
    pass


class InvalidSpectrum(DsdError):
    pass


class InvalidWeights(DsdError):
    pass


class EigensolverFailure(DsdError, ArithmeticError):
    pass


class ConnectivityMismatch(DsdError):
    pass


class NumericalSingularity(DsdError, ArithmeticError):
    pass


class NonconvergentWalk(DsdError):
    """Raised when a non-lazy walk is asked to converge on a bipartite graph."""
