"""Exception hierarchy shared across the package."""


class FasboundError(Exception):
    """Base class for all library errors."""


class GraphError(FasboundError):
    """Invalid graph construction or graph/ordering mismatch."""


class SelfLoopError(GraphError):
    pass


class DuplicateArcError(GraphError):
    pass


class TwoCycleError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class LengthMismatchError(GraphError):
    pass


class TooManyArcsError(FasboundError):
    pass


class BadProbabilityError(FasboundError):
    pass


class TooLargeError(FasboundError):
    """Instance exceeds the solver's vertex limit."""


class MemoryBudgetExceededError(FasboundError):
    """Solver would allocate more memory than allowed."""


class BadDomainError(FasboundError):
    """Formula argument outside its mathematical domain."""


class TooManyConfigurationsError(FasboundError):
    """Exhaustive enumeration would exceed the configuration guard."""


class MixedSweepError(FasboundError):
    """Plot records do not share a single sweep variable."""
