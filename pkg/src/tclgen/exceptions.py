"""Exception types raised across the package."""


class GraphError(ValueError):
    """Base class for data errors on graph inputs."""


class EmptyGraph(GraphError):
    """Raised when an operation needs at least one edge."""


class IsolatedNode(GraphError):
    """Raised when a neighbor is requested from a node of degree zero."""


class NotAnEdge(GraphError):
    """Raised when a pair is expected to be an edge of the graph but is not."""


class GraphTooDense(GraphError):
    """Raised when edge placement exceeds its attempt budget."""


class EmptySample(ValueError):
    pass


class EmptySeries(ValueError):
    pass


class NoTriples(GraphError):
    """Raised when global clustering is requested on a graph without connected triples."""


class InvariantViolation(AssertionError):
    """Raised by internal consistency checks; signals a bug, not bad input."""
