"""Exception hierarchy.

Every precondition failure raised by the library derives from
:class:`GraphError`, which is a :class:`ValueError`. The CLI maps the
subclasses onto distinct exit codes.
"""


class GraphError(ValueError):
    """Base class for invalid-input errors."""


class InvalidGraphError(GraphError):
    """Malformed graph: loop edge, endpoint out of range, bad file."""


class DisconnectedGraphError(GraphError):
    pass


class BridgeError(GraphError):
    """A bridge was found where a bridgeless graph is required."""


class DegreeError(GraphError):
    """A vertex degree is outside the range an algorithm accepts."""


class BudgetExceededError(GraphError):
    """Instance is larger than the configured enumeration/DP/LP budget."""


class NoPerfectMatchingError(GraphError):
    pass


class PreconditionError(GraphError):
    """Any other violated precondition (simplicity, size, parity...)."""


class EulerianError(GraphError):
    """An edge multiset is not a connected, spanning, even-degree subgraph."""
