"""Exception hierarchy shared by every module."""


class LcSchurError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(LcSchurError, ValueError):
    pass


class OutOfRange(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class NotAPartition(GraphError):
    pass


class ZeroClique(GraphError):
    pass


class NotConnected(GraphError):
    pass


class NotALeaf(GraphError):
    pass


class TooLarge(LcSchurError):
    """A resource guard refused an exponential computation."""


class ConstantTermNotOne(LcSchurError, ValueError):
    pass


class NotSymmetric(LcSchurError, ValueError):
    pass


class WrongCase(LcSchurError, ValueError):
    """A weight map is outside the case an operation is defined on."""


class NotInImage(LcSchurError, ValueError):
    pass


class ParseError(LcSchurError, ValueError):
    pass
