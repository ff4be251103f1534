"""Exception hierarchy shared by all modules."""


class StarSearchError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StarSearchError, ValueError):
    """An argument lies outside the domain of a function."""


class InfeasibleInstanceError(StarSearchError, ValueError):
    """The present targets cannot reach the weight goal."""


class ProtocolError(StarSearchError):
    """A strategy broke the excursion protocol (cleared ray, bad depth, ...)."""


class ExhaustionError(StarSearchError):
    """A strategy was asked for a move after every ray was cleared."""


class ShapeError(StarSearchError, ValueError):
    """A trace does not have the shape produced by the adaptive strategy."""


class CapacityError(StarSearchError, ValueError):
    """An exhaustive oracle was asked for more than its enumeration guard."""


class DegenerateInstanceError(StarSearchError, ValueError):
    """A ratio quantity is undefined because the optimal cost is zero."""


class GenerationError(StarSearchError):
    """An adversary could not build an instance for the requested strategy."""
