class SpreadComplexityError(Exception):
    """Base class for errors raised by this package."""


class GraphFormatError(SpreadComplexityError, ValueError):
    """Graph text could not be parsed: bad syntax, index out of range, self-loop or duplicate edge."""


class InfeasibleParametersError(SpreadComplexityError, ValueError):
    """Parameters describe an object that does not exist (e.g. a k-regular graph with odd k(D-1))."""
