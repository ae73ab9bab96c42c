class ParseqError(Exception):
    """Base class for errors raised by this package."""


class ShapeMismatch(ParseqError, ValueError):
    pass
