"""Exception types shared across the package."""


class HypergraphError(ValueError):
    pass


class InvalidParameter(HypergraphError):
    pass


class VertexOutOfRange(HypergraphError):
    pass


class RankMismatch(HypergraphError):
    pass


class TargetNotFound(HypergraphError):
    pass


class SizeLimitExceeded(HypergraphError):
    pass


class DimensionMismatch(HypergraphError):
    pass


class NotExchangeable(HypergraphError):
    """Raised by symmetrize when the two vertices are not interchangeable."""


class RankTooSmall(HypergraphError):
    pass


class SingularityError(HypergraphError):
    pass


class ParseError(HypergraphError):
    """Malformed graph file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
