"""Exception types raised by euclidvote."""


class EuclidVoteError(ValueError):
    """Base class for all library errors."""


class DimensionMismatchError(EuclidVoteError):
    pass


class DegenerateInputError(EuclidVoteError):
    """An operation received coincident points, a zero vector, or similar."""


class DuplicatePointError(EuclidVoteError):
    def __init__(self, first: int, second: int, point=None):
        self.first = first
        self.second = second
        self.point = point
        super().__init__(f"duplicate point at indices {first} and {second}")


class PreconditionError(EuclidVoteError):
    """Input violates a documented precondition (parity, collinearity, membership)."""


class UnsupportedDimensionError(EuclidVoteError):
    pass


class ParseError(EuclidVoteError):
    pass
