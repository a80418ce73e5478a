"""Exact solver for the two-candidate Euclidean voting game."""
from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    DuplicatePointError,
    EuclidVoteError,
    ParseError,
    PreconditionError,
    UnsupportedDimensionError,
)
from .geometry import Hyperplane, Line, PlaneBasis, VoterSet
from .oracle import Scores, BestResponse, best_response, evaluate, find_rado_point, guaranteed_votes
from .solver import Outcome, Verdict, Witness, WitnessKind, solve

__version__ = "0.1.0"

__all__ = [
    "BestResponse",
    "DegenerateInputError",
    "DimensionMismatchError",
    "DuplicatePointError",
    "EuclidVoteError",
    "Hyperplane",
    "Line",
    "Outcome",
    "ParseError",
    "PlaneBasis",
    "PreconditionError",
    "Scores",
    "UnsupportedDimensionError",
    "Verdict",
    "VoterSet",
    "Witness",
    "WitnessKind",
    "best_response",
    "evaluate",
    "find_rado_point",
    "guaranteed_votes",
    "solve",
]
