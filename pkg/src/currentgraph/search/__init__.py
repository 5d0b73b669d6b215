"""Ladder scaffolds and the search for current assignments on them."""

from .runner import SearchConstraints, SearchOutcome, run_search
from .scaffold import EndShape, LadderScaffold, ScaffoldError, build_scaffold, end_shapes
from .solver import Skeleton, prune_partial, search

__all__ = [
    "EndShape",
    "LadderScaffold",
    "ScaffoldError",
    "SearchConstraints",
    "SearchOutcome",
    "Skeleton",
    "build_scaffold",
    "end_shapes",
    "prune_partial",
    "run_search",
    "search",
]
