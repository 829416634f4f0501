"""Split repetitions in words: detectors, counting bounds, de Bruijn
constructions, and exhaustive extremal searches."""

from .detect import (
    GapConvention,
    Violation,
    ViolationKind,
    count_nondisjoint_occurrences,
    find_disjoint_pair,
    find_reversed_split_t_overlap,
    find_split_t_overlap,
    find_t_overlap_factor,
    is_t_overlap,
)
from .search import (
    ProblemKind,
    SearchBudget,
    SearchOutcome,
    SearchProblem,
    SearchState,
    SearchStatus,
    extend_check,
    frontier_lower_bound,
    longest_avoiding,
    verify_witness,
)
from .words import (
    BorderTable,
    Word,
    border_array,
    format_word,
    from_letters,
    is_primitive,
    is_unbordered,
    occurrences,
    overlap_from_overlapping_pair,
    parse_word,
    period,
    word,
)

__all__ = [
    "BorderTable",
    "GapConvention",
    "ProblemKind",
    "SearchBudget",
    "SearchOutcome",
    "SearchProblem",
    "SearchState",
    "SearchStatus",
    "Violation",
    "ViolationKind",
    "Word",
    "border_array",
    "count_nondisjoint_occurrences",
    "extend_check",
    "find_disjoint_pair",
    "find_reversed_split_t_overlap",
    "find_split_t_overlap",
    "find_t_overlap_factor",
    "format_word",
    "from_letters",
    "frontier_lower_bound",
    "is_primitive",
    "is_t_overlap",
    "is_unbordered",
    "longest_avoiding",
    "occurrences",
    "overlap_from_overlapping_pair",
    "parse_word",
    "period",
    "verify_witness",
    "word",
]
