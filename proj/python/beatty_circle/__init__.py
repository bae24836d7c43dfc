"""Beatty-prime representation counts, singular series and exponential sums."""

from ._core import (
    BeattySequence,
    ContinuedFraction,
    RealExpr,
    SingularSeriesValue,
    SmoothedIndicator,
    count_all_upto,
    count_exact,
    continued_fraction,
    exceptional_scan,
    farey_arcs,
    lemma3_approx,
    main_term,
    parse_real_expr,
    parseval_check,
    primes_upto,
    S_grid,
    S_point,
    singular_series,
    smoothed_count,
)

__all__ = [
    "BeattySequence",
    "ContinuedFraction",
    "RealExpr",
    "SingularSeriesValue",
    "SmoothedIndicator",
    "count_all_upto",
    "count_exact",
    "continued_fraction",
    "exceptional_scan",
    "farey_arcs",
    "lemma3_approx",
    "main_term",
    "parse_real_expr",
    "parseval_check",
    "primes_upto",
    "S_grid",
    "S_point",
    "singular_series",
    "smoothed_count",
]
