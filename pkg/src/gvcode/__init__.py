"""Optimal prefix-free codes for geometrically distributed integers, with analysis tools."""

from .analysis import (
    AnalysisRow,
    FluctuationConstants,
    analyze,
    compute_constants,
    entropy,
    expected_length_asymptotic,
    expected_length_enumeration,
    expected_length_exact,
    fluctuation,
)
from .codec import (
    CodeParams,
    GeometricSource,
    SymbolSplit,
    TruncatedStreamError,
    compute_params,
    decode,
    encode,
    encode_quotient,
    encode_remainder,
    split,
)

__version__ = "0.1.0"
