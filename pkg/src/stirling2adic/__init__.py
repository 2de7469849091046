"""Exact Stirling numbers, their 2-adic valuations, and congruence-class level trees."""

from .exact import (
    INF,
    DivisibilityViolation,
    InvalidPrime,
    StirlingRowPair,
    inversion_check,
    stirling1_signed,
    stirling2,
    stirling2_column,
    stirling2_explicit,
    stirling2_series,
    vp,
)
from .levels import (
    ClassId,
    ClassStatus,
    ExactPeriodic,
    LevelTree,
    Sampled,
    build_level_tree,
    class_members,
    classify,
    export_tree,
    m_level,
)
from .padic import (
    PrecisionExceeded,
    PreconditionViolation,
    Residue,
    digit_step_identity,
    lte_valuation,
    numerator_period,
    s2_digits,
    s5_numerator_mod,
    u_index,
    v2_stirling5,
)

__version__ = "0.1.0"
