"""Exact and certified tools for continued-fraction sets and the extremal functions built on them."""

from .cf import (
    CFStream,
    ContinuedFraction,
    ConvergentTable,
    Truncation,
    cf_evaluate,
    cf_from_rational,
    cf_negate,
    cf_truncate,
    convergent_table,
)
from .intervals import (
    IntervalSet,
    RatInterval,
    fundamental_interval,
    iset_affine,
    iset_complement,
    iset_intersect,
    iset_measure,
    iset_normalize,
    iset_union,
    tail_cylinder,
)
from .khinchin_sets import (
    BudgetExhausted,
    EnumeratedSet,
    FFamily,
    GFamily,
    GParams,
    LineExtension,
    PhiSchedule,
    enumerate_F0,
    enumerate_G0,
    extend_to_line,
    validate_A,
)
from .functions import (
    BuildConfig,
    CoverPair,
    FunctionContext,
    GrowthSequence,
    PiecewiseLinear,
    build_cover,
    build_urysohn,
    choose_schedule,
    f_level_eval,
    f_total_eval,
    growth_preset,
    normalize_growth,
    support_report,
    u_eval,
)

__version__ = "0.1.0"
