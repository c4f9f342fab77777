"""Exact computations for sum-product estimates and expander functions."""

from .energy import (
    EnergyValue,
    MultiplicityTable,
    additive_energy,
    energy_k,
    multiplicative_energy,
    quartic_count_products,
    quartic_count_squares,
    rep_table,
    shift_square_solutions,
)
from .exact import DomainError, Interval, LogKey, ValidationError, dyadic_split, logkey_make, normalize
from .gensearch import GenSpec, SearchResult, generate, search_minimize
from .setops import (
    KeySet,
    RSet,
    balog_image,
    binary_image,
    composite_image,
    distance_image,
    five_var_image,
    jones_image,
    shift_square_image,
    sumset,
    ungar_image,
)
from .structure import (
    DstarWitness,
    DyadicWitness,
    d_upper,
    dstar_upper,
    dstar_witness_check,
    dyadic_pigeonhole,
    tail_count,
)
from .verify import (
    VerificationReport,
    case_split,
    case_split_trace,
    verify_exact,
    verify_interval_suite,
    verify_ratio_suite,
)

__version__ = "0.1.0"
