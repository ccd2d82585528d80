"""Cyclic placement delivery arrays for multi-access coded caching.

Build the k-cyclic regular PDA for a (K, k, L) point, validate arbitrary
arrays, simulate the XOR delivery byte for byte, and compare the resulting
rate and sub-packetization against other schemes.
"""

from .compare import (
    Scheme,
    SchemeRow,
    SweepTable,
    compare,
    gain_lemma_predicates,
    rate_lb,
    rate_new,
    rate_nk,
    rate_nt,
    rate_rk,
    spe_row,
    sweep,
    weak_compositions,
)
from .construct import (
    DegenerateBlockCountError,
    ParameterError,
    SchemeParams,
    TrivialRegimeError,
    build_A,
    build_P1,
    check_params,
    construct,
    construct_stages,
    expand_rows,
)
from .oracle import validate_oracle
from .pda import (
    STAR,
    Pda,
    StructuralError,
    ValidationReport,
    Violation,
    concat_columns,
    format_pda,
    parse_pda,
    shift_add,
    transpose,
    validate,
)
from .sim import Library, SimReport, Transmission, accessible, decode, deliver, place, simulate

__version__ = "0.1.0"
