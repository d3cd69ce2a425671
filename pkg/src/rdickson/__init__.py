"""Reversed Dickson polynomials over residue rings: evaluation, permutation tests and scans."""

from .classify import (
    Check,
    ConjectureVerdict,
    IndexClassification,
    PeriodReport,
    derivative_quarter_period,
    scan_first_kind_cpp,
    scan_first_kind_pp,
    scan_indices,
    scan_ring,
    scan_second_kind_cpp,
    scan_second_kind_pp,
)
from .dickson import (
    FIRST,
    SECOND,
    CoefPoly,
    RdpSpec,
    coefficient_poly,
    derivative_first_kind,
    derivative_second_kind,
    eval_explicit,
    eval_functional,
    eval_recurrence,
    formal_derivative,
    value_table,
)
from .permcheck import (
    CycleType,
    NotBijective,
    PermMap,
    PermReport,
    analyze,
    cycle_type,
    fixed_points,
    hermite_check,
    is_cpp,
    is_permutation,
    is_pp_crt,
    is_pp_prime_power,
    rdp_map,
    tabulate,
)
from .ring import (
    InvalidModulus,
    NotInvertible,
    QuadExtElem,
    ResidueRing,
    UnsupportedRing,
    ext_make,
    legendre,
    mult_order,
    ring_inv,
    sqrt_mod,
)

__version__ = "0.1.0"
