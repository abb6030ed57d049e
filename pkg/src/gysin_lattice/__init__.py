"""Exact q=0 colored vertex models, their partition functions, the coset
symmetrizer for partial flag bundles and double Grothendieck polynomials."""

from .algebra import (
    LaurentPoly,
    NonDivisible,
    RatFun,
    VarTable,
    VarTableMismatch,
    poly_add,
    poly_eval,
    poly_exact_div,
    poly_mul,
    poly_permute,
    poly_substitute,
    ring,
)
from .grothendieck import (
    factorial_power,
    groth_det,
    partition_to_word,
    verify_eq_611,
    verify_lattice_correspondence,
    word_to_partition,
)
from .partition import (
    FlagShape,
    GridSpec,
    brute_force_grid,
    column_transfer,
    compute_F,
    compute_G,
    compute_H,
    grid_for,
)
from .report import Outcome
from .suites import SUITES, SuiteArgs, run_suite
from .symmetrizer import (
    CosetRep,
    check_multiple_commutation,
    coset_reps,
    gysin_pushforward_check,
    symmetrize,
)
from .vertex import (
    RowOpSpec,
    StateVector,
    apply_product,
    apply_row,
    apply_row_extended,
    b_op,
    d_op,
    r_entry,
    rq_entry,
    vertical_T_entry,
)

__version__ = "0.1.0"
