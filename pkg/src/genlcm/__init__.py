"""Exact GCD, LCM and generalized LCM matrices, their factorizations and determinants."""

from .arithfun import (
    FunctionTable,
    PrefixSums,
    build_function_table,
    is_totally_multiplicative,
    parse_function,
    prefix_sums,
)
from .builders import (
    Factorization,
    MatrixFamily,
    build_f1_factorization,
    build_f1_matrix,
    build_f2_factorization,
    build_f2_matrix,
    build_gcd_matrix,
    build_lcm_matrix,
    build_lcm_structure_product,
)
from .dets import DetResult, bareiss_det, closed_form_det
from .exactmat import (
    ExactMatrix,
    diagonal,
    divisibility_matrix,
    entrywise_equal,
    first_mismatch,
    multiply,
    nondivisibility_matrix,
    transpose,
)
from .verify import SuiteConfig, VerifyReport, oracle_f1_entry, oracle_f2_entry, run_suite

__version__ = "0.1.0"
