"""Distance, quotient and product sets over F_p and F_{p^2}."""

__version__ = "0.1.0"

from .distance import PointSet, ProductSpec, distance_set_bruteforce, distance_set_ext, distance_set_product
from .energy import EnergyReport, cs_lower_bound, diff_count, energy_report, mm_bound
from .errors import ContextMismatchError, CountOverflowError, FieldError
from .fset import (
    CountVector,
    FSet,
    additive_count_convolution,
    difference_set,
    k_fold_sumset,
    multiplicative_count_convolution,
    negate_set,
    product_set,
    quotient_set,
    squared_difference_set,
    sumset,
)
from .prime_field import ExtFieldCtx, FieldCtx, find_nonresidue, get_ext_field, get_field, is_square, sqrt_of_minus_one
