"""citri: colored interlacing triangles.

Validation and symmetries of the triangle model, exact enumeration of
triangle counts, the inter-level psi statistic, q-counting polynomials
and their coefficient analysis, Genocchi medians via Dumont
derangements, and Metropolis-Hastings sampling of the q-weighted
measure on depth-2 triangles.
"""

from .core import (
    Diagnostic,
    MergedRow,
    Row,
    Triangle,
    apply_color_permutation,
    boundary_involution,
    canonicalize_bottom,
    color_complement,
    identity_staircase,
    is_interlacing,
    is_valid_triangle,
    merge_rows,
    triangle_from_json,
    triangle_from_text,
    triangle_to_json,
    triangle_to_text,
    validate_triangle,
)
from .dumont import (
    count_dumont,
    dumont_derangements,
    dumont_to_top_row,
    is_dumont,
    top_row_to_dumont,
)
from .enumeration import (
    CountReport,
    ResourceLimitError,
    count_triangles,
    divisor_check,
    extensions,
    two_adic_valuation,
)
from .polynomials import ExactDivisionError, NPoly, QPoly, is_log_concave, is_palindromic
from .psi import PsiContractError, psi_formula, psi_total, psi_vertex
from .qanalogs import (
    q_analog_han_zeng,
    q_analog_randrianarivony,
    q_analog_zeng_zhou,
)
from .qenum import (
    LowCoefficients,
    a1_check,
    h_sigma_polynomial,
    low_coefficients,
    p_polynomial,
    t2_q_polynomial,
)
from .analysis import (
    fit_coefficient_polynomial,
    hankel_determinant,
    leading_coefficient_check,
    moments_to_cumulants,
    smallest_positive_root,
)
from .sampler import (
    Depth2State,
    SamplerConfig,
    SamplerStats,
    SplitMix64,
    connectivity_check,
    exact_distribution,
    initial_state,
    level1_swap,
    level2_swap,
    mh_step,
    run,
)

__version__ = "0.1.0"
