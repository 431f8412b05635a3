"""Deformed branching graphs over wreath products.

Exact combinatorics of colored multipartitions: Jack-deformed edge
multiplicities, dimension recursions and Martin kernels, multiparameter
Ewens measures with their boundary kernels, and seeded samplers for the
multi-class Poisson-Dirichlet boundary.
"""
from .branching import (
    GraphContext,
    big_dim,
    big_dim_level,
    chi_theta,
    dim_theta,
    dim_theta_level,
    graph_laplacian_apply,
    martin_kernel,
    martin_kernel_shifted,
    propagator,
    propagator_row,
    shifted_jack_eval,
    upsilon,
)
from .errors import BudgetError, VerificationError
from .groups import (
    FiniteGroupData,
    GroupValidationError,
    builtin_group,
    check_orthogonality,
    class_of,
    element_index,
    load_group,
    load_group_file,
    resolve_group,
)
from .measures import (
    EwensParams,
    LevelMeasure,
    check_harmonicity,
    check_mps_consistency,
    deletion_row,
    deletion_transition,
    ewens_multi,
    ewens_single,
    ewens_weight,
    harmonic_from_product,
    level_measure_ewens,
    pochhammer_simplex_identity,
    rising,
)
from .partitions import (
    Diagram,
    MultiPartition,
    conjugate,
    covering_pairs,
    enumerate_multipartitions,
    enumerate_partitions,
    format_multipartition,
    parse_multipartition,
    removal_pairs,
    theta_content_split,
    total_size,
)
from .sampling import (
    McEstimate,
    MpdSample,
    RngStream,
    as_thoma,
    expected_atoms_above,
    mc_estimate_ewens,
    mpd_correlation,
    pd_correlation,
    sample_dirichlet,
    sample_mpd,
    sample_pd,
)
from .symfunc import (
    SymFuncExpr,
    hook_product,
    jack_p,
    jack_p_powersum,
    monomial_to_powersum,
    pieri_check,
    powersum_to_monomial_expr,
    shifted_powersum,
    top_degree_map,
)
from .thoma import (
    ThomaPoint,
    boundary_gap,
    embed_multipartition,
    extended_jack,
    extended_monomial,
    extended_powersum,
    kernel_harmonic_defect,
    kernel_kingman,
    kernel_level_sum,
    kernel_theta,
    thoma_from_json,
    thoma_to_json,
)
from .wreath import (
    WreathElement,
    class_size,
    conjugacy_type,
    cycle_product,
    enumerate_wreath,
    parse_permutation,
    wreath_identity,
    wreath_inverse,
    wreath_multiply,
)

__version__ = "0.1.0"
