"""qdpsim: desk-scale simulator of state-instructed quantum recursions."""

from .errors import (
    ConfigError,
    DimensionError,
    InfeasibleConfigError,
    InvariantError,
    QdpError,
    UnsupportedSpecError,
)
from .linalg import (
    DensityMatrix,
    PureState,
    Spectrum,
    herm_exp,
    hermitize,
    hs_norm,
    kron,
    op_norm,
    partial_trace,
    partial_transpose,
    random_density,
    random_pure,
    spectrum,
    trace_distance,
)
from .channels import (
    HermitianPreservingMap,
    MemoryCallSpec,
    QueryGenerator,
    channel_error_probe,
    dme_query,
    exact_memory_call,
    exact_query_channel,
    group_commutator,
    make_commutator_map,
    make_identity_map,
    make_osd_map,
    make_pair_commutator_map,
    make_scaled_identity_map,
    map_apply,
    memory_usage_query,
    query_error_bound,
    repeated_queries,
)
from .imr import IMRConfig, IMROutcome, imr_ratio_bound, imr_round, imr_subroutine, mixedness
from .engine import (
    CostLedger,
    ExactStrategy,
    HybridStrategy,
    QDPStrategy,
    RecursionSpec,
    RecursionStepSpec,
    TrajectoryPoint,
    TrajectoryRecord,
    UnfoldingStrategy,
    local_accuracy_check,
    run_exact,
    run_hybrid,
    run_qdp,
    run_strategy,
    run_unfolding,
    unfolding_cost,
)
from .algos import (
    DBIConfig,
    GroverConfig,
    OSDConfig,
    QITEConfig,
    chebyshev_T,
    dbi_canonical_step_size,
    dbi_cost,
    dbi_encode,
    dbi_recursion_spec,
    dbi_sorted_fixed_point,
    dbi_step,
    energy,
    grover_angles,
    grover_config_from_distance,
    grover_delta_sequence,
    grover_qdp_run,
    grover_recursion_spec,
    grover_step,
    ground_state,
    mixed_reflection_identity_check,
    offdiag_hs_norm,
    osd_recursion_spec,
    osd_run,
    partial_reflection,
    qite_qdp_run,
    qite_recursion_spec,
    qite_step,
    relevant_subspace_weight,
    schmidt_oracle,
)

__version__ = "0.1.0"
