"""Secret-key rate per matter qubit of all-photonic repeater-graph-state chains."""
from .bounds import (
    BARRETT_KOK,
    DLCZ_LIKE,
    WEAK_EXCITATION,
    HeraldedProtocol,
    HeraldedScheme,
    MemoryBoundReport,
    heralded_entanglement_time,
    memory_bounds,
    storage_time_average,
    storage_time_case4,
    two_qm_bound,
)
from .channel import ChannelParams, Scenario, memory_rate_upper_bound, single_photon_prob, transmission
from .errors import (
    ErrorAnalysis,
    FidelityReport,
    binary_entropy,
    coherence_time_requirement,
    indirect_error_levels,
    logical_errors,
    majority_vote_error,
    pair_fidelity,
    secret_key_rate,
)
from .enumeration import ExactResult, exact_tree_probabilities, exact_tree_table
from .montecarlo import McConfig, McEstimate, McResult, mc_logical_error, mc_run, mc_tree_success
from .optimizer import (
    Baseline,
    CrossoverParameter,
    CrossoverResult,
    Objective,
    OptimizationResult,
    SearchSpace,
    baseline_value,
    find_crossover,
    fixed_shape_sweep,
    optimize,
    select_best,
    sweep_distance,
)
from .rate import (
    RateReport,
    RgsShape,
    bell_success_prob,
    direct_transmission_rate,
    evaluate_scenario,
    link_success_prob,
    matter_qubit_count,
    photon_count,
    rgs_generation_time_cz,
    rgs_generation_time_full,
)
from .tree import TreeAnalysis, TreeVector, analyze_tree, logical_meas_probs

__version__ = "0.1.0"
