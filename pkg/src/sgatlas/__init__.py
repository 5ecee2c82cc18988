"""Exact enumeration of two-term qubit superposition states.

Constructs basis-state pairs and their generating ensemble words, measures
magnetization and the Edwards-Anderson overlap order parameter, computes
entanglement negativity, classifies SG/FM/AFM/PM phases, and enumerates the
full pair-space atlas with its linear order-parameter/negativity law.
"""

__version__ = "0.1.0"

from .errors import DimensionError, SizeCapError
from .states import (
    DENSE_SITE_CAP,
    NORM_TOL,
    BasisState,
    ClusterDecomposition,
    EnsembleWord,
    SuperpositionSpec,
    build_amplitude_vector,
    complement,
    decompose_pair,
    enumerate_word_family,
    expand_ensemble_word,
    uniform_product_state,
    word_family,
)
from .observables import (
    DEFAULT_SPIN_SCALE,
    ZERO_TOL,
    ObservablesRecord,
    closed_form_observables,
    dense_local_magnetization,
    dense_observables,
    local_magnetization,
    observables,
)
from .entanglement import (
    NegativityReport,
    density_matrix,
    ghz_state,
    negativity,
    negativity_report,
    partial_trace,
    partial_transpose,
    schmidt_negativity,
)
from .hamiltonian import (
    CouplingMatrix,
    FrustrationCensus,
    all_energies,
    energy,
    expectation_energy,
    frustration_census,
    sample_couplings,
)
from .atlas import (
    AtlasCell,
    AtlasMatrix,
    FitResult,
    RecursionReport,
    ScatterPoint,
    build_atlas,
    classify_phase,
    distinct_sg_q_census,
    fit_linear_law,
    k1_deviation_report,
    recursion_check,
    weighted_scatter,
)

__all__ = [
    "__version__",
    "DimensionError",
    "SizeCapError",
    "DENSE_SITE_CAP",
    "NORM_TOL",
    "BasisState",
    "ClusterDecomposition",
    "EnsembleWord",
    "SuperpositionSpec",
    "build_amplitude_vector",
    "complement",
    "decompose_pair",
    "enumerate_word_family",
    "expand_ensemble_word",
    "uniform_product_state",
    "word_family",
    "DEFAULT_SPIN_SCALE",
    "ZERO_TOL",
    "ObservablesRecord",
    "closed_form_observables",
    "dense_local_magnetization",
    "dense_observables",
    "local_magnetization",
    "observables",
    "NegativityReport",
    "density_matrix",
    "ghz_state",
    "negativity",
    "negativity_report",
    "partial_trace",
    "partial_transpose",
    "schmidt_negativity",
    "CouplingMatrix",
    "FrustrationCensus",
    "all_energies",
    "energy",
    "expectation_energy",
    "frustration_census",
    "sample_couplings",
    "AtlasCell",
    "AtlasMatrix",
    "FitResult",
    "RecursionReport",
    "ScatterPoint",
    "build_atlas",
    "classify_phase",
    "distinct_sg_q_census",
    "fit_linear_law",
    "k1_deviation_report",
    "recursion_check",
    "weighted_scatter",
]
