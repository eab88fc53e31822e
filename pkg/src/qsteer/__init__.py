"""Steering-ellipsoid geometry and volume monogamy for multi-qubit states."""

from .channels import (
    KrausChannel,
    apply_local,
    identity_channel,
    isotropic_channel,
    monotonicity_check,
    noisy_w_volume,
    random_channel,
)
from .ellipsoid import (
    DegenerateMarginalError,
    PovmElement,
    SteeringEllipsoid,
    ZeroProbabilityError,
    canonical_form,
    normalized_volume,
    steered_point,
    steering_ellipsoid,
)
from .experiments import (
    ConjectureResult,
    InvariantResult,
    SuiteReport,
    counterexample_regression,
    run_conjecture_test,
    run_property_suite,
    sweep_ghz_region,
    sweep_noisy_w,
)
from .monogamy import (
    MonogamyReport,
    SloccClass,
    ckw_residual,
    concurrence,
    concurrence_volume_residual,
    counterexample_state,
    ghz_family,
    ghz_state,
    l_bcd,
    max_volume_state,
    pairwise_correlation_sum,
    polygon_residual,
    purified_counterexample,
    purity_identity_residuals_3q,
    purity_identity_residuals_4q,
    singlet_state,
    slocc_classify,
    three_tangle,
    volume_monogamy_report,
    w_family,
    w_state,
    werner_state,
)
from .states import (
    PauliDecomposition,
    QuantumState,
    StateValidationError,
    bloch_vector,
    ket_to_density,
    partial_trace,
    pauli_coefficient,
    pauli_decomposition,
    purity,
    random_mixed_state,
    random_pure_state,
    random_separable_two_qubit,
    spin_correlation_matrix,
)

__version__ = "0.1.0"
