"""Entanglement decay of GHZ-type and Haar-random qubit states under local noise."""

__version__ = "0.1.0"

from .bounds import (
    bound_dephasing,
    bound_depolarizing,
    bound_thermal_state_dependent,
    bound_thermal_uniform,
    hamming_weight,
    lambda_ent_trace,
    parity_weights,
)
from .channels import (
    ChannelSpec,
    SingleQubitChannel,
    TimeMap,
    TimeModel,
    apply_local,
    apply_local_heterogeneous,
    dephasing,
    depolarizing,
    thermal,
    time_to_p,
)
from .entanglement import (
    Bipartition,
    CutPolicy,
    NegativityResult,
    enumerate_cuts,
    max_negativity,
    negativity,
    normalized_negativity,
    partial_transpose,
)
from .errors import (
    ConfigError,
    DomainError,
    GhzDecayError,
    NumericalError,
    ResourceError,
    UndefinedNormalization,
    ValidationError,
)
from .qstate import (
    DensityMatrix,
    GhzMixtureSpec,
    GhzSpec,
    PureState,
    bitflip,
    density_from_pure,
    make_generalized_ghz,
    make_ghz_diagonal,
)
from .sampling import SampleConfig, SampleStats, haar_random_pure, histogram, run_sample, sample_rng
