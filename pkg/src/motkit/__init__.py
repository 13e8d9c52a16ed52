"""Toolkit for microwave-optical quantum transducers modeled as linear
bosonic networks: scattering-matrix computation, thermal-loss channel
extraction under correlated baths, capacity bounds, parameter sweeps and a
stochastic time-domain verification oracle."""

from .channel import (
    GaussianState,
    NoiseCoefficients,
    ThermalLossChannel,
    apply_gaussian,
    capacity_lower_bound,
    channel_correlated,
    channel_independent,
    noise_occupation,
    thermal_entropy,
)
from .model import (
    Couplings,
    ModeRates,
    NoiseEnvironment,
    ParameterSchemaError,
    TransducerParams,
    cooperativity_em,
    cooperativity_om,
    extraction_ratios,
    params_from_dict,
    params_to_dict,
    thermal_occupation,
)
from .oracle import (
    OracleResult,
    SimConfig,
    noise_generator_moments,
    simulate_output_noise,
    zero_frequency_psd,
)
from .scattering import (
    ClosedFormElements,
    Port,
    ScatteringMatrix,
    build_dynamics,
    build_input_coupling,
    closed_form_elements,
    cross_term,
    scattering_matrix,
)
from .sweep import (
    CapacityRegion,
    OperatingPoint,
    SweepAxis,
    SweepResult,
    SweepSpec,
    ZetaOptimum,
    optimize_zeta_e,
    positive_capacity_region,
    run_sweep,
)

__version__ = "0.1.0"
