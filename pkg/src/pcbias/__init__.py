"""pcbias: exact and bounded biases of parity-check relations over
combination keystream generators."""

from .boolfun import (
    MAX_VARS,
    BooleanFunction,
    DyadicRational,
    FunctionFormatError,
    RestrictionTable,
    WalshSpectrum,
    bias,
    correlation_immunity_order,
    linear_bias,
    plateaued_amplitude,
    resiliency_order,
    restriction_table,
    walsh_transform,
)
from .parity import (
    FAIL,
    MAX_EXACT_FREE_BITS,
    MAX_ORACLE_FREE_BITS,
    PASS,
    PASS_WEAK,
    BiasReport,
    BudgetError,
    FreeBitWord,
    IndependenceError,
    IndependenceVerdict,
    LinearBound,
    NotSeparableError,
    ParityCheckSpec,
    SeparableApproximation,
    ValidationError,
    bound_report,
    brute_force_oracle,
    closed_form_single_coefficient,
    exact_bias_auto,
    exact_bias_restrictions,
    exact_bias_walsh,
    fresh_bit_index,
    input_bit_sources,
    lower_bound_linear,
    lower_bound_separable,
    plateaued_bound,
    plateaued_bound_value,
    repeated_inputs,
    validate_independence,
)
from .seqgen import (
    MAX_REGISTER_LEN,
    AttackCost,
    BiasEstimate,
    DeviceError,
    ExplicitSequence,
    Generator,
    Lfsr,
    Nlfsr,
    attack_cost,
    empirical_bias,
    empirical_bias_single_stream,
    generator_from_dict,
    keystream,
    least_period,
    parity_check_samples,
)

__version__ = "0.1.0"
