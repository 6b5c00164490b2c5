"""Analysis and simulation of short inner codes concatenated with an
outer symbol-level code on AWGN and one-tap interference channels.

The library splits into closed-form analysis (analytic, multilevel),
channel and component-code models (channel, spc, rs, interleave,
altcodes), a Monte Carlo harness (simulate), and a command line front
end (cli).
"""

from .altcodes import (
    ExtendedHamming,
    OpCounts,
    hamming_chase_op_counts,
    hamming_hdd_op_counts,
    product_decode,
    product_encode,
    spc_extrinsic,
    wagner_op_counts,
)
from .analytic import (
    BurstProfile,
    ChainRates,
    QuantizedWagnerStats,
    RsRates,
    SpcAnalysis,
    WagnerStats,
    burst_profile,
    chain_rate,
    chain_rates_iid_bits,
    chain_rates_no_interleaver,
    chain_rates_uniform_interleaver,
    ebno_db_from_snr,
    ebno_threshold,
    iid_symbol_error_prob,
    kp4_input_ber_threshold,
    optimize_quantizer_step,
    quantized_profile,
    quantized_wagner_fer,
    rs_error_rates,
    snr_from_ebno_db,
    spc_chain_rate,
    wagner_stats,
)
from .channel import (
    ASK4,
    BPSK,
    MODULATIONS,
    ChannelSpec,
    Modulation,
    QuantizerSpec,
    bcjr_llr,
    bpsk_llr_stats,
    hard_ber_bpsk,
    llr_memoryless,
    modulate,
    transmit,
    trellis_symbol_posteriors,
)
from .interleave import (
    BitLevelInterleaver,
    SymbolInterleaver,
    identity_interleaver,
    sample_bit_level2,
    sample_uniform,
)
from .multilevel import (
    BitLevelSurrogate,
    alternating_profile,
    bit_level_entropy,
    fit_surrogate_sigma2,
    mlc_profile,
    split_codeword_fer,
    surrogate_fit,
)
from .rs import KP4, RsParams, genie_bdd, partition_symbols, symbol_errors
from .simulate import (
    CodeChainConfig,
    ErrorRateResult,
    InnerHamming,
    InnerNone,
    InnerProduct,
    InnerSpc,
    StoppingRule,
    run_inner_only,
    run_point,
    sweep,
)
from .spc import WagnerOutcome, spc_encode, wagner_decode

__version__ = "0.1.0"
