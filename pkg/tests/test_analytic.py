"""Closed-form error-rate machinery: Wagner statistics, burst profiles,
outer-code folding, quantized decoding and threshold search."""

import itertools
import math

import numpy as np
import pytest
from scipy import stats as sps

from concatfec.analytic import (
    BurstProfile,
    SpcAnalysis,
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
    _sum_pmf,
    _sum_tail_table,
)
from concatfec.channel import QuantizerSpec, hard_ber_bpsk
from concatfec.rs import KP4, RsParams
from concatfec.spc import spc_encode, wagner_decode


SIGMA2 = 0.28  # roughly the chain operating region for length-11 words


# ---------------------------------------------------------------------------
# plain Wagner statistics


def test_wagner_stats_invariants():
    st = wagner_stats(11, SIGMA2)
    assert st.hard_ber == pytest.approx(hard_ber_bpsk(SIGMA2), rel=1e-14)
    assert st.p_weight.sum() == pytest.approx(1.0, abs=1e-12)
    assert 0.0 < st.fer < 1.0
    assert st.fer == pytest.approx(st.fer_weight_sum, rel=1e-10)
    assert 0.0 < st.ber < st.fer
    # the union-style estimate overshoots slightly but stays the same order
    assert st.ber_union == pytest.approx(st.ber, rel=0.2)
    # flip-event probabilities decompose the weight distribution
    assert np.all(st.p_corrected <= st.p_weight + 1e-15)


def test_wagner_stats_improve_with_snr():
    a = wagner_stats(11, 0.4)
    b = wagner_stats(11, 0.25)
    assert b.fer < a.fer
    assert b.ber < a.ber


def test_wagner_stats_match_monte_carlo():
    n, sigma2 = 5, 0.5
    st = wagner_stats(n, sigma2)
    rng = np.random.default_rng(123)
    words = 400_000
    tx = np.zeros((words, n), dtype=np.uint8)  # linearity: all-zeros suffices
    y = 1.0 + rng.normal(size=(words, n)) * math.sqrt(sigma2)
    llr = 2.0 * y / sigma2
    out = wagner_decode(llr, rng=rng)
    frame_err = (out.codeword != tx).any(axis=-1)
    bit_err = (out.systematic != tx[:, : n - 1]).sum()
    fer_mc = frame_err.mean()
    ber_mc = bit_err / (words * (n - 1))
    se_f = math.sqrt(st.fer * (1 - st.fer) / words)
    assert abs(fer_mc - st.fer) < 4.0 * se_f
    se_b = math.sqrt(ber_mc * (1 - ber_mc) / (words * (n - 1)))
    assert abs(ber_mc - st.ber) < 5.0 * se_b


def test_confined_reduces_to_plain():
    spc = SpcAnalysis(11, SIGMA2)
    st = spc.stats()
    assert spc.confined_fer(10) == pytest.approx(st.fer, rel=1e-10)
    assert spc.confined_bit_errors(10) == pytest.approx(10 * st.ber, rel=1e-10)


def test_confined_monotone_in_subset_size():
    spc = SpcAnalysis(11, SIGMA2)
    vals = [spc.confined_fer(k) for k in range(1, 11)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_confined_rejects_bad_subset():
    spc = SpcAnalysis(11, SIGMA2)
    with pytest.raises(ValueError):
        spc.confined_fer(0)
    with pytest.raises(ValueError):
        spc.confined_fer(11)


def test_analysis_validates_inputs():
    with pytest.raises(ValueError):
        SpcAnalysis(2, 0.3)
    with pytest.raises(ValueError):
        SpcAnalysis(11, 0.0)


# ---------------------------------------------------------------------------
# burst profiles


def test_profile_symbol_matched_case():
    # k = 10 bits = exactly one outer symbol: one group per symbol
    st = wagner_stats(11, SIGMA2)
    prof = burst_profile(11, SIGMA2)
    assert prof.span == 1 and prof.n_groups == 544 and prof.exact_cover
    assert prof.p_err.sum() == pytest.approx(1.0, abs=1e-12)
    assert prof.p_err[1] == pytest.approx(st.fer, rel=1e-12)
    assert prof.mean_bit_error_prob() == pytest.approx(st.ber, rel=1e-12)


def test_profile_two_codewords_per_symbol():
    # k = 5: two codewords share one outer symbol
    st = wagner_stats(6, SIGMA2)
    prof = burst_profile(6, SIGMA2)
    assert prof.span == 1
    expect = 1.0 - (1.0 - st.fer) ** 2
    assert prof.p_err[1] == pytest.approx(expect, rel=1e-12)
    assert prof.mean_bit_error_prob() == pytest.approx(st.ber, rel=1e-12)


def test_profile_codeword_spanning_two_symbols():
    # k = 20: one codeword covers two outer symbols
    spc = SpcAnalysis(21, SIGMA2)
    st = spc.stats()
    prof = burst_profile(21, SIGMA2, analysis=spc)
    assert prof.span == 2 and prof.n_groups == 272 and prof.exact_cover
    # a single-symbol error event confines all residual errors to one half
    assert prof.p_err[1] == pytest.approx(2.0 * spc.confined_fer(10), rel=1e-12)
    assert prof.p_err[1] + prof.p_err[2] == pytest.approx(st.fer, rel=1e-12)
    assert prof.mean_symbol_error_prob() == pytest.approx(
        (prof.p_err[1] + 2 * prof.p_err[2]) / 2, rel=1e-14
    )
    assert prof.mean_bit_error_prob() == pytest.approx(st.ber, rel=1e-12)


def test_profile_rejects_mismatched_analysis():
    with pytest.raises(ValueError):
        burst_profile(11, SIGMA2, analysis=SpcAnalysis(16, SIGMA2))


# ---------------------------------------------------------------------------
# outer-code folding


def _tail_ref(p_err, n_groups, t):
    """Literal enumeration of P{sum > t} over all group outcome tuples."""
    total = 0.0
    span = len(p_err) - 1
    for combo in itertools.product(range(span + 1), repeat=n_groups):
        if sum(combo) > t:
            total += math.prod(p_err[c] for c in combo)
    return total


def test_sum_tail_matches_enumeration():
    p_err = np.array([0.90, 0.07, 0.03])
    tails = _sum_tail_table(p_err, 5, 3)
    assert tails[4] == pytest.approx(_tail_ref(p_err, 5, 3), rel=1e-12)
    # tails are a proper survival function
    assert np.all(np.diff(tails) <= 1e-15)
    assert tails[0] == pytest.approx(1.0, abs=1e-12)


def test_sum_pmf_matches_direct_convolution():
    p_err = np.array([0.8, 0.15, 0.05])
    direct = np.array([1.0])
    for _ in range(7):
        direct = np.convolve(direct, p_err)
    got = _sum_pmf(p_err, 7)
    assert np.allclose(got, direct, rtol=1e-13)
    assert got.sum() == pytest.approx(1.0, abs=1e-12)


def test_no_interleaver_fer_small_case_enumeration():
    prof = BurstProfile(
        span=2,
        n_groups=4,
        p_err=np.array([0.85, 0.10, 0.05]),
        ber_part=None,
        exact_cover=True,
    )
    small = RsParams(n_symbols=8, k_symbols=4, bits_per_symbol=10)
    got = chain_rates_no_interleaver(prof, small)
    assert got.fer == pytest.approx(_tail_ref(prof.p_err, 4, small.t), rel=1e-12)
    assert got.ber is None


def test_depth_one_interleaver_equals_direct():
    for n_spc in (11, 21):
        prof = burst_profile(n_spc, SIGMA2)
        a = chain_rates_no_interleaver(prof)
        b = chain_rates_uniform_interleaver(prof, 1)
        assert b.fer == pytest.approx(a.fer, rel=1e-10)
        assert b.ber == pytest.approx(a.ber, rel=1e-10)


def test_interleaving_helps_bursty_profiles():
    # in the low-FER regime, spreading the two-symbol bursts of the
    # length-21 code over more codewords lowers the frame error rate
    # monotonically toward the i.i.d. limit
    prof = burst_profile(21, 0.14)
    fers = [
        chain_rates_uniform_interleaver(prof, depth).fer
        for depth in (1, 2, 4, math.inf)
    ]
    assert all(a > b for a, b in zip(fers, fers[1:]))
    assert fers[0] > 5 * fers[-1]


def test_interleaving_hurts_when_outer_code_saturates():
    # above the waterfall the concentration of errors into few codewords
    # is an advantage, so the ordering flips
    prof = burst_profile(21, 0.18)
    direct = chain_rates_uniform_interleaver(prof, 1).fer
    spread = chain_rates_uniform_interleaver(prof, math.inf).fer
    assert 0.5 < direct < spread < 1.0


def test_infinite_depth_matches_iid_symbols():
    prof = burst_profile(11, 0.3)
    inf_rates = chain_rates_uniform_interleaver(prof, math.inf)
    rr = rs_error_rates(prof.mean_symbol_error_prob(), prof.mean_bit_error_prob())
    assert inf_rates.fer == pytest.approx(rr.frame, rel=1e-14)
    assert inf_rates.ber == pytest.approx(rr.bit, rel=1e-14)


def test_uniform_interleaver_validates_depth():
    prof = burst_profile(11, 0.3)
    with pytest.raises(ValueError):
        chain_rates_uniform_interleaver(prof, 0)


# ---------------------------------------------------------------------------
# outer-code input/output relations


def test_rs_error_rates_formulas():
    p_sym, p_bit = 3e-3, 3.2e-4
    rr = rs_error_rates(p_sym, p_bit)
    assert rr.frame == pytest.approx(float(sps.binom.sf(15, 544, p_sym)), rel=1e-14)
    assert rr.symbol == pytest.approx(p_sym * float(sps.binom.sf(14, 543, p_sym)), rel=1e-14)
    assert rr.bit == pytest.approx(p_bit * rr.symbol / p_sym, rel=1e-14)
    approx = rs_error_rates(p_sym, p_bit, approx_bits=True)
    assert approx.bit == pytest.approx(rr.symbol / 10, rel=1e-14)


def test_rs_error_rates_edge_cases():
    z = rs_error_rates(0.0, 0.0)
    assert (z.frame, z.symbol, z.bit) == (0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        rs_error_rates(-0.1, 0.0)


def test_iid_symbol_error_prob():
    assert iid_symbol_error_prob(1e-6) == pytest.approx(1e-5, rel=1e-4)
    assert iid_symbol_error_prob(0.0) == 0.0
    p = 0.02
    assert iid_symbol_error_prob(p) == pytest.approx(1 - (1 - p) ** 10, rel=1e-12)


def test_kp4_threshold_value():
    thr = kp4_input_ber_threshold(1e-13)
    assert thr == pytest.approx(3.1e-4, rel=0.05)
    out = chain_rates_iid_bits(thr)
    assert out.bit == pytest.approx(1e-13, rel=1e-6)


# ---------------------------------------------------------------------------
# quantized decoding


def test_quantized_fer_ordering():
    sigma2 = 0.3
    un = wagner_stats(11, sigma2).fer
    fers = []
    for bits in (2, 3, 4):
        q = optimize_quantizer_step(11, sigma2, bits)
        fers.append(quantized_wagner_fer(11, sigma2, q).fer)
    assert fers[0] >= fers[1] >= fers[2] >= un - 1e-15
    # four bits with a tuned step is already close to unquantized
    assert fers[2] == pytest.approx(un, rel=0.05)


def _quantized_fer_ref(n, sigma2, qspec):
    """Exact FER by enumerating joint quantizer levels of all n positions.

    The all-zeros codeword is transmitted; a level with negative value is a
    hard error. Decoding succeeds iff there are no errors, or exactly one
    error whose magnitude strictly undercuts every correct magnitude, or
    one error tied with z correct positions and the uniform pick lands on
    it (probability 1/(z+1))."""
    from concatfec.channel import bpsk_llr_stats

    mu, std = bpsk_llr_stats(sigma2)
    probs = qspec.level_probs(mu, std)
    levels = qspec.levels()
    p_ok = 0.0
    for combo in itertools.product(range(levels.size), repeat=n):
        pr = math.prod(probs[c] for c in combo)
        vals = levels[list(combo)]
        errs = np.nonzero(vals < 0)[0]
        if errs.size == 0:
            p_ok += pr
        elif errs.size == 1:
            mag = np.abs(vals)
            m = mag.min()
            if mag[errs[0]] == m:
                ties = int((mag == m).sum())
                p_ok += pr / ties
    return 1.0 - p_ok


def test_quantized_fer_matches_enumeration():
    q = QuantizerSpec(bits=2, step=2.8)
    for n, sigma2 in ((4, 0.45), (5, 0.3)):
        got = quantized_wagner_fer(n, sigma2, q)
        assert got.fer == pytest.approx(_quantized_fer_ref(n, sigma2, q), rel=1e-10)


def test_quantized_profile_shape_and_guard():
    q = optimize_quantizer_step(11, 0.3, 3)
    prof = quantized_profile(11, 0.3, q)
    assert prof.span == 1 and prof.ber_part is None
    assert prof.p_err[1] == pytest.approx(quantized_wagner_fer(11, 0.3, q).fer)
    with pytest.raises(ValueError):
        quantized_profile(16, 0.3, q)


def test_quantized_validates_length():
    with pytest.raises(ValueError):
        quantized_wagner_fer(2, 0.3, QuantizerSpec(bits=3, step=1.0))


# ---------------------------------------------------------------------------
# rates and thresholds


def test_rate_values():
    assert spc_chain_rate(11) == pytest.approx(514 / 544 * 10 / 11)
    assert spc_chain_rate(16) == pytest.approx(514 / 544 * 15 / 16)
    assert chain_rate(400 / 441) == pytest.approx(514 / 544 * 400 / 441)
    assert spc_chain_rate(11, bits_per_symbol=2) == pytest.approx(2 * 514 / 544 * 10 / 11)


def test_ebno_snr_round_trip():
    r = 0.859
    for ebno in (3.0, 5.5, 9.0):
        snr = snr_from_ebno_db(ebno, r)
        assert ebno_db_from_snr(snr, r) == pytest.approx(ebno, abs=1e-12)


def test_ebno_threshold_brackets_crossing():
    rate = spc_chain_rate(11)

    def ber_of(sigma2):
        return wagner_stats(11, sigma2).ber

    target = kp4_input_ber_threshold(1e-13)
    thr = ebno_threshold(ber_of, rate, target, 0.0, 16.0)
    assert 6.0 < thr < 7.5
    # at the threshold the metric actually crosses the target
    lo = ber_of((1.0) / snr_from_ebno_db(thr - 0.01, rate))
    hi = ber_of((1.0) / snr_from_ebno_db(thr + 0.01, rate))
    assert hi < target < lo
