"""Monte Carlo chain engine: reproducibility, accounting, configuration."""

import math

import numpy as np
import pytest

from concatfec.analytic import wagner_stats
from concatfec.channel import QuantizerSpec
from concatfec.rs import KP4, RsParams
from concatfec.simulate import (
    CodeChainConfig,
    InnerHamming,
    InnerNone,
    InnerProduct,
    InnerSpc,
    StoppingRule,
    run_inner_only,
    run_point,
    sweep,
)


FAST = StoppingRule(min_frame_errors=20, max_frames=4000)


def test_inner_code_descriptors():
    assert (InnerSpc(11).n, InnerSpc(11).k) == (11, 10)
    assert InnerSpc(16).rate == pytest.approx(15 / 16)
    assert (InnerProduct().n, InnerProduct().k) == (441, 400)
    assert (InnerHamming().n, InnerHamming().k) == (128, 120)
    assert InnerNone().rate == 1.0


def test_config_rate():
    assert CodeChainConfig().rate == pytest.approx(514 / 544 * 10 / 11)
    two = CodeChainConfig(inner=InnerSpc(11), modulation="ask4")
    assert two.rate == pytest.approx(2 * 514 / 544 * 10 / 11)
    assert CodeChainConfig(inner=InnerNone()).rate == pytest.approx(514 / 544)


def test_config_validation_rejections():
    bad = [
        CodeChainConfig(modulation="qam"),
        CodeChainConfig(mapping="other"),
        CodeChainConfig(interleaver="row"),
        CodeChainConfig(interleaver="symbol", depth=0),
        CodeChainConfig(interleaver="none", depth=2),
        CodeChainConfig(interleaver="bit"),  # bpsk has one level
        CodeChainConfig(mapping="mlc"),  # bpsk again
        CodeChainConfig(modulation="ask4", quantizer=QuantizerSpec(3, 1.0)),
        CodeChainConfig(demapper="viterbi"),
        CodeChainConfig(alpha=0.35, demapper="memoryless"),
        CodeChainConfig(info_words="ones"),
        CodeChainConfig(scramble="maybe"),
        CodeChainConfig(inner=InnerNone(), quantizer=QuantizerSpec(3, 1.0)),
    ]
    for cfg in bad:
        with pytest.raises(ValueError):
            cfg.validate()


def test_scramble_auto_tracks_modulation():
    assert not CodeChainConfig().scramble_on
    assert CodeChainConfig(modulation="ask4").scramble_on
    assert CodeChainConfig(scramble="on").scramble_on
    assert not CodeChainConfig(modulation="ask4", scramble="off").scramble_on


def test_method_tags():
    assert CodeChainConfig().method_tag() == "mc/spc11/bpsk/direct"
    cfg = CodeChainConfig(
        inner=InnerSpc(16), interleaver="symbol", depth=4, quantizer=QuantizerSpec(3, 1.0)
    )
    assert cfg.method_tag() == "mc/spc16/bpsk/symbol4/q3"
    isi = CodeChainConfig(modulation="ask4", alpha=0.35, demapper="trellis")
    assert isi.method_tag() == "mc/spc11/ask4/direct/isi0.35"
    assert CodeChainConfig(inner=InnerHamming(chase_bits=2)).method_tag() == (
        "mc/hamming-chase2/bpsk/direct"
    )
    assert CodeChainConfig(inner=InnerNone()).method_tag("analytic") == (
        "analytic/uncoded/bpsk/direct"
    )


def test_stopping_rule():
    s = StoppingRule(min_frame_errors=10, max_frames=100, max_seconds=5.0)
    assert not s.done(50, 5, 1.0)
    assert s.done(50, 10, 1.0)
    assert s.done(100, 0, 1.0)
    assert s.done(50, 0, 5.0)
    assert not StoppingRule(min_frame_errors=10).done(10**9, 9, 10.0)


def test_same_seed_reproduces_exactly():
    cfg = CodeChainConfig()
    a = run_point(cfg, 5.3, stop=FAST, seed=42)
    b = run_point(cfg, 5.3, stop=FAST, seed=42)
    assert (a.frames, a.frame_errors, a.bit_errors) == (b.frames, b.frame_errors, b.bit_errors)
    assert a.fer == b.fer and a.ber == b.ber
    c = run_point(cfg, 5.3, stop=FAST, seed=43)
    assert (c.frames, c.frame_errors) != (a.frames, a.frame_errors) or c.bit_errors != a.bit_errors


def test_matches_analytic_fer():
    cfg = CodeChainConfig()
    res = run_point(cfg, 5.3, stop=StoppingRule(min_frame_errors=80), seed=7)
    from concatfec.analytic import burst_profile, chain_rates_no_interleaver
    from concatfec.analytic import snr_from_ebno_db

    sigma2 = 1.0 / snr_from_ebno_db(5.3, cfg.rate)
    expect = chain_rates_no_interleaver(burst_profile(11, sigma2))
    assert abs(res.fer - expect.fer) < 4.0 * res.fer_std_error()
    half = 1.96 * res.fer_std_error()
    assert res.fer_ci_lo == pytest.approx(res.fer - half, abs=1e-12)
    assert res.fer_ci_hi == pytest.approx(res.fer + half, abs=1e-12)


def test_zeros_and_random_info_words_agree():
    # the chain is linear over GF(2): the all-zeros frame sees the same
    # error statistics as random data
    base = StoppingRule(min_frame_errors=60)
    a = run_point(CodeChainConfig(info_words="zeros"), 5.3, stop=base, seed=11)
    b = run_point(CodeChainConfig(info_words="random"), 5.3, stop=base, seed=12)
    se = math.hypot(a.fer_std_error(), b.fer_std_error())
    assert abs(a.fer - b.fer) < 4.0 * se


def test_padding_is_excluded_from_tallies():
    # 5140 info bits over k=15 leaves a 5-bit pad; accounting only covers
    # real codeword bits
    cfg = CodeChainConfig(inner=InnerSpc(16))
    res = run_point(cfg, 5.9, stop=FAST, seed=3)
    assert res.frames > 0
    assert res.info_bits_per_frame == KP4.k_bits
    assert 0 < res.fer <= 1.0


def test_accounting_invariants():
    res = run_point(CodeChainConfig(), 5.3, stop=FAST, seed=5)
    assert res.frame_errors <= res.frames
    assert res.bit_errors <= res.frame_errors * KP4.k_bits
    assert res.fer == pytest.approx(res.frame_errors / res.frames)
    assert res.ber == pytest.approx(res.bit_errors / (res.frames * KP4.k_bits))
    assert res.fer_ci_lo <= res.fer <= res.fer_ci_hi
    assert res.method == "mc/spc11/bpsk/direct"
    assert res.ber < res.fer
    assert res.ber_std_error() < res.fer_std_error()


def test_ci_absent_with_few_errors():
    res = run_point(CodeChainConfig(), 5.3, stop=StoppingRule(min_frame_errors=1), seed=6)
    if res.frame_errors < 10:
        assert res.fer_ci_lo is None and res.fer_ci_hi is None


def test_max_frames_budget_respected():
    res = run_point(
        CodeChainConfig(), 8.0, stop=StoppingRule(min_frame_errors=10**9, max_frames=600), seed=1
    )
    assert 600 <= res.frames <= 600 + 4096


def test_sweep_derives_per_point_seeds():
    got = sweep(CodeChainConfig(), [5.2, 5.4], stop=FAST, seed=9)
    assert [r.ebno_db for r in got] == [5.2, 5.4]
    assert got[0].seed == (9, 0) and got[1].seed == (9, 1)
    assert got[0].fer > got[1].fer


def test_symbol_interleaver_frames_count_codewords():
    cfg = CodeChainConfig(interleaver="symbol", depth=3)
    res = run_point(cfg, 5.3, stop=StoppingRule(min_frame_errors=1, max_frames=9), seed=2)
    # frames tally outer codewords, always a multiple of the depth
    assert res.frames % 3 == 0


def test_uncoded_chain_runs():
    res = run_point(CodeChainConfig(inner=InnerNone()), 6.9, stop=FAST, seed=8)
    assert 0 < res.fer < 0.05
    assert res.method == "mc/uncoded/bpsk/direct"


def test_trellis_and_memoryless_identical_without_isi():
    # same seed, alpha = 0: the two demappers must agree frame by frame
    stop = StoppingRule(min_frame_errors=15, max_frames=1500)
    a = run_point(CodeChainConfig(demapper="memoryless"), 5.2, stop=stop, seed=21)
    b = run_point(CodeChainConfig(demapper="trellis"), 5.2, stop=stop, seed=21)
    assert (a.frames, a.frame_errors, a.bit_errors) == (b.frames, b.frame_errors, b.bit_errors)


def test_quantized_chain_degrades_gracefully():
    from concatfec.analytic import optimize_quantizer_step, snr_from_ebno_db

    sigma2 = 1.0 / snr_from_ebno_db(5.3, CodeChainConfig().rate)
    q = optimize_quantizer_step(11, sigma2, 3)
    plain = run_point(CodeChainConfig(), 5.3, stop=FAST, seed=31)
    quant = run_point(CodeChainConfig(quantizer=q), 5.3, stop=FAST, seed=31)
    se = math.hypot(plain.fer_std_error(), quant.fer_std_error())
    assert quant.fer > plain.fer - 2 * se


def test_inner_only_matches_analytic():
    st = wagner_stats(16, 0.42)
    res = run_inner_only(InnerSpc(16), 0.42, seed=4, min_frame_errors=400)
    se = res.fer_std_error()
    assert abs(res.fer - st.fer) < 4.0 * se
    assert res.info_bits == res.codewords * 15
    assert res.bit_errors <= res.frame_errors * 15


def test_inner_only_rejects_uncoded():
    with pytest.raises(ValueError):
        run_inner_only(InnerNone(), 0.3)


def test_inner_only_budget():
    res = run_inner_only(InnerSpc(11), 0.4, seed=1, max_codewords=5000)
    assert res.codewords == 5000
