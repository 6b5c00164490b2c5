"""Product code, extended Hamming code and operation counting."""

import itertools
import math

import numpy as np
import pytest

from concatfec.altcodes import (
    ExtendedHamming,
    OpCounts,
    hamming_chase_op_counts,
    hamming_hdd_op_counts,
    product_decode,
    product_encode,
    spc_extrinsic,
    wagner_op_counts,
)


# ---------------------------------------------------------------------------
# extrinsic message


def _extrinsic_ref(llr):
    """Brute-force extrinsic LLR of one parity check via bit posteriors."""
    n = llr.size
    out = np.empty(n)
    for i in range(n):
        others = np.delete(llr, i)
        p = [0.0, 0.0]
        for bits in itertools.product((0, 1), repeat=n - 1):
            pr = math.prod(
                1.0 / (1.0 + math.exp(-l)) if b == 0 else 1.0 / (1.0 + math.exp(l))
                for b, l in zip(bits, others)
            )
            p[sum(bits) % 2] += pr
        out[i] = math.log(p[0] / p[1])
    return out


def test_extrinsic_matches_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(20):
        llr = rng.normal(size=6) * 2.5
        got = spc_extrinsic(llr)
        assert np.allclose(got, _extrinsic_ref(llr), rtol=1e-9, atol=1e-12)


def test_extrinsic_zero_input_gives_zero_out():
    llr = np.array([0.0, 3.0, -2.0, 1.0])
    got = spc_extrinsic(llr)
    # a totally uninformative bit erases every other message, but its own
    # extrinsic stays finite
    assert np.allclose(got[1:], 0.0)
    assert got[0] != 0.0


def test_extrinsic_axis_argument():
    rng = np.random.default_rng(6)
    llr = rng.normal(size=(4, 5))
    assert np.allclose(spc_extrinsic(llr, axis=0), spc_extrinsic(llr.T, axis=-1).T)


def test_extrinsic_sign_rule():
    # sign of the extrinsic equals the product of the other signs
    llr = np.array([2.0, -1.0, 3.0, -0.5])
    got = spc_extrinsic(llr)
    for i in range(4):
        expect = np.prod(np.sign(np.delete(llr, i)))
        assert np.sign(got[i]) == expect


# ---------------------------------------------------------------------------
# product code


def test_product_encode_small():
    info = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    out = product_encode(info, size=2)
    assert out.tolist() == [[1, 0, 1], [1, 1, 0], [0, 1, 1]]


def test_product_encode_parities_hold():
    rng = np.random.default_rng(3)
    info = rng.integers(0, 2, size=(5, 20, 20), dtype=np.uint8)
    cw = product_encode(info)
    assert np.all(np.bitwise_xor.reduce(cw, axis=-1) == 0)
    assert np.all(np.bitwise_xor.reduce(cw, axis=-2) == 0)
    assert np.array_equal(cw[..., :20, :20], info)


def test_product_encode_rejects_wrong_shape():
    with pytest.raises(ValueError):
        product_encode(np.zeros((19, 20), dtype=np.uint8))


def _product_llr(cw, rng, sigma, flip_mask=None):
    x = 1.0 - 2.0 * cw.astype(float)
    y = x + rng.normal(size=cw.shape) * sigma
    return 2.0 * y / sigma**2


def test_product_decode_clean_converges_immediately():
    info = np.random.default_rng(0).integers(0, 2, size=(20, 20), dtype=np.uint8)
    cw = product_encode(info)
    llr = 8.0 * (1.0 - 2.0 * cw.astype(float))
    got, converged, iters = product_decode(llr)
    assert converged and iters == 0
    assert np.array_equal(got, info)


def test_product_decode_fixes_single_error():
    info = np.random.default_rng(1).integers(0, 2, size=(20, 20), dtype=np.uint8)
    cw = product_encode(info)
    llr = 6.0 * (1.0 - 2.0 * cw.astype(float))
    llr[4, 7] = -0.8 * llr[4, 7]  # one hard error, low reliability
    got, converged, iters = product_decode(llr)
    assert converged and iters == 1
    assert np.array_equal(got, info)


def test_product_decode_batch_and_early_stop():
    rng = np.random.default_rng(2)
    info = rng.integers(0, 2, size=(64, 20, 20), dtype=np.uint8)
    cw = product_encode(info)
    llr = _product_llr(cw, rng, sigma=0.4)
    got, converged, iters = product_decode(llr, max_iters=4)
    assert got.shape == (64, 20, 20)
    assert converged.dtype == bool and iters.max() <= 4
    # at this noise everything converges, mostly well before 4 passes
    assert converged.all()
    assert (iters <= 2).mean() > 0.9
    correct = (got == info).all(axis=(-2, -1))
    assert correct.mean() > 0.9
    assert correct[iters == 0].all()


def test_product_decode_rejects_wrong_shape():
    with pytest.raises(ValueError):
        product_decode(np.zeros((20, 20)))


# ---------------------------------------------------------------------------
# extended Hamming code


def test_hamming_parameters():
    h = ExtendedHamming(r=7)
    assert (h.n, h.k) == (128, 120)
    small = ExtendedHamming(r=3)
    assert (small.n, small.k) == (8, 4)
    with pytest.raises(ValueError):
        ExtendedHamming(r=2)


def test_hamming_encode_satisfies_checks():
    h = ExtendedHamming(r=4)
    rng = np.random.default_rng(4)
    info = rng.integers(0, 2, size=(40, h.k), dtype=np.uint8)
    cw = h.encode(info)
    s_idx, s_par = h.syndromes(cw)
    assert np.all(s_idx == 0) and np.all(s_par == 0)
    assert np.array_equal(h.extract_info(cw), info)


def test_hamming_min_distance_four():
    # no nonzero codeword of weight <= 3 exists
    h = ExtendedHamming(r=4)
    zero = np.zeros(h.n, dtype=np.uint8)
    for w in (1, 2, 3):
        for pos in itertools.combinations(range(h.n), w):
            word = zero.copy()
            word[list(pos)] = 1
            s_idx, s_par = h.syndromes(word)
            assert s_idx != 0 or s_par != 0
    # while weight-4 codewords do exist
    found = 0
    for pos in itertools.combinations(range(h.n), 4):
        word = zero.copy()
        word[list(pos)] = 1
        s_idx, s_par = h.syndromes(word)
        if s_idx == 0 and s_par == 0:
            found += 1
            break
    assert found


def test_hamming_syndrome_bdd_corrects_singles():
    h = ExtendedHamming(r=5)
    info = np.random.default_rng(5).integers(0, 2, size=h.k, dtype=np.uint8)
    cw = h.encode(info)
    for pos in range(h.n):
        rx = cw.copy()
        rx[pos] ^= 1
        out, fail = h.syndrome_bdd(rx)
        assert not fail
        assert np.array_equal(out, cw)


def test_hamming_syndrome_bdd_flags_doubles():
    h = ExtendedHamming(r=5)
    info = np.random.default_rng(6).integers(0, 2, size=h.k, dtype=np.uint8)
    cw = h.encode(info)
    rng = np.random.default_rng(7)
    for _ in range(200):
        i, j = rng.choice(h.n, size=2, replace=False)
        rx = cw.copy()
        rx[i] ^= 1
        rx[j] ^= 1
        out, fail = h.syndrome_bdd(rx)
        assert fail
        assert np.array_equal(out, rx)


def test_chase_recovers_double_error_with_weak_reliability():
    h = ExtendedHamming(r=5)
    info = np.random.default_rng(8).integers(0, 2, size=h.k, dtype=np.uint8)
    cw = h.encode(info)
    x = 1.0 - 2.0 * cw.astype(float)
    llr = 5.0 * x
    llr[3] = -0.2 * llr[3]   # two hard errors, both least reliable
    llr[17] = -0.3 * llr[17]
    got, ok = h.chase_decode(llr, nu=2)
    assert ok
    assert np.array_equal(got, cw)
    # hard decision alone cannot fix this pattern
    out, fail = h.syndrome_bdd((llr < 0).astype(np.uint8))
    assert fail


def test_chase_nu0_equals_syndrome_decoding():
    h = ExtendedHamming(r=4)
    rng = np.random.default_rng(9)
    llr = rng.normal(size=(30, h.n)) * 2.0
    got, ok = h.chase_decode(llr, nu=0)
    hard = (llr < 0).astype(np.uint8)
    ref, fail = h.syndrome_bdd(hard)
    assert np.array_equal(ok, ~fail)
    assert np.array_equal(got[ok], ref[ok])
    assert np.array_equal(got[~ok], hard[~ok])


def test_chase_never_worse_than_hdd():
    # on a common channel draw, Chase-2 corrects a superset of HDD successes
    h = ExtendedHamming(r=7)
    rng = np.random.default_rng(10)
    info = rng.integers(0, 2, size=(400, h.k), dtype=np.uint8)
    cw = h.encode(info)
    x = 1.0 - 2.0 * cw.astype(float)
    sigma = 0.62
    llr = 2.0 * (x + rng.normal(size=cw.shape) * sigma) / sigma**2
    hdd_out, hdd_fail = h.syndrome_bdd((llr < 0).astype(np.uint8))
    hdd_ok = ~hdd_fail & (hdd_out == cw).all(axis=-1)
    chase_out, _ = h.chase_decode(llr, nu=2)
    chase_ok = (chase_out == cw).all(axis=-1)
    assert chase_ok[hdd_ok].all()
    assert chase_ok.sum() > hdd_ok.sum()


# ---------------------------------------------------------------------------
# operation counts


def test_op_counts_pinned():
    assert wagner_op_counts(16, codewords=8) == OpCounts(xor=128, and_=0, real_add=0)
    assert hamming_hdd_op_counts() == OpCounts(xor=8 * 127 + 128, and_=8 * 128, real_add=0)
    c1 = hamming_chase_op_counts(1)
    assert c1 == OpCounts(xor=2 * (8 * 127 + 128) + 128, and_=2 * 8 * 128, real_add=2 * 127)
    c4 = hamming_chase_op_counts(4)
    assert c4.xor == 16 * (8 * 127 + 128) + 128
    assert c4.real_add == 16 * 127


def test_op_counts_scale_linearly():
    base = hamming_chase_op_counts(2)
    ten = hamming_chase_op_counts(2, codewords=10)
    assert (ten.xor, ten.and_, ten.real_add) == (
        10 * base.xor,
        10 * base.and_,
        10 * base.real_add,
    )
