"""Alternative inner codes: the two-dimensional single-parity product code
with iterative soft decoding, and the extended Hamming code with
hard-decision and Chase decoding. Operation counts for the complexity
comparison live here as well.

All decoders are batch-oriented: arrays carry codewords on the leading
axes and code bits on the trailing axes, so a simulation can push millions
of codewords through numpy kernels.
"""

import math
from dataclasses import dataclass

import numpy as np

# LLR magnitudes are clipped here before any tanh; beyond this the box-plus
# chain is bit-identical at double precision anyway.
LLR_CLIP = 40.0
_ATANH_GUARD = 1.0 - 1e-15


# ---------------------------------------------------------------------------
# 2D single-parity product code


def product_encode(info, size=20):
    """Extend (..., size, size) info bits with row, column and corner parity."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape[-2:] != (size, size):
        raise ValueError(f"expected trailing shape ({size}, {size})")
    out = np.zeros(info.shape[:-2] + (size + 1, size + 1), dtype=np.uint8)
    out[..., :size, :size] = info
    out[..., :size, size] = np.bitwise_xor.reduce(info, axis=-1)
    out[..., size, :] = np.bitwise_xor.reduce(out[..., :size, :], axis=-2)
    return out


def spc_extrinsic(llr, axis=-1):
    """Exact bitwise-MAP extrinsic LLRs of a single parity check.

    ext_i = 2 * atanh(prod_{j != i} tanh(l_j / 2)), computed with prefix and
    suffix products so exact zeros propagate without division.
    """
    llr = np.clip(np.moveaxis(np.asarray(llr, dtype=float), axis, -1), -LLR_CLIP, LLR_CLIP)
    t = np.tanh(0.5 * llr)
    n = t.shape[-1]
    pre = np.ones_like(t)
    suf = np.ones_like(t)
    np.cumprod(t[..., :-1], axis=-1, out=pre[..., 1:])
    np.cumprod(t[..., :0:-1], axis=-1, out=suf[..., -2::-1])
    prod = np.clip(pre * suf, -_ATANH_GUARD, _ATANH_GUARD)
    return np.moveaxis(2.0 * np.arctanh(prod), -1, axis)


def _product_check(hard):
    """True where all row and column parities of (..., s+1, s+1) bits hold."""
    rows_ok = (np.bitwise_xor.reduce(hard, axis=-1) == 0).all(axis=-1)
    cols_ok = (np.bitwise_xor.reduce(hard, axis=-2) == 0).all(axis=-1)
    return rows_ok & cols_ok


def product_decode(llr, max_iters=2, size=20):
    """Iterative row/column decoding of the product code.

    One iteration is a row pass followed by a column pass, each computing
    extrinsic LLRs from the channel LLRs plus the other direction's
    extrinsics. Decoding stops early for codewords whose hard decision on
    the combined LLR satisfies every parity constraint.

    Returns (info_bits, converged, iters_used) with info_bits of shape
    (..., size, size).
    """
    l_ch = np.asarray(llr, dtype=float)
    if l_ch.shape[-2:] != (size + 1, size + 1):
        raise ValueError(f"expected trailing shape ({size + 1}, {size + 1})")
    squeeze = l_ch.ndim == 2
    if squeeze:
        l_ch = l_ch[None, ...]
    lead = l_ch.shape[:-2]
    ext_r = np.zeros_like(l_ch)
    ext_c = np.zeros_like(l_ch)
    hard = (l_ch < 0).astype(np.uint8)
    done = _product_check(hard)
    out = hard.copy()
    iters_used = np.zeros(lead, dtype=np.int64)
    for it in range(1, max_iters + 1):
        if done.all():
            break
        ext_r = spc_extrinsic(l_ch + ext_c, axis=-1)
        ext_c = spc_extrinsic(l_ch + ext_r, axis=-2)
        hard = ((l_ch + ext_r + ext_c) < 0).astype(np.uint8)
        fresh = ~done
        out[fresh] = hard[fresh]
        iters_used[fresh] = it
        done = done | _product_check(hard)
    # codewords that never converged keep their last-iteration decision
    info = out[..., :size, :size]
    if squeeze:
        return info[0], bool(done[0]), int(iters_used[0])
    return info, done, iters_used


# ---------------------------------------------------------------------------
# Extended Hamming code (2^r, 2^r - r - 1)


class ExtendedHamming:
    """Extended Hamming code with column-index parity-check structure.

    The check matrix has r rows holding the binary expansion of the column
    index (all 2^r values, the zero column included) plus an all-ones
    overall parity row; this is a standard systematic-decodable form with
    minimum distance 4. Parity lives at position 0 (overall parity) and
    the power-of-two positions; the remaining 2^r - r - 1 positions carry
    information bits in ascending order.
    """

    def __init__(self, r=7):
        if r < 3:
            raise ValueError("need r >= 3")
        self.r = r
        self.n = 1 << r
        self.k = self.n - r - 1
        idx = np.arange(self.n)
        self.col_codes = (idx[:, None] >> np.arange(r)[None, :]) & 1  # (n, r)
        self.parity_positions = np.array([0] + [1 << i for i in range(r)])
        mask = np.ones(self.n, dtype=bool)
        mask[self.parity_positions] = False
        self.data_positions = idx[mask]
        # syndrome lookup: for each (overall-parity bit, index syndrome)
        # either a single position to flip or a decoding-failure flag
        self.flip_lut = np.full(2 * self.n, -1, dtype=np.int64)
        self.fail_lut = np.zeros(2 * self.n, dtype=bool)
        for s_idx in range(self.n):
            even = s_idx  # overall parity satisfied
            odd = self.n + s_idx
            self.flip_lut[odd] = s_idx  # single error at the indexed position
            if s_idx != 0:
                self.fail_lut[even] = True  # detected but uncorrectable

    def encode(self, info):
        """Systematic encoding; info has shape (..., k)."""
        info = np.asarray(info, dtype=np.uint8)
        if info.shape[-1] != self.k:
            raise ValueError(f"expected {self.k} information bits")
        out = np.zeros(info.shape[:-1] + (self.n,), dtype=np.uint8)
        out[..., self.data_positions] = info
        syn, _ = self.syndromes(out)
        for i in range(self.r):
            out[..., 1 << i] = ((syn >> i) & 1).astype(np.uint8)
        out[..., 0] = np.bitwise_xor.reduce(out[..., 1:], axis=-1)
        return out

    def syndromes(self, bits):
        """(index_syndrome, overall_parity) of hard decisions."""
        bits = np.asarray(bits, dtype=np.uint8)
        s_idx = (bits @ self.col_codes & 1).astype(np.int64)
        s_idx = (s_idx << np.arange(self.r)).sum(axis=-1)
        s_par = np.bitwise_xor.reduce(bits, axis=-1).astype(np.int64)
        return s_idx, s_par

    def syndrome_bdd(self, bits):
        """Bounded-distance decoding via the syndrome lookup table.

        Corrects any single error; patterns with an even nonzero syndrome
        are flagged as failures and passed through unchanged.
        """
        bits = np.asarray(bits, dtype=np.uint8)
        s_idx, s_par = self.syndromes(bits)
        key = np.asarray(s_par * self.n + s_idx)
        flip = self.flip_lut[key]
        fail = self.fail_lut[key]
        out = bits.copy()
        flat = out.reshape(-1, self.n)
        f = np.asarray(flip).reshape(-1)
        rows = np.nonzero(f >= 0)[0]
        flat[rows, f[rows]] ^= 1
        return out, fail

    def chase_decode(self, llr, nu):
        """Chase decoding with 2^nu test patterns on the least reliable bits.

        Each test word goes through syndrome decoding; among the successful
        candidates the one whose difference from the hard decision carries
        the least total reliability wins. If every attempt fails the plain
        hard decision is returned (flagged). nu = 0 degenerates to syndrome
        decoding with hard-decision fallback.
        """
        llr = np.asarray(llr, dtype=float)
        squeeze = llr.ndim == 1
        if squeeze:
            llr = llr[None, :]
        d = (llr < 0).astype(np.uint8)
        rel = np.abs(llr)
        lead = llr.shape[:-1]
        if nu == 0:
            out, fail = self.syndrome_bdd(d)
            res = np.where(np.asarray(fail)[..., None], d, out)
            ok = ~fail
            return (res[0], bool(ok[0])) if squeeze else (res, ok)
        weak = np.argsort(rel, axis=-1)[..., :nu]
        best_w = np.full(lead, np.inf)
        best = d.copy()
        any_ok = np.zeros(lead, dtype=bool)
        for pattern in range(1 << nu):
            test = d.copy()
            sel = [i for i in range(nu) if pattern >> i & 1]
            if sel:
                idx = weak[..., sel]
                np.put_along_axis(
                    test, idx, np.take_along_axis(test, idx, axis=-1) ^ 1, axis=-1
                )
            cand, fail = self.syndrome_bdd(test)
            diff = cand ^ d
            w = np.where(fail, np.inf, (diff * rel).sum(axis=-1))
            better = w < best_w
            best_w = np.where(better, w, best_w)
            best[better] = cand[better]
            any_ok |= ~fail
        if squeeze:
            return best[0], bool(any_ok[0])
        return best, any_ok

    def extract_info(self, bits):
        return np.asarray(bits)[..., self.data_positions]


# ---------------------------------------------------------------------------
# Operation counts


@dataclass(frozen=True)
class OpCounts:
    """Binary and real operation totals of a decoding job."""

    xor: int
    and_: int
    real_add: int

    def scaled(self, codewords):
        return OpCounts(
            xor=self.xor * codewords,
            and_=self.and_ * codewords,
            real_add=self.real_add * codewords,
        )


def wagner_op_counts(n, codewords=1):
    """Wagner decoding: n-1 syndrome XORs plus one flip per codeword."""
    return OpCounts(xor=n, and_=0, real_add=0).scaled(codewords)


def hamming_hdd_op_counts(n=128, k=120, codewords=1):
    """Syndrome computation as matrix product plus correction XORs."""
    return OpCounts(
        xor=(n - k) * (n - 1) + n,
        and_=(n - k) * n,
        real_add=0,
    ).scaled(codewords)


def hamming_chase_op_counts(nu, n=128, k=120, codewords=1):
    """2^nu syndrome decodes, candidate XORs and analog weights, final apply."""
    tests = 1 << nu
    return OpCounts(
        xor=tests * ((n - k) * (n - 1) + n) + n,
        and_=tests * (n - k) * n,
        real_add=tests * (n - 1),
    ).scaled(codewords)
