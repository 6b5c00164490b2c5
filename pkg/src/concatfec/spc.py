"""Single parity-check encoding and Wagner (ML) soft decision decoding."""

from dataclasses import dataclass

import numpy as np


def spc_encode(bits):
    """Append an even-parity bit to each row of systematic bits.

    bits has shape (..., k); returns shape (..., k + 1).
    """
    bits = np.asarray(bits, dtype=np.uint8)
    parity = np.bitwise_xor.reduce(bits, axis=-1, keepdims=True)
    return np.concatenate([bits, parity], axis=-1)


@dataclass
class WagnerOutcome:
    """Decision record of one (or a batch of) Wagner decodes.

    codeword: full hard decisions after any flip, shape (..., n)
    flipped: index of the flipped position, -1 where parity already held
    parity_ok_in: True where the input hard decisions satisfied parity
    """

    codeword: np.ndarray
    flipped: np.ndarray
    parity_ok_in: np.ndarray

    @property
    def systematic(self):
        return self.codeword[..., :-1]


def wagner_decode(llr, rng=None):
    """ML decoding of a single parity-check code from bit LLRs.

    Hard-decides every bit by LLR sign; if the parity check fails, flips
    the least reliable bit. Ties on the minimum |llr| (they occur with
    quantized inputs) are broken uniformly at random, which requires rng;
    without an rng the lowest tied index is taken.

    llr has shape (..., n); positive LLR means bit 0.
    """
    llr = np.asarray(llr, dtype=float)
    hard = (llr < 0).view(np.uint8)
    syndrome = np.bitwise_xor.reduce(hard, axis=-1)
    n = llr.shape[-1]

    # reliabilities are only consulted where the parity check failed; the
    # rng is likewise consumed only for actual ties, so the draw count is
    # data dependent (callers must not rely on a fixed stream position)
    out = hard.copy()
    flat = out.reshape(-1, n)
    rows = np.nonzero(syndrome.reshape(-1))[0]
    sub = np.abs(llr.reshape(-1, n)[rows])
    pick = np.argmin(sub, axis=-1)
    if rng is not None and rows.size:
        ties = sub == sub.min(axis=-1, keepdims=True)
        multi = ties.sum(axis=-1) > 1
        if multi.any():
            t = ties[multi]
            draw = rng.random(t.shape)
            pick[multi] = np.argmax(np.where(t, draw, -1.0), axis=-1)
    flat[rows, pick] ^= 1
    flipped = np.full(syndrome.shape, -1, dtype=np.int64)
    flipped.reshape(-1)[rows] = pick
    return WagnerOutcome(codeword=out, flipped=flipped, parity_ok_in=syndrome == 0)
