"""Outer Reed-Solomon code model: parameters and genie-aided decoding.

The outer decoder is modeled as idealized bounded-distance decoding: it
corrects any pattern of at most t symbol errors, returns its input
unchanged beyond that, and never miscorrects. This matches standard
hard-decision RS decoding behavior for the error-rate regimes of interest
and needs no field arithmetic, so the simulator tracks the transmitted
frame ("genie" bookkeeping) instead of running syndrome decoding.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RsParams:
    """Symbol-level parameters of the outer code.

    n_symbols / k_symbols count code and information symbols, bits_per_symbol
    is the field size exponent. The KP4 standard code is the default
    construction (544, 514) over 10-bit symbols.
    """

    n_symbols: int = 544
    k_symbols: int = 514
    bits_per_symbol: int = 10

    def __post_init__(self):
        if not 0 < self.k_symbols < self.n_symbols:
            raise ValueError("need 0 < k_symbols < n_symbols")
        if self.bits_per_symbol < 1:
            raise ValueError("bits_per_symbol must be >= 1")

    @property
    def t(self):
        """Symbol error correction capability, floor((n-k)/2)."""
        return (self.n_symbols - self.k_symbols) // 2

    @property
    def n_bits(self):
        return self.n_symbols * self.bits_per_symbol

    @property
    def k_bits(self):
        return self.k_symbols * self.bits_per_symbol

    @property
    def rate(self):
        return self.k_symbols / self.n_symbols


KP4 = RsParams()


def partition_symbols(bits, rsp):
    """View a codeword-length bit array as (n_symbols, bits_per_symbol)."""
    bits = np.asarray(bits)
    if bits.shape[-1] != rsp.n_bits:
        raise ValueError(f"expected {rsp.n_bits} bits, got {bits.shape[-1]}")
    return bits.reshape(bits.shape[:-1] + (rsp.n_symbols, rsp.bits_per_symbol))


def symbol_errors(tx_bits, rx_bits, rsp):
    """Count symbols that differ in at least one bit. Works on batches."""
    diff = partition_symbols(tx_bits, rsp) != partition_symbols(rx_bits, rsp)
    return diff.any(axis=-1).sum(axis=-1)


def genie_bdd(tx_bits, rx_bits, rsp):
    """Idealized bounded-distance decoding with transmitted-frame knowledge.

    Returns (decoded_bits, failed, n_symbol_errors). On success (at most t
    erroneous symbols) the decoder output is the transmitted frame; on
    failure the received frame passes through untouched.
    """
    tx_bits = np.asarray(tx_bits, dtype=np.uint8)
    rx_bits = np.asarray(rx_bits, dtype=np.uint8)
    errs = int(symbol_errors(tx_bits, rx_bits, rsp))
    if errs <= rsp.t:
        return tx_bits.copy(), False, errs
    return rx_bits.copy(), True, errs
