"""Interleavers: uniform symbol interleaving across outer codewords and
bit-level interleaving of the second modulation bit level.

Both are realized as explicit sampled permutations so a simulation run can
pin them with a seed; the analytic counterparts in `analytic` average over
the permutation ensemble instead.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SymbolInterleaver:
    """Permutation of outer-code symbols spanning `depth` codewords.

    apply() reads symbol perm[i] into slot i on the transmit side; invert()
    undoes it. Arrays carry bits on the last axis, bits_per_symbol per
    symbol, symbols in codeword order.
    """

    perm: np.ndarray
    bits_per_symbol: int

    @property
    def n_positions(self):
        return self.perm.size

    def _as_symbols(self, x):
        x = np.asarray(x)
        if x.shape[-1] != self.n_positions * self.bits_per_symbol:
            raise ValueError("array length does not match interleaver span")
        return x.reshape(x.shape[:-1] + (self.n_positions, self.bits_per_symbol))

    def apply(self, x):
        s = self._as_symbols(x)
        return s[..., self.perm, :].reshape(np.asarray(x).shape)

    def invert(self, x):
        s = self._as_symbols(x)
        inv = np.argsort(self.perm)
        return s[..., inv, :].reshape(np.asarray(x).shape)


def identity_interleaver(depth, rsp):
    return SymbolInterleaver(
        perm=np.arange(depth * rsp.n_symbols), bits_per_symbol=rsp.bits_per_symbol
    )


def sample_uniform(depth, rsp, rng):
    """Draw a uniformly random symbol interleaver over `depth` codewords."""
    if depth < 1:
        raise ValueError("interleaver depth must be >= 1")
    rng = np.random.default_rng(rng)
    perm = rng.permutation(depth * rsp.n_symbols)
    return SymbolInterleaver(perm=perm, bits_per_symbol=rsp.bits_per_symbol)


@dataclass(frozen=True)
class BitLevelInterleaver:
    """Permutation applied to the bits riding on one modulation bit level.

    For 2 bits per symbol, level index 1 selects every second coded bit
    (the magnitude bit of the Gray-labeled 4-ASK constellation). apply()
    permutes those positions and leaves the other level untouched; it works
    on hard bits and on soft values alike, so the receive side can run
    invert() directly on LLRs.
    """

    perm: np.ndarray
    n_bits: int
    level: int = 1
    bits_per_symbol: int = 2

    @property
    def positions(self):
        return np.arange(self.level, self.n_bits, self.bits_per_symbol)

    @property
    def size(self):
        return self.perm.size

    def apply(self, x):
        x = np.asarray(x)
        if x.shape[-1] != self.n_bits:
            raise ValueError("array length does not match interleaver span")
        pos = self.positions
        out = x.copy()
        out[..., pos] = x[..., pos[self.perm]]
        return out

    def invert(self, x):
        x = np.asarray(x)
        if x.shape[-1] != self.n_bits:
            raise ValueError("array length does not match interleaver span")
        pos = self.positions
        out = x.copy()
        out[..., pos[self.perm]] = x[..., pos]
        return out


def sample_bit_level2(n_coded_bits, rng, bits_per_symbol=2):
    """Draw a uniform permutation of the second-bit-level positions."""
    if n_coded_bits % bits_per_symbol:
        raise ValueError("coded bit count must fill whole symbols")
    rng = np.random.default_rng(rng)
    n = n_coded_bits // bits_per_symbol
    return BitLevelInterleaver(
        perm=rng.permutation(n), n_bits=n_coded_bits, level=1, bits_per_symbol=bits_per_symbol
    )
