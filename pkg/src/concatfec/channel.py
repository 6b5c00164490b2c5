"""Modulation, AWGN/ISI channel, soft demapping and LLR quantization.

Conventions used throughout the package:

* Bit 0 maps to the positive half of the constellation (BPSK: 0 -> +1).
* LLRs are natural-log ratios log p(bit=0|y) - log p(bit=1|y); a positive
  LLR votes for bit 0. All demappers (memoryless and trellis) share this
  convention, so decoders downstream never care which demapper produced
  their input.
* The noise is real AWGN with variance sigma2 per symbol. Constellations
  are normalized to unit average energy, so SNR = (1 + alpha^2) / sigma2
  including the ISI tap energy.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .numutil import q_func


@dataclass(frozen=True)
class Modulation:
    """A real constellation with a fixed bit labeling.

    points[i] carries label labels[i] (one row of bits_per_symbol bits).
    """

    name: str
    points: tuple
    labels: tuple

    @property
    def bits_per_symbol(self):
        return len(self.labels[0])

    def point_array(self):
        return np.asarray(self.points, dtype=float)

    def label_array(self):
        return np.asarray(self.labels, dtype=np.uint8)

    def points_by_label_code(self):
        """Constellation point indexed by the integer value of its label."""
        out = np.empty(2 ** self.bits_per_symbol, dtype=float)
        for pt, lab in zip(self.points, self.labels):
            code = 0
            for b in lab:
                code = (code << 1) | int(b)
            out[code] = pt
        return out


BPSK = Modulation("bpsk", points=(1.0, -1.0), labels=((0,), (1,)))

# Unit-energy 4-ASK with Gray labeling; the first label bit is the sign bit
# (LLR exactly 0 at y = 0), the second separates inner from outer points.
_ASK4_DELTA = 1.0 / np.sqrt(5.0)
ASK4 = Modulation(
    "ask4",
    points=(-3 * _ASK4_DELTA, -_ASK4_DELTA, _ASK4_DELTA, 3 * _ASK4_DELTA),
    labels=((0, 0), (0, 1), (1, 1), (1, 0)),
)

MODULATIONS = {m.name: m for m in (BPSK, ASK4)}


@dataclass(frozen=True)
class ChannelSpec:
    """AWGN channel with an optional single-tap ISI coefficient.

    y_j = x_j + alpha * x_{j-1} + n_j, with x_0 = 0 (the first symbol sees
    no interference). alpha = 0 is the memoryless channel.
    """

    sigma2: float
    alpha: float = 0.0

    def __post_init__(self):
        if self.sigma2 <= 0:
            raise ValueError("noise variance must be positive")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("ISI coefficient must lie in [0, 1]")

    @property
    def snr(self):
        return (1.0 + self.alpha**2) / self.sigma2

    @classmethod
    def from_snr_db(cls, snr_db, alpha=0.0):
        snr = 10.0 ** (snr_db / 10.0)
        return cls(sigma2=(1.0 + alpha**2) / snr, alpha=alpha)


def bpsk_llr_stats(sigma2):
    """Mean and standard deviation of the BPSK LLR given bit 0 was sent.

    L = 2y/sigma2 with y ~ N(+1, sigma2) gives mean 2/sigma2 and std
    2/sqrt(sigma2).
    """
    return 2.0 / sigma2, 2.0 / np.sqrt(sigma2)


def hard_ber_bpsk(sigma2):
    """Raw hard-decision bit error rate of BPSK, Q(1/sigma)."""
    return float(q_func(1.0 / np.sqrt(sigma2)))


def modulate(bits, mod):
    """Map a bit array to constellation symbols.

    bits has shape (..., J*K) for K = mod.bits_per_symbol; consecutive
    groups of K bits form one symbol label, first bit most significant.
    """
    bits = np.asarray(bits)
    k = mod.bits_per_symbol
    if bits.shape[-1] % k:
        raise ValueError("bit count is not a multiple of bits per symbol")
    lut = mod.points_by_label_code()
    if k == 1:
        return lut[0] + (lut[1] - lut[0]) * bits
    groups = bits.reshape(bits.shape[:-1] + (-1, k))
    codes = np.zeros(groups.shape[:-1], dtype=np.int64)
    for j in range(k):
        codes = (codes << 1) | groups[..., j].astype(np.int64)
    return lut[codes]


def transmit(x, chan, rng):
    """Push symbols through the channel; returns the noisy observation."""
    x = np.asarray(x, dtype=float)
    y = x + rng.normal(scale=np.sqrt(chan.sigma2), size=x.shape)
    if chan.alpha != 0.0:
        prev = np.zeros_like(x)
        prev[..., 1:] = x[..., :-1]
        y = y + chan.alpha * prev
    return y


def llr_memoryless(y, mod, sigma2):
    """Per-bit LLRs for a memoryless AWGN observation.

    Returns an array of shape y.shape + (bits_per_symbol,).
    """
    y = np.asarray(y, dtype=float)
    if mod.name == "bpsk":
        return (2.0 * y / sigma2)[..., None]
    pts = mod.point_array()
    labs = mod.label_array()
    # unnormalized point log-likelihoods; the Gaussian constant cancels in
    # the numerator/denominator ratio
    ll = -((y[..., None] - pts) ** 2) / (2.0 * sigma2)
    out = np.empty(y.shape + (mod.bits_per_symbol,), dtype=float)
    for k in range(mod.bits_per_symbol):
        out[..., k] = _lse(ll[..., labs[:, k] == 0], -1) - _lse(ll[..., labs[:, k] == 1], -1)
    return out


def _lse(a, axis):
    """Manual log-sum-exp; the hot recursions cannot afford wrapper overhead."""
    m = a.max(axis=axis)
    return m + np.log(np.exp(a - np.expand_dims(m, axis)).sum(axis=axis))


def trellis_symbol_posteriors(y, chan, mod):
    """Exact symbol-wise posteriors over the single-tap ISI trellis.

    Forward-backward recursion in the log domain; the state is the previous
    symbol (|X| states) with a dedicated zero start state for the x_0 = 0
    guard. y has shape (J,) or (B, J); returns log posteriors of shape
    (..., J, |X|), normalized over the last axis. Branch metrics drop the
    Gaussian normalization constant: it shifts all states of a step equally
    and cancels in the normalization.
    """
    y = np.asarray(y, dtype=float)
    squeeze = y.ndim == 1
    if squeeze:
        y = y[None, :]
    B, J = y.shape
    pts = mod.point_array()
    S = pts.size
    inv2s2 = 0.5 / chan.sigma2

    # branch metric means for steps j >= 1, state s' (prev) -> s (current)
    means = (pts[:, None] * chan.alpha + pts[None, :]).reshape(-1)

    log_alpha = np.empty((B, J, S))
    log_alpha[:, 0, :] = -((y[:, 0, None] - pts[None, :]) ** 2) * inv2s2
    for j in range(1, J):
        g = -((y[:, j, None] - means[None, :]) ** 2) * inv2s2
        step = log_alpha[:, j - 1, :, None] + g.reshape(B, S, S)
        log_alpha[:, j, :] = _lse(step, 1)

    log_beta = np.zeros((B, J, S))
    for j in range(J - 2, -1, -1):
        g = -((y[:, j + 1, None] - means[None, :]) ** 2) * inv2s2
        step = log_beta[:, j + 1, None, :] + g.reshape(B, S, S)
        log_beta[:, j, :] = _lse(step, 2)

    post = log_alpha + log_beta
    post = post - _lse(post, -1)[..., None]
    return post[0] if squeeze else post


def bcjr_llr(y, chan, mod):
    """Per-bit LLRs from the ISI trellis demapper (natural log).

    With alpha = 0 this reduces exactly to llr_memoryless up to float
    round-off. Shape contract matches llr_memoryless.
    """
    post = trellis_symbol_posteriors(y, chan, mod)
    labs = mod.label_array()
    out = np.empty(post.shape[:-1] + (mod.bits_per_symbol,), dtype=float)
    for k in range(mod.bits_per_symbol):
        num = _lse(post[..., labs[:, k] == 0], -1)
        den = _lse(post[..., labs[:, k] == 1], -1)
        out[..., k] = num - den
    return out


@dataclass(frozen=True)
class QuantizerSpec:
    """Symmetric mid-rise LLR quantizer with 2^bits levels of step delta.

    Output levels are the odd multiples of delta/2 up to the saturation
    level (2^(bits-1) - 1/2) * delta. Exact zeros are sent to +delta/2
    (a measure-zero tie, resolved deterministically).
    """

    bits: int
    step: float

    def __post_init__(self):
        if self.bits < 2:
            raise ValueError("quantizer needs at least 2 bits")
        if self.step <= 0:
            raise ValueError("quantizer step must be positive")

    @property
    def half_levels(self):
        return 2 ** (self.bits - 1)

    def level_indices(self):
        """Integer level indices i, ascending; level value is (i - 1/2) * step."""
        h = self.half_levels
        return np.arange(-h + 1, h + 1)

    def levels(self):
        return (self.level_indices() - 0.5) * self.step

    def level_probs(self, mean, std):
        """Probability of each quantizer level for an N(mean, std^2) input."""
        h = self.half_levels
        edges = np.arange(-h, h + 1, dtype=float) * self.step
        edges[0] = -np.inf
        edges[-1] = np.inf
        cdf = special.ndtr((edges - mean) / std)
        return np.diff(cdf)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        sign = np.where(x < 0, -1.0, 1.0)
        mag = np.minimum(self.half_levels - 0.5, np.floor(np.abs(x) / self.step) + 0.5)
        return sign * self.step * mag
