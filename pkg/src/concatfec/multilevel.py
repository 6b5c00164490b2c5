"""Per-bit-level analysis of SPC codewords on the 4-ASK channel.

The two bit levels of the Gray-labeled constellation see different
channels. Each level is replaced by a binary-input AWGN surrogate whose
noise level is fitted so the conditional entropy of the bit given the
observation matches; codeword error rates then follow from the same
Gaussian tail integrals as the single-level analysis, with the codeword's
positions split across the two surrogate channels according to the bit
mapping.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .analytic import BurstProfile
from .channel import ASK4, BPSK, bpsk_llr_stats, hard_ber_bpsk
from .numutil import integrate_log_integrand, log_norm_pdf, log_q_func
from .rs import KP4


def bit_level_entropy(sigma2, mod=ASK4, level=0):
    """Conditional entropy H(bit level | channel output) in bits.

    Uniform symbols, AWGN with variance sigma2. Integration is split at
    the constellation points; absolute accuracy is well below 1e-10 bits.
    """
    pts = mod.point_array()
    labs = mod.label_array()
    sig = math.sqrt(sigma2)
    mask0 = labs[:, level] == 0
    log_prior = -math.log(pts.size)

    def integrand(y):
        ll = log_norm_pdf(float(y), pts, sig) + log_prior
        tot = special.logsumexp(ll)
        p0 = math.exp(special.logsumexp(ll[mask0]) - tot)
        if p0 <= 0.0 or p0 >= 1.0:
            h = 0.0
        else:
            h = -(p0 * math.log2(p0) + (1.0 - p0) * math.log2(1.0 - p0))
        return math.exp(tot) * h

    edges = np.concatenate([[-np.inf], np.sort(pts), [np.inf]])
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(integrand, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
        total += val
    return float(total)


def fit_surrogate_sigma2(target_entropy_bits, tol_bits=1e-9):
    """Noise variance of a binary-input AWGN channel with the given H(X|Y)."""
    if not 0.0 < target_entropy_bits < 1.0:
        raise ValueError("entropy target must be strictly between 0 and 1 bit")

    def gap(log_sigma):
        s2 = math.exp(2.0 * log_sigma)
        return bit_level_entropy(s2, BPSK, 0) - target_entropy_bits

    lo, hi = math.log(1e-3), math.log(1e3)
    sol = optimize.brentq(gap, lo, hi, xtol=1e-13)
    s2 = math.exp(2.0 * sol)
    if abs(bit_level_entropy(s2, BPSK, 0) - target_entropy_bits) > tol_bits:
        raise RuntimeError("surrogate entropy match did not reach tolerance")
    return s2


@dataclass(frozen=True)
class BitLevelSurrogate:
    """Binary-input AWGN stand-in for one modulation bit level."""

    noise_var: float

    @property
    def hard_ber(self):
        return hard_ber_bpsk(self.noise_var)

    @property
    def llr_mean(self):
        return bpsk_llr_stats(self.noise_var)[0]

    @property
    def llr_std(self):
        return bpsk_llr_stats(self.noise_var)[1]


def surrogate_fit(sigma2, mod=ASK4):
    """One surrogate per bit level; BPSK passes through unchanged."""
    if mod.name == "bpsk":
        return (BitLevelSurrogate(noise_var=float(sigma2)),)
    out = []
    for level in range(mod.bits_per_symbol):
        h = bit_level_entropy(sigma2, mod, level)
        out.append(BitLevelSurrogate(noise_var=fit_surrogate_sigma2(h)))
    return tuple(out)


def split_codeword_fer(counts, surrogates):
    """FER of a Wagner-decoded SPC codeword spread over surrogate channels.

    counts[k] positions of the codeword ride on surrogates[k]. The
    single-error correction term integrates over which channel carries
    the least reliable (erroneous) position.
    """
    counts = [int(c) for c in counts]
    if len(counts) != len(surrogates):
        raise ValueError("one count per surrogate required")
    if sum(counts) < 3:
        raise ValueError("SPC length must be at least 3")
    mus = [s.llr_mean for s in surrogates]
    stds = [s.llr_std for s in surrogates]
    pers = [s.hard_ber for s in surrogates]

    log_no_err = sum(c * math.log1p(-p) for c, p in zip(counts, pers))

    c1 = 0.0
    for k, ck in enumerate(counts):
        if ck == 0:
            continue

        def log_f(a, k=k):
            out = log_norm_pdf(a, mus[k], stds[k])
            for j, cj in enumerate(counts):
                e = cj - (1 if j == k else 0)
                if e:
                    out = out + e * log_q_func((-a - mus[j]) / stds[j])
            return out

        c1 += ck * integrate_log_integrand(log_f, -np.inf, 0.0)

    fer = -float(np.expm1(log_no_err)) - c1
    return float(fer)


def _two_state_profile(pf_a, pf_b, rsp):
    if rsp.n_symbols % 2:
        raise ValueError("paired-symbol profile needs an even outer code length")
    p_err = np.array(
        [
            (1.0 - pf_a) * (1.0 - pf_b),
            pf_a * (1.0 - pf_b) + pf_b * (1.0 - pf_a),
            pf_a * pf_b,
        ]
    )
    return BurstProfile(
        span=2,
        n_groups=rsp.n_symbols // 2,
        p_err=p_err,
        ber_part=None,
        exact_cover=True,
    )


def _check_geometry(n_spc, rsp):
    if n_spc - 1 != rsp.bits_per_symbol or n_spc % 2 == 0:
        raise NotImplementedError(
            "multilevel profiles cover the odd symbol-matched geometry "
            "(one codeword per outer symbol) only"
        )


def alternating_profile(n_spc, sigma2, rsp=KP4, surrogates=None):
    """Burst profile when code bits alternate between the two bit levels.

    With an odd codeword length the level pattern repeats every second
    codeword, pairing consecutive outer symbols: one codeword carries
    ceil(n/2) positions on the first level, the next one floor(n/2).
    """
    _check_geometry(n_spc, rsp)
    sur = surrogates if surrogates is not None else surrogate_fit(sigma2, ASK4)
    hi, lo = -(-n_spc // 2), n_spc // 2
    pf_a = split_codeword_fer((hi, lo), sur)
    pf_b = split_codeword_fer((lo, hi), sur)
    return _two_state_profile(pf_a, pf_b, rsp)


def mlc_profile(n_spc, sigma2, rsp=KP4, surrogates=None):
    """Burst profile when each bit level carries its own codewords.

    Codewords alternate between living entirely on level one or entirely
    on level two; outer symbols still pair up two-by-two.
    """
    _check_geometry(n_spc, rsp)
    sur = surrogates if surrogates is not None else surrogate_fit(sigma2, ASK4)
    pf_a = split_codeword_fer((n_spc, 0), sur)
    pf_b = split_codeword_fer((0, n_spc), sur)
    return _two_state_profile(pf_a, pf_b, rsp)
