"""Error-rate analysis of the concatenated chain on binary-input AWGN.

The chain is an outer bounded-distance-decoded Reed-Solomon code over
m-bit symbols fed by inner single parity-check codes under Wagner
decoding. Everything here is semi-analytic: channel-error weight
distributions are binomials, the Wagner correction/miscorrection events
are one-dimensional Gaussian tail integrals, and the outer code sees the
resulting per-symbol error process either directly (no interleaving),
through a uniform symbol interleaver of finite depth, or in the
infinite-depth limit.

Correlation between symbol errors at the outer decoder input is captured
by "burst profiles": the inner code couples groups of `span` consecutive
outer symbols (span = lcm(k_spc, m) / m), and a profile stores the
probability that exactly i symbols of such a group are erroneous together
with the matching expected bit-error mass. Profiles for every (k_spc, m)
geometry come out of a single construction: post-decoding error patterns
of a Wagner-decoded SPC codeword are exchangeable across positions, so
the probability that decoding fails with all errors confined to any given
position subset depends only on the subset size, and symbol-level joint
statistics follow by inclusion-exclusion over the segments a codeword
contributes to each symbol.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize, stats

from .channel import bpsk_llr_stats, hard_ber_bpsk
from .numutil import (
    bisect_db,
    db_to_lin,
    integrate_log_integrand,
    lin_to_db,
    log_binom,
    log_norm_pdf,
    log_q_func,
)
from .rs import KP4, RsParams

# Terms whose channel-error-weight probability is below the running peak by
# this log margin cannot move a double-precision sum; integrals for them are
# skipped and the event probabilities reported as exact zeros.
_LOG_CUTOFF = 90.0


# ---------------------------------------------------------------------------
# Outer code alone


@dataclass(frozen=True)
class RsRates:
    """Post-decoding rates of the bounded-distance outer decoder."""

    frame: float
    symbol: float
    bit: float


def rs_error_rates(p_sym, p_bit, rsp=KP4, approx_bits=False):
    """Outer-code error rates for i.i.d. symbol errors at its input.

    p_sym is the probability a symbol is erroneous, p_bit the raw bit
    error rate. The exact output BER is p_bit * P_symbol_out / p_sym
    (erroneous symbols keep their bit content when decoding fails); with
    approx_bits=True the common shortcut P_symbol_out / m is used instead.
    """
    if p_sym < 0 or p_bit < 0:
        raise ValueError("error probabilities must be nonnegative")
    if p_sym == 0.0:
        return RsRates(0.0, 0.0, 0.0)
    n, t = rsp.n_symbols, rsp.t
    frame = float(stats.binom.sf(t, n, p_sym))
    symbol = float(p_sym * stats.binom.sf(t - 1, n - 1, p_sym))
    if approx_bits:
        bit = symbol / rsp.bits_per_symbol
    else:
        bit = p_bit * symbol / p_sym
    return RsRates(frame=frame, symbol=symbol, bit=bit)


def iid_symbol_error_prob(p_bit, rsp=KP4):
    """Symbol error probability for i.i.d. bit errors, 1 - (1-p)^m."""
    return -float(np.expm1(rsp.bits_per_symbol * np.log1p(-p_bit)))


def kp4_input_ber_threshold(target_ber=1e-13, rsp=KP4):
    """Raw input BER (i.i.d. bits) at which the outer code reaches target_ber."""

    def out_ber(log10_p):
        p = 10.0**log10_p
        return rs_error_rates(iid_symbol_error_prob(p, rsp), p, rsp).bit

    lo, hi = -8.0, -1.0
    sol = optimize.brentq(lambda x: np.log(out_ber(x) / target_ber), lo, hi, xtol=1e-12)
    return 10.0**sol


# ---------------------------------------------------------------------------
# Inner SPC code under Wagner decoding


@dataclass(frozen=True)
class WagnerStats:
    """Frame/bit error statistics of one Wagner-decoded SPC codeword.

    p_weight[l], l = 0..n: probability of l channel hard errors.
    p_corrected[l] / p_miscorrected[l]: probability that the decoder flips
    an erroneous / a correct position given l channel errors (zero-padded
    at l = 0). fer_weight_sum is the same frame error rate assembled from
    the weight sequence instead of the closed form; the two agree to
    float accuracy and both are exposed for regression checks.
    """

    n: int
    sigma2: float
    hard_ber: float
    fer: float
    ber: float
    ber_union: float
    fer_weight_sum: float
    p_weight: np.ndarray
    p_corrected: np.ndarray
    p_miscorrected: np.ndarray


class SpcAnalysis:
    """Cached per-(n, sigma2) Wagner event integrals and derived statistics.

    The two integral families share every evaluation across confinement
    sizes, so one instance serves the plain statistics, all confined-tail
    statistics, and the burst profile construction at a given SNR.
    """

    def __init__(self, n_spc, sigma2):
        if n_spc < 3:
            raise ValueError("SPC length must be at least 3")
        if sigma2 <= 0:
            raise ValueError("noise variance must be positive")
        self.n = int(n_spc)
        self.k = self.n - 1
        self.sigma2 = float(sigma2)
        self.sigma = math.sqrt(sigma2)
        self.hard_ber = hard_ber_bpsk(sigma2)
        self._weights = None
        self._l_max = None
        self._iphi = None
        self._ipsi = None

    # -- channel error weight distribution -------------------------------

    @property
    def p_weight(self):
        if self._weights is None:
            self._weights = stats.binom.pmf(np.arange(self.n + 1), self.n, self.hard_ber)
        return self._weights

    @property
    def l_max(self):
        """Largest error weight whose probability still matters in doubles."""
        if self._l_max is None:
            logw = stats.binom.logpmf(np.arange(1, self.n + 1), self.n, self.hard_ber)
            keep = np.nonzero(logw > logw.max() - _LOG_CUTOFF)[0]
            self._l_max = int(keep[-1] + 1)
        return self._l_max

    # -- event integrals ---------------------------------------------------

    def _flip_integrals(self):
        """Tail integrals for flip events, indexed by channel error weight.

        iphi[l]: the decoder's least reliable position is one of the l
        erroneous positions (value y < 0, all others farther out).
        ipsi[l]: the least reliable position is a correct one (y > 0).
        Combinatorial position counts are NOT included here.
        """
        if self._iphi is not None:
            return self._iphi, self._ipsi
        n, s = self.n, self.sigma
        L = self.l_max
        iphi = np.zeros(n + 3)
        ipsi = np.zeros(n + 3)
        for l in range(1, min(L, n) + 1):

            def log_phi(y, l=l):
                return (
                    log_norm_pdf(y, 1.0, s)
                    + (l - 1) * log_q_func((1.0 - y) / s)
                    + (n - l) * log_q_func(-(1.0 + y) / s)
                )

            iphi[l] = integrate_log_integrand(log_phi, -np.inf, 0.0)
            if l <= n - 1:

                def log_psi(y, l=l):
                    return (
                        log_norm_pdf(y, 1.0, s)
                        + l * log_q_func((y + 1.0) / s)
                        + (n - l - 1) * log_q_func((y - 1.0) / s)
                    )

                ipsi[l] = integrate_log_integrand(log_psi, 0.0, np.inf)
        self._iphi, self._ipsi = iphi, ipsi
        return iphi, ipsi

    # -- plain statistics --------------------------------------------------

    def stats(self):
        n = self.n
        p = self.hard_ber
        iphi, ipsi = self._flip_integrals()
        ll = np.arange(n + 1, dtype=float)
        choose = np.exp(log_binom(n, ll))
        p_corr = np.zeros(n + 1)
        p_mis = np.zeros(n + 1)
        p_corr[1:] = choose[1:] * ll[1:] * iphi[1 : n + 1]
        p_mis[1:] = choose[1:] * (n - ll[1:]) * ipsi[1 : n + 1]

        a = self.p_weight
        no_error = float(np.expm1(n * np.log1p(-p)))  # (1-p)^n - 1
        fer = -no_error - p_corr[1]
        fer_sum = float(a[1:].sum() - p_corr[1])

        even = np.arange(2, n + 1, 2)
        odd3 = np.arange(3, n + 1, 2)
        odd1 = np.arange(1, n, 2)
        ber = (
            float((even * a[even]).sum())
            + float(((odd3 - 1) * p_corr[odd3]).sum())
            + float(((odd1 + 1) * p_mis[odd1]).sum())
        ) / n
        ber_union = (2.0 * p_mis[1] + float((ll[2:] * a[2:]).sum())) / n
        return WagnerStats(
            n=n,
            sigma2=self.sigma2,
            hard_ber=p,
            fer=float(fer),
            ber=ber,
            ber_union=float(ber_union),
            fer_weight_sum=fer_sum,
            p_weight=a,
            p_corrected=p_corr,
            p_miscorrected=p_mis,
        )

    # -- statistics confined to a position subset --------------------------

    def confined_fer(self, tail_sys):
        """P{decoding fails with every residual error inside a fixed subset}.

        The subset holds tail_sys systematic positions plus the parity
        position (any subset of that size gives the same value by
        exchangeability). tail_sys = k reproduces the plain frame error
        rate.
        """
        kappa = self._check_tail(tail_sys)
        n, p = self.n, self.hard_ber
        iphi, ipsi = self._flip_integrals()
        out = 0.0
        # even channel weights pass through undetected
        for l in range(2, kappa + 2, 2):
            out += self._confined_weight(l, kappa)
        # odd weights, erroneous least-reliable position inside the subset
        for l in range(3, kappa + 2, 2):
            out += math.comb(kappa + 1, l) * l * iphi[l]
        # odd weights, erroneous least-reliable position outside it
        for l in range(3, kappa + 3, 2):
            out += math.comb(kappa + 1, l - 1) * (n - kappa - 1) * iphi[l]
        # odd weights, correct least-reliable position inside the subset
        for l in range(1, kappa + 1, 2):
            out += math.comb(kappa + 1, l) * (kappa + 1 - l) * ipsi[l]
        return out

    def confined_bit_errors(self, tail_sys):
        """Expected systematic bit errors on the same confined event.

        Returned as a count (not a rate); divide by k for the per-bit
        contribution. tail_sys = k gives k * ber.
        """
        kappa = self._check_tail(tail_sys)
        n = self.n
        iphi, ipsi = self._flip_integrals()
        acc = 0.0
        for l in range(2, kappa + 2, 2):
            acc += l * self._confined_weight(l, kappa)
        for l in range(3, kappa + 2, 2):
            acc += (l - 1) * math.comb(kappa + 1, l) * l * iphi[l]
        for l in range(3, kappa + 3, 2):
            acc += (l - 1) * math.comb(kappa + 1, l - 1) * (n - kappa - 1) * iphi[l]
        for l in range(1, kappa + 1, 2):
            acc += (l + 1) * math.comb(kappa + 1, l) * (kappa + 1 - l) * ipsi[l]
        # kappa of the kappa+1 subset positions are systematic; residual
        # errors are exchangeable inside the subset.
        return acc * kappa / (kappa + 1.0)

    def _check_tail(self, tail_sys):
        if not 1 <= tail_sys <= self.k:
            raise ValueError("confined subset must hold 1..k systematic positions")
        return int(tail_sys)

    def _confined_weight(self, l, kappa):
        """P{l channel errors, all inside the kappa+1 subset}."""
        p = self.hard_ber
        if l > kappa + 1:
            return 0.0
        logv = (
            log_binom(kappa + 1, l)
            + l * math.log(p)
            + (self.n - l) * math.log1p(-p)
        )
        return float(np.exp(logv))


def wagner_stats(n_spc, sigma2):
    """Convenience wrapper building SpcAnalysis(...).stats()."""
    return SpcAnalysis(n_spc, sigma2).stats()


# ---------------------------------------------------------------------------
# Burst profiles: joint symbol-error statistics of one coupled symbol group


@dataclass(frozen=True)
class BurstProfile:
    """Error statistics of one group of `span` jointly affected symbols.

    p_err[i], i = 0..span: probability that exactly i symbols of a group
    are erroneous at the outer decoder input. ber_part[i]: expected bit
    errors of such a group restricted to those events, normalized per
    group bit, so sum(ber_part) is the per-bit error rate (None when the
    originating analysis provides frame statistics only). n_groups counts
    groups per outer codeword and is rounded up when span does not divide
    the codeword length (exact_cover False: the prediction is then a
    slight overestimate).
    """

    span: int
    n_groups: int
    p_err: np.ndarray
    ber_part: np.ndarray | None
    exact_cover: bool

    def mean_symbol_error_prob(self):
        i = np.arange(self.span + 1)
        return float((i * self.p_err).sum() / self.span)

    def mean_bit_error_prob(self):
        if self.ber_part is None:
            return None
        return float(self.ber_part.sum())


def _codeword_segments(k, m, span):
    """Symbol-aligned segment lists for each codeword of one group.

    Group = span*m bits = c codewords of k systematic bits each. Returns a
    list with one entry per codeword: a list of (symbol_index, n_bits)
    covering that codeword's systematic range.
    """
    c = span * m // k
    out = []
    for j in range(c):
        lo, hi = j * k, (j + 1) * k
        segs = []
        pos = lo
        while pos < hi:
            sym = pos // m
            take = min((sym + 1) * m, hi) - pos
            segs.append((sym, take))
            pos += take
        out.append(segs)
    return out


def burst_profile(n_spc, sigma2, rsp=KP4, analysis=None):
    """Joint symbol-error profile of the inner/outer bit-mapping geometry.

    Works for any (k_spc, m): the group couples span = k/gcd(k, m) symbols
    carried by c = m/gcd(k, m) codewords. Built from confined-event
    statistics by inclusion-exclusion over the symbol-aligned segments of
    each codeword, folded across codewords with a bitmask DP.
    """
    spc = analysis if analysis is not None else SpcAnalysis(n_spc, sigma2)
    if spc.n != n_spc:
        raise ValueError("analysis object does not match n_spc")
    k, m = spc.k, rsp.bits_per_symbol
    g = math.gcd(k, m)
    span = k // g
    segments = _codeword_segments(k, m, span)

    fer = lru_cache(maxsize=None)(spc.confined_fer)
    berr = lru_cache(maxsize=None)(spc.confined_bit_errors)

    # probability and expected-bit-error weight of each state, where a
    # state is the set of symbols already touched by some codeword
    prob = np.zeros(1 << span)
    werr = np.zeros(1 << span)
    prob[0] = 1.0
    p_clean = 1.0 - fer(k)
    for segs in segments:
        branches = [(0, p_clean, 0.0)]
        nseg = len(segs)
        for pick in range(1, 1 << nseg):
            chosen = [segs[i] for i in range(nseg) if pick >> i & 1]
            mask = 0
            for sym, _ in chosen:
                mask |= 1 << sym
            # inclusion-exclusion over sub-selections of the chosen segments
            pv = 0.0
            ev = 0.0
            for sub in range(1, 1 << len(chosen)):
                bits = sum(chosen[i][1] for i in range(len(chosen)) if sub >> i & 1)
                sign = -1.0 if (len(chosen) - bin(sub).count("1")) % 2 else 1.0
                pv += sign * fer(bits)
                ev += sign * berr(bits)
            branches.append((mask, pv, ev))
        nprob = np.zeros_like(prob)
        nwerr = np.zeros_like(werr)
        for mask, pv, ev in branches:
            if pv < 0.0:
                pv = 0.0  # inclusion-exclusion round-off on negligible events
                ev = 0.0
            idx = np.arange(prob.size) | mask
            np.add.at(nprob, idx, prob * pv)
            np.add.at(nwerr, idx, werr * pv + prob * ev)
        prob, werr = nprob, nwerr

    p_err = np.zeros(span + 1)
    ber_part = np.zeros(span + 1)
    counts = np.array([bin(x).count("1") for x in range(1 << span)])
    for i in range(span + 1):
        sel = counts == i
        p_err[i] = prob[sel].sum()
        ber_part[i] = werr[sel].sum() / (span * m)

    n_groups = -(-rsp.n_symbols // span)
    return BurstProfile(
        span=span,
        n_groups=n_groups,
        p_err=p_err,
        ber_part=ber_part,
        exact_cover=rsp.n_symbols % span == 0,
    )


# ---------------------------------------------------------------------------
# End-to-end rates


@dataclass(frozen=True)
class ChainRates:
    fer: float
    ber: float | None


def _sum_tail_table(p_err, n_groups, t):
    """Tails P{S >= j} for j = 0..t+1 of the i.i.d. group-count sum.

    Absorbing-bucket DP: mass above t accumulates in a separate cell, so
    the deep tail is assembled from positive additions only.
    """
    f = np.zeros(t + 1)
    f[0] = 1.0
    absorbed = 0.0
    for _ in range(n_groups):
        nf = np.convolve(f, p_err)
        absorbed += float(nf[t + 1 :].sum())
        f = nf[: t + 1]
    tails = np.empty(t + 2)
    tails[t + 1] = absorbed
    for j in range(t, -1, -1):
        tails[j] = tails[j + 1] + f[j]
    return tails


def _sum_pmf(p_err, n_groups):
    """Full pmf of the i.i.d. group-count sum via squaring convolutions."""
    result = np.array([1.0])
    base = np.asarray(p_err, dtype=float)
    n = n_groups
    while n:
        if n & 1:
            result = np.convolve(result, base)
        n >>= 1
        if n:
            base = np.convolve(base, base)
    return result


def chain_rates_no_interleaver(profile, rsp=KP4):
    """Outer-code FER/BER when groups feed the single codeword directly."""
    t = rsp.t
    tails = _sum_tail_table(profile.p_err, profile.n_groups, t)
    fer = float(tails[t + 1])
    ber = None
    if profile.ber_part is not None:
        tails1 = _sum_tail_table(profile.p_err, profile.n_groups - 1, t)
        span = profile.span
        ber = 0.0
        for i in range(1, span + 1):
            need = max(t + 1 - i, 0)
            ber += profile.ber_part[i] * tails1[need]
        # normalize group bits to actual codeword bits when span rounds up
        ber *= profile.n_groups * span / rsp.n_symbols
        ber = float(ber)
    return ChainRates(fer=fer, ber=ber)


def chain_rates_uniform_interleaver(profile, depth, rsp=KP4):
    """Outer-code FER/BER behind a uniform symbol interleaver.

    depth counts outer codewords interleaved together; depth=math.inf
    gives the independent-symbol limit. FER/BER are per outer codeword.
    """
    if depth == math.inf:
        p_sym = profile.mean_symbol_error_prob()
        p_bit = profile.mean_bit_error_prob()
        rr = rs_error_rates(p_sym, p_bit if p_bit is not None else 0.0, rsp)
        ber = rr.bit if p_bit is not None else None
        return ChainRates(fer=rr.frame, ber=ber)
    depth = int(depth)
    if depth < 1:
        raise ValueError("interleaver depth must be >= 1")
    t = rsp.t
    span = profile.span
    n_groups = -(-depth * rsp.n_symbols // span)
    total_syms = depth * rsp.n_symbols

    pmf = _sum_pmf(profile.p_err, n_groups)
    e = np.arange(pmf.size)
    # a codeword fails when more than t of the e scattered errors hit it
    tail_f = stats.hypergeom.sf(t, total_syms, rsp.n_symbols, np.minimum(e, total_syms))
    fer = float((pmf * tail_f).sum())

    ber = None
    if profile.ber_part is not None:
        pmf1 = _sum_pmf(profile.p_err, n_groups - 1)
        # P{the codeword holding one marked error collects >= t more},
        # indexed by the total error count e (marked error included)
        e_all = np.arange(pmf1.size + span)
        tail_b = stats.hypergeom.sf(
            t - 1,
            total_syms - 1,
            rsp.n_symbols - 1,
            np.clip(e_all - 1, 0, total_syms - 1),
        )
        acc = 0.0
        for i in range(1, span + 1):
            w = np.zeros(pmf1.size + span)
            w[i : i + pmf1.size] = pmf1
            acc += profile.ber_part[i] * float((w * tail_b).sum())
        acc *= n_groups * span / total_syms
        ber = float(acc)
    return ChainRates(fer=fer, ber=ber)


def chain_rates_iid_bits(p_bit, rsp=KP4):
    """Outer-code rates for ideally bit-interleaved inner output errors."""
    return rs_error_rates(iid_symbol_error_prob(p_bit, rsp), p_bit, rsp)


# ---------------------------------------------------------------------------
# Quantized-input Wagner decoding


@dataclass(frozen=True)
class QuantizedWagnerStats:
    n: int
    sigma2: float
    quantizer: object
    hard_ber: float
    fer: float
    p_correct_single: float


def quantized_wagner_fer(n_spc, sigma2, qspec):
    """Frame error rate of Wagner decoding on quantized LLRs.

    Quantization leaves hard decisions intact but creates reliability
    ties; the single-error correction probability accounts for the
    uniformly random tie pick. Levels and their probabilities come from
    the quantizer applied to the Gaussian LLR of the unquantized channel.
    """
    if n_spc < 3:
        raise ValueError("SPC length must be at least 3")
    n = int(n_spc)
    mu, std = bpsk_llr_stats(sigma2)
    p = hard_ber_bpsk(sigma2)
    probs = qspec.level_probs(mu, std)
    idx = qspec.level_indices()
    h = qspec.half_levels

    def prob_of(i):
        return probs[i - idx[0]]

    # suffix[i]: P{level index >= i}, for the strictly-more-reliable factor
    suffix = np.concatenate([np.cumsum(probs[::-1])[::-1], [0.0]])

    def prob_at_least(i):
        return suffix[i - idx[0]] if i <= idx[-1] else 0.0

    c1 = 0.0
    for i in range(-h + 1, 1):  # erroneous level indices (negative LLR)
        p_err = prob_of(i)
        if p_err == 0.0:
            continue
        p_tie = prob_of(-i + 1)  # correct bits at the mirrored level
        p_above = prob_at_least(-i + 2)  # correct bits strictly more reliable
        for z in range(0, n):
            # one erroneous position and z tied correct positions form the
            # candidate set; the decoder flips the right one with prob
            # 1/(z+1), and there are (z+1)*C(n, z+1) position assignments.
            term = math.comb(n, z + 1) * p_err
            if z:
                if p_tie == 0.0:
                    continue
                term *= p_tie**z
            if n - z - 1:
                if p_above == 0.0:
                    continue
                term *= p_above ** (n - z - 1)
            c1 += term
    no_err = float(np.exp(n * np.log1p(-p)))
    fer = 1.0 - no_err - c1
    return QuantizedWagnerStats(
        n=n, sigma2=sigma2, quantizer=qspec, hard_ber=p, fer=float(fer), p_correct_single=float(c1)
    )


def quantized_profile(n_spc, sigma2, qspec, rsp=KP4):
    """Burst profile of the quantized chain (frame statistics only).

    The quantized analysis covers the symbol-matched geometry where one
    codeword carries exactly one outer symbol (k_spc = m).
    """
    if n_spc - 1 != rsp.bits_per_symbol:
        raise ValueError("quantized analysis needs k_spc equal to the symbol size")
    q = quantized_wagner_fer(n_spc, sigma2, qspec)
    return BurstProfile(
        span=1,
        n_groups=rsp.n_symbols,
        p_err=np.array([1.0 - q.fer, q.fer]),
        ber_part=None,
        exact_cover=True,
    )


def optimize_quantizer_step(n_spc, sigma2, bits, qspec_cls=None):
    """Pick the quantizer step minimizing the analytic frame error rate."""
    from .channel import QuantizerSpec

    cls = qspec_cls or QuantizerSpec
    _, std = bpsk_llr_stats(sigma2)
    mu = 2.0 / sigma2

    def fer_of(step):
        return quantized_wagner_fer(n_spc, sigma2, cls(bits=bits, step=step)).fer

    res = optimize.minimize_scalar(
        fer_of,
        bounds=(1e-2 * std, mu + 4.0 * std),
        method="bounded",
        options={"xatol": 1e-3 * std},
    )
    return cls(bits=bits, step=float(res.x))


# ---------------------------------------------------------------------------
# Rates and thresholds


def chain_rate(inner_rate, bits_per_symbol=1, rsp=KP4):
    """End-to-end information rate in bits per channel symbol."""
    return rsp.rate * inner_rate * bits_per_symbol


def spc_chain_rate(n_spc, bits_per_symbol=1, rsp=KP4):
    return chain_rate((n_spc - 1) / n_spc, bits_per_symbol, rsp)


def ebno_db_from_snr(snr, rate):
    return lin_to_db(snr / (2.0 * rate))


def snr_from_ebno_db(ebno_db, rate):
    return 2.0 * rate * db_to_lin(ebno_db)


def ebno_threshold(metric_of_sigma2, rate, target, lo_db, hi_db, tol_db=1e-3, alpha=0.0):
    """Eb/N0 (dB) where a monotone-decreasing metric crosses the target."""

    def fn(ebno_db):
        snr = snr_from_ebno_db(ebno_db, rate)
        return metric_of_sigma2((1.0 + alpha**2) / snr)

    return bisect_db(fn, target, lo_db, hi_db, tol_db=tol_db)
