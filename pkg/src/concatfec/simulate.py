"""Monte Carlo simulation of the full concatenated chain.

One chain frame carries `depth` outer codewords (depth > 1 only with the
symbol interleaver): outer codeword bits -> symbol interleaving -> inner
encoding -> optional scrambling and bit-level permutation -> modulation ->
AWGN/ISI channel -> demapping (trellis when the channel has memory) ->
optional LLR quantization -> inner decoding -> deinterleaving -> idealized
outer decoding with transmitted-frame bookkeeping.

Batches are seeded through independent counter-derived streams, so results
are reproducible for a given seed and independent of batch scheduling;
error rates are tallied per outer codeword.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .altcodes import ExtendedHamming, product_decode, product_encode
from .analytic import chain_rate, snr_from_ebno_db
from .channel import (
    ASK4,
    MODULATIONS,
    ChannelSpec,
    bcjr_llr,
    llr_memoryless,
    modulate,
    transmit,
)
from .interleave import sample_bit_level2, sample_uniform
from .rs import KP4, RsParams
from .spc import spc_encode, wagner_decode


# ---------------------------------------------------------------------------
# Inner code descriptors


@dataclass(frozen=True)
class InnerSpc:
    n: int = 11

    @property
    def k(self):
        return self.n - 1

    @property
    def rate(self):
        return self.k / self.n

    tag = "spc"


@dataclass(frozen=True)
class InnerProduct:
    size: int = 20
    iters: int = 2

    @property
    def n(self):
        return (self.size + 1) ** 2

    @property
    def k(self):
        return self.size**2

    @property
    def rate(self):
        return self.k / self.n

    tag = "product"


@dataclass(frozen=True)
class InnerHamming:
    r: int = 7
    chase_bits: int = 0  # 0: plain syndrome decoding with fallback

    @property
    def n(self):
        return 1 << self.r

    @property
    def k(self):
        return self.n - self.r - 1

    @property
    def rate(self):
        return self.k / self.n

    tag = "hamming"


@dataclass(frozen=True)
class InnerNone:
    n: int = 0
    k: int = 0
    rate = 1.0
    tag = "uncoded"


# ---------------------------------------------------------------------------
# Chain configuration


@dataclass(frozen=True)
class CodeChainConfig:
    """Everything defining the transmit/receive chain except SNR and seed."""

    rsp: RsParams = KP4
    inner: object = InnerSpc(11)
    modulation: str = "bpsk"
    mapping: str = "alternating"  # 4-ASK bit mapping: alternating | mlc
    interleaver: str = "none"  # none | symbol | bit
    depth: int = 1  # outer codewords behind the symbol interleaver
    alpha: float = 0.0
    quantizer: object = None
    demapper: str = "auto"  # auto | memoryless | trellis
    info_words: str = "random"  # random | zeros
    scramble: str = "auto"  # auto | on | off

    def validate(self):
        if self.modulation not in MODULATIONS:
            raise ValueError(f"unknown modulation {self.modulation!r}")
        if self.mapping not in ("alternating", "mlc"):
            raise ValueError(f"unknown mapping {self.mapping!r}")
        if self.interleaver not in ("none", "symbol", "bit"):
            raise ValueError(f"unknown interleaver {self.interleaver!r}")
        if self.interleaver == "symbol":
            if self.depth < 1:
                raise ValueError("symbol interleaver depth must be >= 1")
        elif self.depth != 1:
            raise ValueError("depth is only meaningful with the symbol interleaver")
        if self.interleaver == "bit" and self.modulation != "ask4":
            raise ValueError("the bit-level interleaver permutes the second 4-ASK level")
        if self.mapping == "mlc" and self.modulation != "ask4":
            raise ValueError("mlc mapping applies to 4-ASK")
        if self.quantizer is not None and self.modulation != "bpsk":
            raise ValueError("LLR quantization is modeled for BPSK")
        if self.demapper not in ("auto", "memoryless", "trellis"):
            raise ValueError(f"unknown demapper {self.demapper!r}")
        if self.alpha > 0 and self.demapper == "memoryless":
            raise ValueError("channels with memory need the trellis demapper")
        if self.info_words not in ("random", "zeros"):
            raise ValueError(f"unknown info_words {self.info_words!r}")
        if self.scramble not in ("auto", "on", "off"):
            raise ValueError(f"unknown scramble {self.scramble!r}")
        if isinstance(self.inner, InnerNone) and self.quantizer is not None:
            raise ValueError("quantizer without an inner soft decoder has no effect")

    @property
    def scramble_on(self):
        if self.scramble == "auto":
            return self.modulation == "ask4"
        return self.scramble == "on"

    @property
    def rate(self):
        mod = MODULATIONS[self.modulation]
        return chain_rate(self.inner.rate, mod.bits_per_symbol, self.rsp)

    def method_tag(self, kind="mc"):
        inner = self.inner.tag
        if isinstance(self.inner, InnerSpc):
            inner = f"spc{self.inner.n}"
        elif isinstance(self.inner, InnerHamming) and self.inner.chase_bits:
            inner = f"hamming-chase{self.inner.chase_bits}"
        il = {"none": "direct", "symbol": f"symbol{self.depth}", "bit": "bitlevel"}[
            self.interleaver
        ]
        parts = [kind, inner, self.modulation, il]
        if self.quantizer is not None:
            parts.append(f"q{self.quantizer.bits}")
        if self.alpha > 0:
            parts.append(f"isi{self.alpha:g}")
        return "/".join(parts)


@dataclass(frozen=True)
class StoppingRule:
    """Run until enough frame errors, a frame budget, or a wall clock limit."""

    min_frame_errors: int = 100
    max_frames: int | None = None
    max_seconds: float | None = None

    def done(self, frames, frame_errors, elapsed):
        if self.max_frames is not None and frames >= self.max_frames:
            return True
        if self.max_seconds is not None and elapsed >= self.max_seconds:
            return True
        return frame_errors >= self.min_frame_errors


@dataclass
class ErrorRateResult:
    """Tallies of one simulated operating point (frames = outer codewords)."""

    ebno_db: float
    snr_db: float
    fer: float
    ber: float
    fer_ci_lo: float | None
    fer_ci_hi: float | None
    frames: int
    frame_errors: int
    bit_errors: int
    method: str
    seed: object
    info_bits_per_frame: int = 0
    bit_errors_sq: float = 0.0

    def fer_std_error(self):
        if self.frames == 0:
            return math.inf
        return math.sqrt(max(self.fer * (1.0 - self.fer), 0.0) / self.frames)

    def ber_std_error(self):
        """Standard error of the BER from per-frame bit-error variance."""
        if self.frames == 0 or self.info_bits_per_frame == 0:
            return math.inf
        mean = self.bit_errors / self.frames
        var = max(self.bit_errors_sq / self.frames - mean**2, 0.0)
        return math.sqrt(var / self.frames) / self.info_bits_per_frame


# ---------------------------------------------------------------------------
# Engine


class _ChainEngine:
    """Derived constants and the per-batch pipeline for one configuration."""

    def __init__(self, cfg, sigma2, seed):
        cfg.validate()
        self.cfg = cfg
        self.rsp = cfg.rsp
        self.mod = MODULATIONS[cfg.modulation]
        self.chan = ChannelSpec(sigma2=sigma2, alpha=cfg.alpha)
        self.seed = seed

        self.depth = cfg.depth if cfg.interleaver == "symbol" else 1
        self.frame_bits = self.depth * self.rsp.n_bits
        inner = cfg.inner
        if isinstance(inner, InnerNone):
            self.k_in = self.n_in = self.frame_bits
        else:
            self.k_in, self.n_in = inner.k, inner.n
        self.n_blocks = -(-self.frame_bits // self.k_in)
        self.pad_bits = self.n_blocks * self.k_in - self.frame_bits
        self.coded_bits = self.n_blocks * self.n_in
        kps = self.mod.bits_per_symbol
        self.mod_pad = (-self.coded_bits) % kps
        self.n_sym = (self.coded_bits + self.mod_pad) // kps

        structure = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
        self.sym_il = None
        if cfg.interleaver == "symbol":
            self.sym_il = sample_uniform(self.depth, self.rsp, structure)
        self.bit_il = None
        if cfg.interleaver == "bit":
            self.bit_il = sample_bit_level2(self.coded_bits + self.mod_pad, structure)
        self.mlc_perm = None
        if cfg.modulation == "ask4" and cfg.mapping == "mlc":
            if self.n_blocks % 2:
                raise ValueError("mlc mapping needs an even number of inner blocks")
            self.mlc_perm = self._mlc_permutation()
        self.hamming = ExtendedHamming(inner.r) if isinstance(inner, InnerHamming) else None

        self.use_trellis = cfg.demapper == "trellis" or (
            cfg.demapper == "auto" and cfg.alpha > 0
        )

    def _mlc_permutation(self):
        """Bit order placing even blocks on level one, odd blocks on level two."""
        total = self.coded_bits + self.mod_pad
        if self.mod_pad:
            raise ValueError("mlc mapping needs the coded stream to fill symbols")
        idx = np.arange(self.coded_bits).reshape(self.n_blocks, self.n_in)
        lane1 = idx[0::2].reshape(-1)
        lane2 = idx[1::2].reshape(-1)
        order = np.empty(total, dtype=np.int64)
        order[0::2] = lane1
        order[1::2] = lane2
        return order

    def batch_rng(self, batch_index):
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(1, batch_index))
        )

    def suggested_batch(self):
        """Chain frames per batch, bounded by working-set size.

        The budget may depend on the modulation but not on the demapper, so
        a memoryless and a trellis run with the same seed draw identical
        noise and data and can be compared frame by frame.
        """
        budget = 6_000_000 if self.mod.bits_per_symbol > 1 else 24_000_000
        return max(1, min(4096, budget // max(self.coded_bits, 1)))

    # -- pipeline ----------------------------------------------------------

    def run_batch(self, n_frames, batch_index):
        """Simulate n_frames chain frames; returns per-codeword tallies."""
        cfg = self.cfg
        rng = self.batch_rng(batch_index)
        F = n_frames
        if cfg.info_words == "zeros":
            tx = np.zeros((F, self.frame_bits), dtype=np.uint8)
        else:
            tx = rng.integers(0, 2, size=(F, self.frame_bits), dtype=np.uint8)

        stream = self.sym_il.apply(tx) if self.sym_il is not None else tx
        if self.pad_bits:
            stream = np.concatenate(
                [stream, np.zeros((F, self.pad_bits), dtype=np.uint8)], axis=1
            )
        coded = self._inner_encode(stream)

        if cfg.scramble_on:
            scr = rng.integers(0, 2, size=coded.shape, dtype=np.uint8)
            coded = coded ^ scr
        else:
            scr = None
        if self.mod_pad:
            coded = np.concatenate(
                [coded, np.zeros((F, self.mod_pad), dtype=np.uint8)], axis=1
            )
        if self.mlc_perm is not None:
            coded = coded[:, self.mlc_perm]
        if self.bit_il is not None:
            coded = self.bit_il.apply(coded)

        x = modulate(coded, self.mod)
        y = transmit(x, self.chan, rng)
        if self.use_trellis:
            llr = bcjr_llr(y, self.chan, self.mod)
        else:
            llr = llr_memoryless(y, self.mod, self.chan.sigma2)
        llr = llr.reshape(F, -1)

        if self.bit_il is not None:
            llr = self.bit_il.invert(llr)
        if self.mlc_perm is not None:
            inv = np.argsort(self.mlc_perm)
            llr = llr[:, inv]
        if self.mod_pad:
            llr = llr[:, : self.coded_bits]
        if scr is not None:
            llr = llr * (1.0 - 2.0 * scr.astype(float))
        if cfg.quantizer is not None:
            llr = cfg.quantizer(llr)

        decided = self._inner_decode(llr, rng)
        decided = decided[:, : self.frame_bits]
        if self.sym_il is not None:
            decided = self.sym_il.invert(decided)

        return self._tally(tx, decided)

    def _inner_encode(self, stream):
        F = stream.shape[0]
        inner = self.cfg.inner
        if isinstance(inner, InnerNone):
            return stream
        blocks = stream.reshape(F, self.n_blocks, self.k_in)
        if isinstance(inner, InnerSpc):
            coded = spc_encode(blocks)
        elif isinstance(inner, InnerProduct):
            coded = product_encode(
                blocks.reshape(F, self.n_blocks, inner.size, inner.size), inner.size
            )
        elif isinstance(inner, InnerHamming):
            coded = self.hamming.encode(blocks)
        else:
            raise TypeError(f"unknown inner code {inner!r}")
        return coded.reshape(F, self.coded_bits)

    def _inner_decode(self, llr, rng):
        F = llr.shape[0]
        inner = self.cfg.inner
        if isinstance(inner, InnerNone):
            return (llr < 0).astype(np.uint8)
        blocks = llr.reshape(F * self.n_blocks, self.n_in)
        if isinstance(inner, InnerSpc):
            out = wagner_decode(blocks, rng=rng).systematic
        elif isinstance(inner, InnerProduct):
            s = inner.size
            info, _, _ = product_decode(
                blocks.reshape(-1, s + 1, s + 1), max_iters=inner.iters, size=s
            )
            out = info.reshape(-1, self.k_in)
        elif isinstance(inner, InnerHamming):
            cand, _ = self.hamming.chase_decode(blocks, inner.chase_bits)
            out = self.hamming.extract_info(cand)
        else:
            raise TypeError(f"unknown inner code {inner!r}")
        return out.reshape(F, self.n_blocks * self.k_in)

    def _tally(self, tx, decided):
        rsp = self.rsp
        F = tx.shape[0]
        diff = (tx != decided).reshape(F, self.depth, rsp.n_symbols, rsp.bits_per_symbol)
        sym_err = diff.any(axis=-1).sum(axis=-1)  # (F, depth)
        failed = sym_err > rsp.t
        # bounded-distance decoding clears every bit of a correctable frame;
        # failed frames keep their residual errors in the information part
        info_err = diff[:, :, : rsp.k_symbols, :].sum(axis=(-1, -2))
        info_err = np.where(failed, info_err, 0)
        return {
            "frames": F * self.depth,
            "frame_errors": int(failed.sum()),
            "bit_errors": int(info_err.sum()),
            "bit_errors_sq": float((info_err.astype(float) ** 2).sum()),
        }


def run_point(cfg, ebno_db, stop=StoppingRule(), seed=0):
    """Simulate one operating point; frames are counted per outer codeword."""
    rate = cfg.rate
    snr = snr_from_ebno_db(ebno_db, rate)
    sigma2 = (1.0 + cfg.alpha**2) / snr
    eng = _ChainEngine(cfg, sigma2, seed)

    frames = frame_errors = bit_errors = 0
    bit_errors_sq = 0.0
    t0 = time.monotonic()
    batch_index = 0
    size = min(256, eng.suggested_batch())
    while not stop.done(frames, frame_errors, time.monotonic() - t0):
        if stop.max_frames is not None:
            remaining = stop.max_frames - frames
            size = min(size, max(1, -(-remaining // eng.depth)))
        got = eng.run_batch(size, batch_index)
        frames += got["frames"]
        frame_errors += got["frame_errors"]
        bit_errors += got["bit_errors"]
        bit_errors_sq += got["bit_errors_sq"]
        batch_index += 1
        size = min(size * 2, eng.suggested_batch())

    fer = frame_errors / frames if frames else math.nan
    k_bits = cfg.rsp.k_bits
    ber = bit_errors / (frames * k_bits) if frames else math.nan
    ci_lo = ci_hi = None
    if frame_errors >= 10:
        half = 1.96 * math.sqrt(max(fer * (1.0 - fer), 0.0) / frames)
        ci_lo, ci_hi = max(fer - half, 0.0), min(fer + half, 1.0)
    return ErrorRateResult(
        ebno_db=float(ebno_db),
        snr_db=float(10.0 * math.log10(snr)),
        fer=fer,
        ber=ber,
        fer_ci_lo=ci_lo,
        fer_ci_hi=ci_hi,
        frames=frames,
        frame_errors=frame_errors,
        bit_errors=bit_errors,
        method=cfg.method_tag(),
        seed=seed,
        info_bits_per_frame=k_bits,
        bit_errors_sq=bit_errors_sq,
    )


def sweep(cfg, ebno_db_list, stop=StoppingRule(), seed=0):
    """run_point over a list of Eb/N0 values with per-point derived seeds."""
    out = []
    for i, ebno in enumerate(ebno_db_list):
        out.append(run_point(cfg, ebno, stop=stop, seed=(seed, i)))
    return out


# ---------------------------------------------------------------------------
# Inner-code-only measurements (no outer code), used for decoder comparisons


@dataclass
class InnerOnlyResult:
    sigma2: float
    codewords: int
    frame_errors: int
    bit_errors: int
    info_bits: int

    @property
    def fer(self):
        return self.frame_errors / self.codewords

    @property
    def ber(self):
        return self.bit_errors / self.info_bits

    def fer_std_error(self):
        return math.sqrt(max(self.fer * (1 - self.fer), 0.0) / self.codewords)


def run_inner_only(
    inner, sigma2, seed=0, min_bit_errors=0, min_frame_errors=0, max_codewords=10_000_000
):
    """BPSK AWGN performance of one inner decoder in isolation."""
    if isinstance(inner, InnerNone):
        raise ValueError("inner-only measurement needs an inner code")
    k, n = inner.k, inner.n
    hamming = ExtendedHamming(inner.r) if isinstance(inner, InnerHamming) else None
    batch = max(1, min(200_000, 4_000_000 // n))
    done_cw = fe = be = 0
    idx = 0
    while done_cw < max_codewords:
        if (min_bit_errors == 0 or be >= min_bit_errors) and (
            min_frame_errors == 0 or fe >= min_frame_errors
        ):
            if min_bit_errors or min_frame_errors:
                break
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(2, idx)))
        idx += 1
        m = min(batch, max_codewords - done_cw)
        info = rng.integers(0, 2, size=(m, k), dtype=np.uint8)
        if isinstance(inner, InnerSpc):
            coded = spc_encode(info)
        elif isinstance(inner, InnerProduct):
            s = inner.size
            coded = product_encode(info.reshape(m, s, s), s).reshape(m, n)
        else:
            coded = hamming.encode(info)
        x = 1.0 - 2.0 * coded.astype(float)
        y = x + rng.normal(scale=math.sqrt(sigma2), size=x.shape)
        llr = 2.0 * y / sigma2
        if isinstance(inner, InnerSpc):
            out = wagner_decode(llr, rng=rng).systematic
        elif isinstance(inner, InnerProduct):
            s = inner.size
            got, _, _ = product_decode(llr.reshape(m, s + 1, s + 1), inner.iters, s)
            out = got.reshape(m, k)
        else:
            cand, _ = hamming.chase_decode(llr, inner.chase_bits)
            out = hamming.extract_info(cand)
        diff = out != info
        be += int(diff.sum())
        fe += int(diff.any(axis=1).sum())
        done_cw += m
    return InnerOnlyResult(
        sigma2=sigma2, codewords=done_cw, frame_errors=fe, bit_errors=be, info_bits=done_cw * k
    )
