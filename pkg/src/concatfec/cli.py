"""Command line front end.

Subcommands: analyze (closed-form rates over an Eb/N0 grid), simulate
(Monte Carlo over the same grid and schema), rate-curve (threshold Eb/N0
per inner code size), complexity (decoder operation counts), describe
(resolved configuration echo).

Result tables share one column set so analytic and simulated series join
on ebno_db. CSV output carries the resolved run configuration as leading
`#` comment lines; JSON mirrors the same rows and metadata.
"""

import argparse
import configparser
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, replace

from .altcodes import (
    hamming_chase_op_counts,
    hamming_hdd_op_counts,
    wagner_op_counts,
)
from .analytic import (
    SpcAnalysis,
    burst_profile,
    chain_rate,
    chain_rates_iid_bits,
    chain_rates_no_interleaver,
    chain_rates_uniform_interleaver,
    ebno_threshold,
    kp4_input_ber_threshold,
    optimize_quantizer_step,
    quantized_profile,
    snr_from_ebno_db,
    spc_chain_rate,
)
from .channel import MODULATIONS, QuantizerSpec, hard_ber_bpsk
from .multilevel import alternating_profile, mlc_profile
from .rs import KP4, RsParams
from .simulate import (
    CodeChainConfig,
    InnerHamming,
    InnerNone,
    InnerProduct,
    InnerSpc,
    StoppingRule,
    run_point,
)

RESULT_COLUMNS = [
    "ebno_db",
    "snr_db",
    "fer",
    "ber",
    "fer_ci_lo",
    "fer_ci_hi",
    "frames",
    "frame_errors",
    "bit_errors",
    "method",
    "seed",
]

RATE_CURVE_COLUMNS = ["mode", "n_spc", "rate", "ebno_db", "snr_db", "target", "metric"]
COMPLEXITY_COLUMNS = ["decoder", "xor", "and", "real_add"]


class CliError(Exception):
    """Rejected configuration or request; the message is the diagnostic."""


# ---------------------------------------------------------------------------
# Configuration resolution: defaults < config file < command line flags

_CHAIN_DEFAULTS = {
    "inner": "spc",
    "n_spc": "11",
    "product_size": "20",
    "product_iters": "2",
    "chase_bits": "0",
    "modulation": "bpsk",
    "mapping": "alternating",
    "interleaver": "none",
    "depth": "1",
    "alpha": "0.0",
    "demapper": "auto",
    "scramble": "auto",
    "info_words": "random",
}
_OUTER_DEFAULTS = {"n_symbols": "544", "k_symbols": "514", "bits_per_symbol": "10"}
_QUANT_DEFAULTS = {"bits": "", "step": "auto"}

# (flag attribute, section dict name, key)
_FLAG_MAP = [
    ("inner", "chain", "inner"),
    ("n_spc", "chain", "n_spc"),
    ("product_size", "chain", "product_size"),
    ("product_iters", "chain", "product_iters"),
    ("chase_bits", "chain", "chase_bits"),
    ("modulation", "chain", "modulation"),
    ("mapping", "chain", "mapping"),
    ("interleaver", "chain", "interleaver"),
    ("depth", "chain", "depth"),
    ("alpha", "chain", "alpha"),
    ("demapper", "chain", "demapper"),
    ("scramble", "chain", "scramble"),
    ("info_words", "chain", "info_words"),
    ("rs_n", "outer", "n_symbols"),
    ("rs_k", "outer", "k_symbols"),
    ("rs_m", "outer", "bits_per_symbol"),
    ("quantizer_bits", "quantizer", "bits"),
    ("quantizer_step", "quantizer", "step"),
]


@dataclass
class ResolvedSpec:
    cfg: CodeChainConfig
    quantizer_bits: int | None
    quantizer_step: str  # "auto" or a float literal
    sections: dict  # {"chain": {...}, "outer": {...}, "quantizer": {...}}

    def meta(self):
        out = {}
        for sec in ("chain", "outer", "quantizer"):
            vals = self.sections.get(sec, {})
            if sec == "quantizer" and self.quantizer_bits is None:
                continue
            for key, val in vals.items():
                out[f"{sec}.{key}"] = val
        return out

    def quantizer_for(self, sigma2):
        if self.quantizer_bits is None:
            return None
        if self.quantizer_step == "auto":
            return optimize_quantizer_step(self.cfg.inner.n, sigma2, self.quantizer_bits)
        return QuantizerSpec(bits=self.quantizer_bits, step=float(self.quantizer_step))

    def point_config(self, ebno_db):
        """Configuration with the quantizer bound for one operating point."""
        if self.quantizer_bits is None:
            return self.cfg
        snr = snr_from_ebno_db(ebno_db, self.cfg.rate)
        sigma2 = (1.0 + self.cfg.alpha**2) / snr
        return replace(self.cfg, quantizer=self.quantizer_for(sigma2))


def _as_int(name, raw):
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{name} must be an integer, got {raw!r}") from None


def _as_float(name, raw):
    try:
        return float(raw)
    except ValueError:
        raise CliError(f"{name} must be a number, got {raw!r}") from None


def resolve_spec(args):
    chain = dict(_CHAIN_DEFAULTS)
    outer = dict(_OUTER_DEFAULTS)
    quant = dict(_QUANT_DEFAULTS)
    sections = {"chain": chain, "outer": outer, "quantizer": quant}

    config_path = getattr(args, "config", None)
    if config_path:
        cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            with open(config_path) as f:
                cp.read_file(f)
        except OSError as e:
            raise CliError(f"cannot read config file: {e}") from None
        except configparser.Error as e:
            raise CliError(f"malformed config file: {e}") from None
        for sec, store in sections.items():
            if cp.has_section(sec):
                for key, val in cp.items(sec):
                    if key not in store:
                        raise CliError(f"unknown config key [{sec}] {key}")
                    store[key] = val.strip()

    for attr, sec, key in _FLAG_MAP:
        val = getattr(args, attr, None)
        if val is not None:
            sections[sec][key] = str(val)

    rsp = RsParams(
        n_symbols=_as_int("outer n_symbols", outer["n_symbols"]),
        k_symbols=_as_int("outer k_symbols", outer["k_symbols"]),
        bits_per_symbol=_as_int("outer bits_per_symbol", outer["bits_per_symbol"]),
    )
    kind = chain["inner"].lower()
    if kind == "spc":
        inner = InnerSpc(_as_int("n_spc", chain["n_spc"]))
        if inner.n < 3:
            raise CliError("SPC length must be at least 3")
    elif kind == "product":
        inner = InnerProduct(
            size=_as_int("product_size", chain["product_size"]),
            iters=_as_int("product_iters", chain["product_iters"]),
        )
    elif kind == "hamming":
        inner = InnerHamming(r=7, chase_bits=_as_int("chase_bits", chain["chase_bits"]))
    elif kind == "none":
        inner = InnerNone()
    else:
        raise CliError(f"unknown inner code {chain['inner']!r}")

    qbits = None
    if quant["bits"]:
        qbits = _as_int("quantizer bits", quant["bits"])
        if qbits < 2:
            raise CliError("quantizer needs at least 2 bits")
        if not isinstance(inner, InnerSpc):
            raise CliError("LLR quantization is modeled for the SPC inner code")
        if quant["step"] != "auto":
            if _as_float("quantizer step", quant["step"]) <= 0:
                raise CliError("quantizer step must be positive")

    cfg = CodeChainConfig(
        rsp=rsp,
        inner=inner,
        modulation=chain["modulation"].lower(),
        mapping=chain["mapping"].lower(),
        interleaver=chain["interleaver"].lower(),
        depth=_as_int("depth", chain["depth"]),
        alpha=_as_float("alpha", chain["alpha"]),
        quantizer=None,
        demapper=chain["demapper"].lower(),
        info_words=chain["info_words"].lower(),
        scramble=chain["scramble"].lower(),
    )
    try:
        cfg.validate()
        if qbits is not None and cfg.modulation != "bpsk":
            raise ValueError("LLR quantization is modeled for BPSK")
    except ValueError as e:
        raise CliError(str(e)) from None
    return ResolvedSpec(cfg=cfg, quantizer_bits=qbits, quantizer_step=quant["step"], sections=sections)


# ---------------------------------------------------------------------------
# Output helpers


def _cell(v):
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def emit(rows, columns, meta, out_path, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        for key in meta:
            buf.write(f"# {key} = {meta[key]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in columns])
        text = buf.getvalue()
    else:
        clean = [{c: row.get(c, None) for c in columns} for row in rows]
        for row in clean:
            for c, v in row.items():
                if v == "":
                    row[c] = None
        text = json.dumps({"spec": meta, "columns": columns, "rows": clean}, indent=2)
        text += "\n"
    if out_path:
        with open(out_path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_float_list(text):
    if text is None:
        return []
    items = [x for x in re.split(r"[,\s]+", text.strip()) if x]
    try:
        return [float(x) for x in items]
    except ValueError:
        raise CliError(f"bad numeric list {text!r}") from None


def _parse_int_list(text):
    return [int(x) for x in _parse_float_list(text)]


# ---------------------------------------------------------------------------
# analyze


def _analytic_chain_rates(spec, ebno_db):
    """(fer, ber-or-None) of the resolved chain at one operating point."""
    cfg = spec.cfg
    inner = cfg.inner
    if cfg.alpha > 0:
        raise CliError(
            "no closed-form model for channels with memory; use the simulate command"
        )
    snr = snr_from_ebno_db(ebno_db, cfg.rate)
    sigma2 = 1.0 / snr

    if isinstance(inner, (InnerProduct, InnerHamming)):
        raise CliError(
            f"no closed-form model for the {inner.tag} inner code; use the simulate command"
        )
    if isinstance(inner, InnerNone):
        if cfg.modulation != "bpsk":
            raise CliError("the uncoded closed form covers BPSK; use the simulate command")
        rr = chain_rates_iid_bits(hard_ber_bpsk(sigma2), cfg.rsp)
        return rr.frame, rr.bit

    try:
        if cfg.modulation == "bpsk":
            if spec.quantizer_bits is not None:
                qspec = spec.quantizer_for(sigma2)
                profile = quantized_profile(inner.n, sigma2, qspec, cfg.rsp)
            else:
                profile = burst_profile(inner.n, sigma2, cfg.rsp)
        else:
            build = mlc_profile if cfg.mapping == "mlc" else alternating_profile
            profile = build(inner.n, sigma2, cfg.rsp)
    except (ValueError, NotImplementedError) as e:
        raise CliError(f"{e}; use the simulate command") from None

    if cfg.interleaver == "symbol":
        cr = chain_rates_uniform_interleaver(profile, cfg.depth, cfg.rsp)
    else:
        # the closed forms treat bit-level interleaving as independent levels
        cr = chain_rates_no_interleaver(profile, cfg.rsp)
    return cr.fer, cr.ber


def cmd_analyze(args):
    spec = resolve_spec(args)
    grid = _parse_float_list(args.ebno_list)
    meta = {"command": "analyze", **spec.meta(), "ebno_list": ",".join(map(str, grid))}
    rows = []
    for ebno in grid:
        fer, ber = _analytic_chain_rates(spec, ebno)
        cfg_pt = spec.point_config(ebno)
        rows.append(
            {
                "ebno_db": float(ebno),
                "snr_db": 10.0 * math.log10(snr_from_ebno_db(ebno, spec.cfg.rate)),
                "fer": fer,
                "ber": ber,
                "fer_ci_lo": "",
                "fer_ci_hi": "",
                "frames": 0,
                "frame_errors": 0,
                "bit_errors": 0,
                "method": cfg_pt.method_tag("analytic"),
                "seed": "",
            }
        )
    emit(rows, RESULT_COLUMNS, meta, args.out, args.format)
    return 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args):
    spec = resolve_spec(args)
    if (
        args.min_frame_errors <= 0
        and args.max_frames is None
        and args.max_seconds is None
    ):
        raise CliError("no stopping rule: set --min-frame-errors, --max-frames, or --max-seconds")
    stop = StoppingRule(
        min_frame_errors=max(args.min_frame_errors, 0),
        max_frames=args.max_frames,
        max_seconds=args.max_seconds,
    )
    grid = _parse_float_list(args.ebno_list)
    meta = {
        "command": "simulate",
        **spec.meta(),
        "ebno_list": ",".join(map(str, grid)),
        "seed": args.seed,
        "min_frame_errors": stop.min_frame_errors,
        "max_frames": stop.max_frames if stop.max_frames is not None else "",
        "max_seconds": stop.max_seconds if stop.max_seconds is not None else "",
    }
    rows = []
    for i, ebno in enumerate(grid):
        cfg_pt = spec.point_config(ebno)
        res = run_point(cfg_pt, ebno, stop=stop, seed=(args.seed, i))
        row = {c: getattr(res, c) for c in RESULT_COLUMNS}
        row["seed"] = args.seed
        if res.fer_ci_lo is None:
            row["fer_ci_lo"] = row["fer_ci_hi"] = ""
        rows.append(row)
    emit(rows, RESULT_COLUMNS, meta, args.out, args.format)
    return 0


# ---------------------------------------------------------------------------
# rate-curve


def cmd_rate_curve(args):
    if args.modulation not in (None, "bpsk"):
        raise CliError("rate-curve thresholds are computed for BPSK")
    target = args.target_ber
    if target <= 0 or target >= 1:
        raise CliError("target BER must be in (0, 1)")
    p_thr = kp4_input_ber_threshold(target)
    lo_db, hi_db = 0.0, 16.0
    meta = {
        "command": "rate-curve",
        "target_ber": target,
        "outer_input_ber_threshold": format(p_thr, ".6g"),
    }
    rows = []

    rate0 = chain_rate(1.0, 1, KP4)
    e0 = ebno_threshold(hard_ber_bpsk, rate0, p_thr, lo_db, hi_db)
    rows.append(
        {
            "mode": "uncoded",
            "n_spc": "",
            "rate": rate0,
            "ebno_db": e0,
            "snr_db": 10.0 * math.log10(snr_from_ebno_db(e0, rate0)),
            "target": target,
            "metric": "end_to_end_ber",
        }
    )
    for n in _parse_int_list(args.n_list):
        if n < 3:
            raise CliError("SPC length must be at least 3")
        rate = spc_chain_rate(n, 1, KP4)

        def inner_ber(sigma2, n=n):
            return SpcAnalysis(n, sigma2).stats().ber

        e = ebno_threshold(inner_ber, rate, p_thr, lo_db, hi_db)
        rows.append(
            {
                "mode": "spc",
                "n_spc": n,
                "rate": rate,
                "ebno_db": e,
                "snr_db": 10.0 * math.log10(snr_from_ebno_db(e, rate)),
                "target": target,
                "metric": "end_to_end_ber",
            }
        )
    emit(rows, RATE_CURVE_COLUMNS, meta, args.out, args.format)
    return 0


# ---------------------------------------------------------------------------
# complexity


def cmd_complexity(args):
    rows = []
    w = wagner_op_counts(16, codewords=8)
    rows.append({"decoder": "spc16-wagner-x8", "xor": w.xor, "and": w.and_, "real_add": w.real_add})
    h = hamming_hdd_op_counts()
    rows.append({"decoder": "hamming-hdd", "xor": h.xor, "and": h.and_, "real_add": h.real_add})
    for nu in _parse_int_list(args.chase_list):
        if nu < 1:
            raise CliError("chase test-pattern exponent must be >= 1")
        c = hamming_chase_op_counts(nu)
        rows.append(
            {
                "decoder": f"hamming-chase-{nu}",
                "xor": c.xor,
                "and": c.and_,
                "real_add": c.real_add,
            }
        )
    emit(rows, COMPLEXITY_COLUMNS, {"command": "complexity"}, args.out, args.format)
    return 0


# ---------------------------------------------------------------------------
# describe


def cmd_describe(args):
    spec = resolve_spec(args)
    cfg = spec.cfg
    lines = []
    for sec in ("chain", "outer", "quantizer"):
        if sec == "quantizer" and spec.quantizer_bits is None:
            continue
        lines.append(f"[{sec}]")
        for key, val in spec.sections[sec].items():
            lines.append(f"{key} = {val}")
        lines.append("")
    inner = cfg.inner
    lines.append("; derived values")
    if not isinstance(inner, InnerNone):
        lines.append(f"; inner code: ({inner.n}, {inner.k}), rate {inner.rate:.6f}")
    lines.append(f"; outer code: ({cfg.rsp.n_symbols}, {cfg.rsp.k_symbols}) over "
                 f"{cfg.rsp.bits_per_symbol}-bit symbols, t = {cfg.rsp.t}")
    lines.append(f"; chain rate: {cfg.rate:.6f} bits/channel use")
    try:
        _analytic_chain_rates(spec, 7.0)
        lines.append("; closed-form analysis: available (analyze command)")
    except CliError as e:
        lines.append(f"; closed-form analysis: unavailable ({e})")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def _add_chain_flags(p):
    p.add_argument("--config", metavar="PATH", help="configuration file (ini sections: chain, outer, quantizer)")
    p.add_argument("--inner", choices=["spc", "product", "hamming", "none"])
    p.add_argument("--n-spc", dest="n_spc", type=int, help="SPC codeword length")
    p.add_argument("--product-size", dest="product_size", type=int)
    p.add_argument("--product-iters", dest="product_iters", type=int)
    p.add_argument("--chase-bits", dest="chase_bits", type=int,
                   help="perturbed least-reliable bits; 0 selects plain syndrome decoding")
    p.add_argument("--modulation", choices=["bpsk", "ask4"])
    p.add_argument("--mapping", choices=["alternating", "mlc"])
    p.add_argument("--interleaver", choices=["none", "symbol", "bit"])
    p.add_argument("--depth", type=int, help="outer codewords behind the symbol interleaver")
    p.add_argument("--alpha", type=float, help="one-tap interference coefficient")
    p.add_argument("--demapper", choices=["auto", "memoryless", "trellis"])
    p.add_argument("--scramble", choices=["auto", "on", "off"])
    p.add_argument("--info-words", dest="info_words", choices=["random", "zeros"])
    p.add_argument("--rs-n", dest="rs_n", type=int, help="outer code length in symbols")
    p.add_argument("--rs-k", dest="rs_k", type=int, help="outer information symbols")
    p.add_argument("--rs-m", dest="rs_m", type=int, help="outer bits per symbol")
    p.add_argument("--quantizer-bits", dest="quantizer_bits", type=int)
    p.add_argument("--quantizer-step", dest="quantizer_step",
                   help="LLR quantizer step, or 'auto' to optimize per point")


def _add_output_flags(p):
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="concatfec",
        description="Analysis and simulation of short inner codes concatenated with an outer symbol code.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="closed-form error rates over an Eb/N0 grid")
    _add_chain_flags(pa)
    pa.add_argument("--ebno-list", dest="ebno_list", help="comma-separated Eb/N0 values in dB")
    _add_output_flags(pa)
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("simulate", help="Monte Carlo error rates over an Eb/N0 grid")
    _add_chain_flags(ps)
    ps.add_argument("--ebno-list", dest="ebno_list", help="comma-separated Eb/N0 values in dB")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--min-frame-errors", dest="min_frame_errors", type=int, default=100)
    ps.add_argument("--max-frames", dest="max_frames", type=int)
    ps.add_argument("--max-seconds", dest="max_seconds", type=float)
    _add_output_flags(ps)
    ps.set_defaults(func=cmd_simulate)

    pr = sub.add_parser("rate-curve", help="threshold Eb/N0 versus rate for the SPC family")
    pr.add_argument("--n-list", dest="n_list",
                    default="6,7,8,9,10,11,12,14,16,21,32,64,128,256,512,1000")
    pr.add_argument("--target-ber", dest="target_ber", type=float, default=1e-13,
                    help="end-to-end BER target defining the threshold")
    pr.add_argument("--modulation", choices=["bpsk"])
    _add_output_flags(pr)
    pr.set_defaults(func=cmd_rate_curve)

    pc = sub.add_parser("complexity", help="decoder operation counts per 120 information bits")
    pc.add_argument("--chase-list", dest="chase_list", default="1,2,3,4,8")
    _add_output_flags(pc)
    pc.set_defaults(func=cmd_complexity)

    pd = sub.add_parser("describe", help="echo the resolved configuration and derived values")
    _add_chain_flags(pd)
    pd.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    pd.set_defaults(func=cmd_describe)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, NotImplementedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
