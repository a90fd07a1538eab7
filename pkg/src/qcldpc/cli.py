"""Command line front end: encode, decode, simulate, bench, matrix.

Exit codes: 0 success, 1 usage error, 2 I/O or file-content error,
3 unsupported code selection. QCLDPC_WORKERS overrides the worker default.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .chansim import run_throughput_bench, run_waterfall
from .codebook import (expand, export_alist, format_model_matrix_text,
                       get_model_matrix, parse_rate, parse_standard,
                       validate_structure)
from .decoder import (Arithmetic, DecoderConfig, decode_block, read_llr_file,
                      state_size_report)
from .encoder import EncoderVariant, encode, make_plan, pack_bits
from .errors import (ArithmeticMismatch, BadZ, CorruptFile, MalformedHb,
                     SizeMismatch, UnsupportedCode, UnsupportedZ)


class _UsageExit(Exception):
    def __init__(self, status):
        self.status = status


class _Parser(argparse.ArgumentParser):
    """argparse defaults to status 2 on bad flags; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageExit(1)

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _UsageExit(status)


def _default_workers() -> int:
    env = os.environ.get("QCLDPC_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--std", required=True, help="wifi or wimax")
    p.add_argument("--n", required=True, type=int, help="codeword length in bits")
    p.add_argument("--rate", required=True,
                   help="1/2, 2/3, 3/4, 5/6; WiMAX variants 2/3A, 2/3B, 3/4A, 3/4B")


def _add_decoder_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iters", type=int, default=10, help="max super-iterations")
    p.add_argument("--arith", choices=["float32", "fixed16"], default=None)
    p.add_argument("--qb", type=int, default=10, help="quantizer magnitude bits")
    p.add_argument("--no-early-term", action="store_true",
                   help="always run the full iteration budget")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--pool", choices=["simple", "mtx"], default="simple")


def build_parser() -> _Parser:
    top = _Parser(prog="qcldpc", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="info bits -> codewords")
    _add_code_flags(p)
    p.add_argument("--in", dest="inp", required=True, help="info bit file")
    p.add_argument("--out", required=True, help="codeword file")
    p.add_argument("--packed", action="store_true",
                   help="packed MSB-first bytes in and out (default: byte per bit)")
    p.add_argument("--wb", type=int, choices=[8, 16, 32], default=None,
                   help="packed working word width")

    p = sub.add_parser("decode", help="LLR file -> hard bits + records")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--in", dest="inp", required=True, help="LLR file")
    p.add_argument("--out", required=True,
                   help="per codeword: N/8 packed bytes, iterations u8, converged u8")

    p = sub.add_parser("simulate", help="Monte-Carlo waterfall -> CSV")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--snr", required=True,
                   help="Eb/N0 grid in dB: start:step:stop or a single value")
    p.add_argument("--min-errors", type=int, default=10000)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--min-frames", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")

    p = sub.add_parser("bench", help="decoder throughput report")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--frames", type=int, default=1000)
    p.add_argument("--snr", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("matrix", help="print model matrix and structure report")
    _add_code_flags(p)
    p.add_argument("--alist", default=None, help="also write alist to this path")
    p.add_argument("--memory", action="store_true",
                   help="print decoder working-set bytes")
    p.add_argument("--arith", choices=["float32", "fixed16"], default="fixed16")
    return top


def _parse_snr_grid(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"--snr grid must be start:step:stop, got {text!r}")
        start, step, stop = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("--snr step must be positive")
        out = []
        v = start
        while v <= stop + 1e-9:
            out.append(round(v, 9))
            v = start + step * (len(out))
        return out
    return [float(text)]


def _model_matrix(args):
    std = parse_standard(args.std)
    return get_model_matrix(std, args.n, parse_rate(args.rate, std))


def _decoder_config(args, arith: Arithmetic) -> DecoderConfig:
    return DecoderConfig(max_iterations=args.iters, arithmetic=arith,
                         q_b=args.qb, early_termination=not args.no_early_term)


def _cmd_encode(args) -> int:
    mm = _model_matrix(args)
    variant = EncoderVariant.Packed if args.packed else EncoderVariant.Array
    plan = make_plan(mm, variant, word_bits=args.wb)
    raw = np.fromfile(args.inp, dtype=np.uint8)
    if args.packed:
        kb = mm.k // 8
        if mm.k % 8 or raw.size == 0 or raw.size % kb:
            raise SizeMismatch(
                f"{args.inp}: {raw.size} bytes is not a multiple of K/8={kb}")
        out = encode(plan, raw.reshape(-1, kb))
    else:
        if raw.size == 0 or raw.size % mm.k:
            raise SizeMismatch(
                f"{args.inp}: {raw.size} bytes is not a multiple of K={mm.k}")
        if not np.isin(raw, (0, 1)).all():
            raise CorruptFile(f"{args.inp}: array format wants byte values 0/1")
        out = encode(plan, raw.reshape(-1, mm.k))
    out.tofile(args.out)
    return 0


def _cmd_decode(args) -> int:
    mm = _model_matrix(args)
    h = expand(mm)
    block = read_llr_file(args.inp)
    if block.values.shape[1] != h.n:
        raise CorruptFile(
            f"{args.inp}: N={block.values.shape[1]} but code has N={h.n}")
    if args.arith is not None and args.arith != block.arithmetic.value:
        raise CorruptFile(
            f"{args.inp}: holds {block.arithmetic.value}, --arith says {args.arith}")
    cfg = _decoder_config(args, block.arithmetic)
    results = decode_block(h, block, cfg, workers=args.workers, pool=args.pool)
    with open(args.out, "wb") as f:
        for r in results:
            f.write(pack_bits(r.hard_bits).tobytes())
            f.write(bytes([min(r.iterations, 255), 1 if r.converged else 0]))
    return 0


def _cmd_simulate(args) -> int:
    mm = _model_matrix(args)
    arith = Arithmetic.Fixed16 if args.arith == "fixed16" else Arithmetic.Float32
    cfg = _decoder_config(args, arith)
    table = run_waterfall(mm, cfg, _parse_snr_grid(args.snr),
                          min_errors=args.min_errors, max_frames=args.max_frames,
                          seed=args.seed, workers=args.workers,
                          min_frames=args.min_frames, pool=args.pool)
    csv = table.to_csv()
    if args.out:
        with open(args.out, "w") as f:
            f.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def _cmd_bench(args) -> int:
    mm = _model_matrix(args)
    arith = Arithmetic.Fixed16 if args.arith == "fixed16" else Arithmetic.Float32
    cfg = _decoder_config(args, arith)
    report = run_throughput_bench(mm, cfg, workers=args.workers, pool=args.pool,
                                  frames=args.frames, seed=args.seed,
                                  ebn0_db=args.snr)
    print(report.CSV_HEADER)
    print(report.csv_line())
    print(report.summary())
    return 0


def _cmd_matrix(args) -> int:
    mm = _model_matrix(args)
    sys.stdout.write(format_model_matrix_text(mm))
    report = validate_structure(mm)
    if report.ok:
        print("structure: OK")
    else:
        print("structure: FAILED")
        for msg in report.messages:
            print(f"  {msg}")
    if args.memory:
        arith = Arithmetic.Fixed16 if args.arith == "fixed16" else Arithmetic.Float32
        sizes = state_size_report(expand(mm), arith)
        for key, val in sizes.items():
            print(f"{key}: {val} B")
    if args.alist:
        with open(args.alist, "w") as f:
            f.write(export_alist(expand(mm)))
    return 0


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "simulate": _cmd_simulate,
    "bench": _cmd_bench,
    "matrix": _cmd_matrix,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as e:
        return e.status
    try:
        return _COMMANDS[args.command](args)
    except (UnsupportedCode, BadZ, UnsupportedZ, MalformedHb) as e:
        print(f"qcldpc: unsupported code: {e}", file=sys.stderr)
        return 3
    except (OSError, CorruptFile, SizeMismatch, ArithmeticMismatch) as e:
        print(f"qcldpc: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"qcldpc: error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
