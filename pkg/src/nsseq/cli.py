"""Command-line entry point: ``nsseq <subcommand> ...``.

Exit status is 0 on success, 1 when input fails validation (bad flags, bad
parameters, an invalid sequence, a window that is not present) and 2 on an
internal or resource error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import enumeration, oracle
from .enumeration import CountTable, rate_table, rates_to_json, rates_to_tsv
from .generators import (
    SequenceBuffer,
    generate_lex,
    generate_lex_acyclic,
    generate_merge,
    generate_merge_v,
    read_sequence,
    verify,
)
from .locate import NotPresent, build_index, locate, locate_lex_stream
from .syncsim import ChannelConfig, simulate
from .vset import LayoutInfeasible, key_to_bits, vset_layout


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _check_ns(n: int, s: int) -> None:
    if n < 1 or s < 1:
        raise UsageError(f"need n >= 1 and s >= 1, got n={n}, s={s}")


def _write_sequence(seq: SequenceBuffer, fmt: str) -> None:
    if fmt == "packed":
        sys.stdout.flush()
        sys.stdout.buffer.write(seq.to_packed())
        sys.stdout.buffer.flush()
    else:
        print(seq)


def _read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def cmd_generate(args) -> int:
    _check_ns(args.n, args.s)
    if args.algo == "lex":
        seq = generate_lex_acyclic(args.n, args.s) if args.acyclic else generate_lex(args.n, args.s)
    elif args.acyclic:
        raise UsageError("--acyclic is only available with --algo lex")
    elif args.algo == "merge":
        seq = generate_merge(args.n, args.s)
    else:
        spec = vset_layout(args.n, args.s, args.k)
        key = args.key if args.key is not None else "0" * math.ceil(spec.K / 4)
        seq = generate_merge_v(args.n, args.s, args.k, key_to_bits(key, spec.K))
    _write_sequence(seq, args.format)
    return 0


def cmd_verify(args) -> int:
    _check_ns(args.n, args.s)
    bits = read_sequence(_read_input(args.input))
    report = verify(SequenceBuffer(bits, args.n, args.s, cyclic=args.cyclic))
    print(json.dumps(report.as_dict()))
    return 0 if report.valid else 1


def cmd_locate(args) -> int:
    _check_ns(args.n, args.s)
    if args.algo == "stream":
        if args.seq is not None:
            raise UsageError("--seq is only used with --algo index")
        pos = locate_lex_stream(args.n, args.s, args.window)
    else:
        if args.seq is not None:
            seq = SequenceBuffer(read_sequence(_read_input(args.seq)), args.n, args.s)
        else:
            seq = generate_lex(args.n, args.s)
        pos = locate(build_index(seq), args.window)
    print(pos)
    return 0


def cmd_enumerate(args) -> int:
    if args.n_max < 1 or args.s_max < 1:
        raise UsageError("--n-max and --s-max must be >= 1")
    table = CountTable.build(args.n_max, args.s_max)
    sys.stdout.write(table.to_tsv() if args.format == "tsv" else table.to_json() + "\n")
    return 0


def cmd_rates(args) -> int:
    if args.s_max < 1:
        raise UsageError("--s-max must be >= 1")
    entries = rate_table(args.s_max)
    sys.stdout.write(rates_to_tsv(entries) if args.format == "tsv" else rates_to_json(entries) + "\n")
    return 0


def cmd_oracle(args) -> int:
    _check_ns(args.n, args.s)
    ell = enumeration.count_necklace_words(args.n, args.s)
    result = {
        "n": args.n,
        "s": args.s,
        "ell": ell,
        "max_cycle_words": oracle.max_cycle_words(args.n, args.s),
        "max_path_words": oracle.max_path_words(args.n, args.s),
    }
    if args.n <= 5:
        result["exact_cover"] = oracle.check_exact_cover(args.n, args.s)
    print(json.dumps(result))
    return 0


def cmd_simulate(args) -> int:
    _check_ns(args.n, args.s)
    cfg = ChannelConfig(flip_prob=args.flip_prob, trials=args.trials, seed=args.seed)
    report = simulate(generate_lex(args.n, args.s), cfg)
    print(report.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nsseq", description="Maximum-length run-length-limited de Bruijn sequences")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="print a maximum-length (n,s)-sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--algo", choices=["merge", "merge-v", "lex"], default="lex")
    p.add_argument("--k", type=int, default=2, help="number of stored words for merge-v")
    p.add_argument("--key", help="hex key of ceil(K/4) digits for merge-v (default all zero)")
    p.add_argument("--acyclic", action="store_true")
    p.add_argument("--format", choices=["bits", "packed"], default="bits")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a sequence read from stdin or --input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("locate", help="position of a window")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--algo", choices=["stream", "index"], default="stream")
    p.add_argument("--seq", help="sequence file for --algo index (default: the lex sequence)")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("enumerate", help="table of ell(n,s) and h(n,s)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("rates", help="asymptotic rate per s")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("oracle", help="exhaustive longest cycle/path search (n <= 6)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", help="single-window acquisition on the lex sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--flip-prob", type=float, default=0.0)
    p.set_defaults(func=cmd_simulate)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError, LayoutInfeasible, NotPresent) as exc:
        # argparse's own --help exit is not routed here
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        enumeration.EnumerationLimitError,
        oracle.SearchLimitError,
        enumeration.CountOverflowError,
        MemoryError,
        OSError,
    ) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
