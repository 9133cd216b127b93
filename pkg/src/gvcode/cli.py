"""Command-line interface: ``gvcode {params,encode,decode,rle,rle-decode,analyze}``."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import analysis
from .codec import CodeParams, compute_params
from .container import ContainerError, decode_container, encode_container, rle_decode, rle_encode

GOLDEN_Q = (3.0 - math.sqrt(5.0)) / 2.0

TABLE_COLUMNS = ("p", "m", "l", "h", "exact", "asymptotic", "entropy", "redundancy")


class CliError(Exception):
    pass


def _fmt(x) -> str:
    # repr gives the shortest string that round-trips, with '.' always
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _read_input(path, binary):
    if path in (None, "-"):
        return sys.stdin.buffer.read() if binary else sys.stdin.read()
    with open(path, "rb" if binary else "r") as fh:
        return fh.read()


def _write_output(path, data):
    if isinstance(data, str):
        data = data.encode("ascii")
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def parse_symbols(text: str) -> list[int]:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        token = line.strip()
        if not token.isdigit() or not token.isascii():
            raise CliError(f"line {lineno}: expected a nonnegative decimal integer, got {line!r}")
        values.append(int(token))
    return values


def cmd_params(args):
    params = compute_params(args.p)
    p = args.p
    keep = math.exp((params.m - 1) * math.log1p(-p))
    lines = [
        f"p={_fmt(p)}",
        f"m={params.m}",
        f"l={params.l}",
        f"h={params.h}",
        f"q={_fmt(params.q)}",
        f"short_codewords={params.short_count}",
        f"long_codewords={2 * params.h}",
        f"check q>=(3-sqrt5)/2: {'ok' if params.q >= GOLDEN_Q else 'FAIL'}",
        f"check (1-p)^(m-1)>1/2: {'ok' if keep > 0.5 else 'FAIL'} ({_fmt(keep)})",
        f"check |m-log(2)/p|<=2: {'ok' if abs(params.m - math.log(2) / p) <= 2 else 'FAIL'}",
    ]
    _write_output(None, "\n".join(lines) + "\n")


def cmd_encode(args):
    if args.m is not None:
        params = CodeParams.from_m(args.m)
    else:
        params = compute_params(args.p)
    values = parse_symbols(_read_input(args.input, binary=False))
    _write_output(args.output, encode_container(values, params))


def cmd_decode(args):
    _, values = decode_container(_read_input(args.input, binary=True))
    _write_output(args.output, "".join(f"{k}\n" for k in values))


def cmd_rle(args):
    p = args.p if args.p == "auto" else _probability(args.p)
    blob, stats = rle_encode(_read_input(args.input, binary=True), p)
    _write_output(args.output, blob)
    sys.stderr.write(stats.report())


def cmd_rle_decode(args):
    _write_output(args.output, rle_decode(_read_input(args.input, binary=True)))


def cmd_explen(args):
    row = analysis.analyze(args.p)
    lines = [
        f"p={_fmt(row.p)}",
        f"m={row.m}",
        f"exact={_fmt(row.exact_len)}",
        f"asymptotic={_fmt(row.asymptotic_len)}",
        f"entropy={_fmt(row.entropy)}",
        f"redundancy={_fmt(row.redundancy)}",
    ]
    _write_output(None, "\n".join(lines) + "\n")


def p_grid(p_min, p_max, points, log):
    if not (0.0 < p_min <= p_max < 1.0):
        raise CliError(f"need 0 < p-min <= p-max < 1, got [{p_min}, {p_max}]")
    if points < 1:
        raise CliError("--points must be at least 1")
    if points == 1:
        return [p_min]
    if log:
        grid = np.geomspace(p_min, p_max, points)
    else:
        grid = np.linspace(p_min, p_max, points)
    grid[0], grid[-1] = p_min, p_max
    return [float(x) for x in grid]


def cmd_table(args):
    out = [",".join(TABLE_COLUMNS)]
    for p in p_grid(args.p_min, args.p_max, args.points, args.log):
        row = analysis.analyze(p)
        fields = (p, row.m, row.l, row.h, row.exact_len, row.asymptotic_len, row.entropy, row.redundancy)
        out.append(",".join(_fmt(x) for x in fields))
    _write_output(None, "\n".join(out) + "\n")


def cmd_fz(args):
    if args.samples < 1:
        raise CliError("--samples must be at least 1")
    out = ["z,f"]
    for i in range(args.samples):
        z = i / args.samples
        out.append(f"{_fmt(z)},{_fmt(analysis.fluctuation(z))}")
    _write_output(None, "\n".join(out) + "\n")


def cmd_constants(args):
    consts = analysis.compute_constants()
    out = ["name,value"]
    out += [f"{name},{_fmt(value)}" for name, value in consts.as_dict().items()]
    _write_output(None, "\n".join(out) + "\n")


def _probability(text):
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < p < 1.0:
        raise argparse.ArgumentTypeError(f"p must lie strictly between 0 and 1, got {text}")
    return p


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _rle_p(text):
    return text if text == "auto" else _probability(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gvcode",
        description="Optimal run-length codes for geometric sources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="show code parameters for p")
    sp.add_argument("--p", type=_probability, required=True)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("encode", help="encode integers (one per line) into a container")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=_probability)
    group.add_argument("--m", type=_positive_int)
    sp.add_argument("-i", "--input", help="text input (default stdin)")
    sp.add_argument("-o", "--output", help="container output (default stdout)")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode a container back to integers")
    sp.add_argument("-i", "--input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("rle", help="run-length encode the bits of a file")
    sp.add_argument("--p", type=_rle_p, default="auto", help="probability of a 1 bit, or 'auto'")
    sp.add_argument("-i", "--input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_rle)

    sp = sub.add_parser("rle-decode", help="reconstruct the original bytes of an rle container")
    sp.add_argument("-i", "--input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_rle_decode)

    an = sub.add_parser("analyze", help="expected-length analysis as CSV/text")
    asub = an.add_subparsers(dest="analysis", required=True)

    sp = asub.add_parser("explen", help="exact, asymptotic and entropy values for one p")
    sp.add_argument("--p", type=_probability, required=True)
    sp.set_defaults(func=cmd_explen)

    sp = asub.add_parser("table", help="CSV table over a grid of p")
    sp.add_argument("--p-min", type=_probability, required=True)
    sp.add_argument("--p-max", type=_probability, required=True)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--log", action="store_true", help="geometric spacing")
    sp.set_defaults(func=cmd_table)

    sp = asub.add_parser("fz", help="CSV samples of the fluctuation function on [0, 1)")
    sp.add_argument("--samples", type=int, default=1000)
    sp.set_defaults(func=cmd_fz)

    sp = asub.add_parser("constants", help="average, extrema and redundancy constants")
    sp.set_defaults(func=cmd_constants)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, ContainerError, ValueError, OSError) as exc:
        sys.stderr.write(f"gvcode: error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
