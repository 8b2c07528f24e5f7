"""Command-line interface.

Subcommands: make-square, validate-square, gen, test, compare.
Exit codes: 0 success, 1 I/O or data error, 2 usage error, 3 battery
failure (a p-value outside [0.001, 0.999]), 4 insufficient input.
Everything is deterministic given the flags; nothing is seeded from the
clock or the OS.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import battery, engine, kiss, latin

DEFAULT_KISS_SEEDS = (12345, 65435, 34221, 12345)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_BATTERY = 3
EXIT_INSUFFICIENT = 4


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgrand",
        description="Quasigroup stream generator, KISS baseline, and randomness battery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-square", help="write a pseudorandom Latin square file")
    p.add_argument("order", type=int, help="square order (>= 2)")
    p.add_argument("--seed", type=int, default=1, help="64-bit construction seed (default 1)")
    p.add_argument("--out", required=True, help="output path (text format)")

    p = sub.add_parser("validate-square", help="check a square file for the Latin property")
    p.add_argument("path", help="square file to validate")

    p = sub.add_parser("gen", help="generate a stream from a square file")
    p.add_argument("square", help="square file (text format)")
    shift = p.add_mutually_exclusive_group(required=True)
    shift.add_argument("--shift-const", type=int, metavar="K",
                       help="fixed right-rotation amount")
    shift.add_argument("--shift-var", type=int, nargs=2, metavar=("X", "Y"),
                       help="rotation read from cell (X,Y) each cycle, 1-based")
    p.add_argument("--length", type=int, required=True,
                   help="output length (bytes, or symbol count with --format symbols)")
    p.add_argument("--format", choices=("bytes", "symbols", "hex"), default="bytes",
                   help="bytes = raw, symbols = 1-based decimals, hex = lowercase pairs (default bytes)")
    p.add_argument("--out", help="output path")
    p.add_argument("--stdout", action="store_true",
                   help="write to stdout (required for raw bytes without --out)")

    p = sub.add_parser("test", help="run the battery on a byte stream")
    p.add_argument("input", nargs="?", help="file of raw bytes to test")
    p.add_argument("--self-gen", metavar="SPEC",
                   help="generator spec to test instead of a file (see compare --help)")
    p.add_argument("--length", type=int, default=10_000_000,
                   help="bytes to generate with --self-gen (default 10000000)")
    p.add_argument("--n-matrices", type=int, help="rank-test matrix count (default: auto)")
    p.add_argument("--n-tuples", type=int, help="permutation-test tuple count (default: auto)")

    p = sub.add_parser(
        "compare",
        help="side-by-side battery run of two generators",
        epilog=(
            "Generator specs: 'kiss' (seeds %s), 'kiss:X,Y,Z,W', "
            "'qg:order=N,seed=S,const=K', 'qg:file=PATH,var=X:Y'."
            % (",".join(str(s) for s in DEFAULT_KISS_SEEDS),)
        ),
    )
    p.add_argument("gen_a", help="first generator spec")
    p.add_argument("gen_b", help="second generator spec")
    p.add_argument("--size", type=int, default=10_000_000,
                   help="bytes generated from each (default 10000000)")
    p.add_argument("--n-matrices", type=int, help="rank-test matrix count (default: auto)")
    p.add_argument("--n-tuples", type=int, help="permutation-test tuple count (default: auto)")
    return parser


def _shift_from_args(args) -> engine.ShiftMode:
    if args.shift_const is not None:
        return engine.ConstantShift(args.shift_const)
    return engine.VariableShift(args.shift_var[0], args.shift_var[1])


def _load_square(path: str) -> latin.LatinSquare:
    with open(path, "r", encoding="ascii") as fh:
        return latin.parse_text(fh.read())


def _parse_genspec(spec: str) -> tuple[str, Callable[[int], bytes]]:
    """Turn a generator spec string into (label, produce(length) -> bytes)."""
    kind, _, rest = spec.partition(":")
    if kind == "kiss":
        if rest:
            try:
                seeds = tuple(int(tok) for tok in rest.split(","))
            except ValueError:
                raise _UsageError(f"bad kiss seeds in {spec!r}") from None
            if len(seeds) != 4:
                raise _UsageError(f"kiss needs 4 seeds, got {len(seeds)}")
        else:
            seeds = DEFAULT_KISS_SEEDS
        return spec, lambda length: kiss.Kiss(*seeds).next_bytes(length)
    if kind == "qg":
        fields: dict[str, str] = {}
        for item in filter(None, rest.split(",")):
            key, eq, value = item.partition("=")
            if not eq:
                raise _UsageError(f"expected key=value, got {item!r} in {spec!r}")
            fields[key] = value
        if "file" in fields:
            if "order" in fields or "seed" in fields:
                raise _UsageError("qg spec takes either file= or order=/seed=, not both")
            square = _load_square(fields.pop("file"))
        elif "order" in fields and "seed" in fields:
            square = latin.random_latin_square(int(fields.pop("order")), int(fields.pop("seed")))
        else:
            raise _UsageError("qg spec needs file=PATH or order=N,seed=S")
        if ("const" in fields) == ("var" in fields):
            raise _UsageError("qg spec needs exactly one of const=K or var=X:Y")
        if "const" in fields:
            shift: engine.ShiftMode = engine.ConstantShift(int(fields.pop("const")))
        else:
            x, _, y = fields.pop("var").partition(":")
            shift = engine.VariableShift(int(x), int(y))
        if fields:
            raise _UsageError(f"unknown qg spec keys: {', '.join(sorted(fields))}")
        config = engine.GeneratorConfig(square, shift, engine.OutputMap.BYTES)
        return spec, lambda length: engine.generate(config, length)
    raise _UsageError(f"unknown generator {kind!r} (expected kiss or qg)")


def _cmd_make_square(args) -> int:
    if args.order < 2:
        print("make-square: order must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    square = latin.random_latin_square(args.order, args.seed)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(latin.to_text(square))
    return EXIT_OK


def _cmd_validate_square(args) -> int:
    try:
        square = _load_square(args.path)
    except latin.LatinSquareError as exc:
        print(f"invalid square: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"valid Latin square of order {square.order}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.length < 0:
        print("gen: --length must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "bytes" and not args.out and not args.stdout:
        print("gen: raw bytes need --out or an explicit --stdout", file=sys.stderr)
        return EXIT_USAGE
    square = _load_square(args.square)
    shift = _shift_from_args(args)
    if args.format == "symbols":
        config = engine.GeneratorConfig(square, shift, engine.OutputMap.SYMBOLS)
        eng = engine.Engine(config)
        values: list[int] = []
        while len(values) < args.length:
            values.extend(int(v) for v in eng.next_block())
        text = " ".join(str(v) for v in values[: args.length]) + "\n"
        if args.out:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    config = engine.GeneratorConfig(square, shift, engine.OutputMap.BYTES)
    payload = engine.generate(config, args.length)
    if args.format == "hex":
        text = payload.hex() + "\n"
        if args.out:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return EXIT_OK


def _battery_exit(entries) -> int:
    if any(e.error is not None for e in entries):
        return EXIT_INSUFFICIENT
    if any(e.result.suspect for e in entries):
        return EXIT_BATTERY
    return EXIT_OK


def _cmd_test(args) -> int:
    if (args.input is None) == (args.self_gen is None):
        print("test: give exactly one of an input file or --self-gen", file=sys.stderr)
        return EXIT_USAGE
    if args.input is not None:
        with open(args.input, "rb") as fh:
            data = fh.read()
        label = args.input
    else:
        label, produce = _parse_genspec(args.self_gen)
        data = produce(args.length)
    entries = battery.run_battery(
        {label: data}, sink=sys.stdout,
        n_matrices=args.n_matrices, n_tuples=args.n_tuples,
    )
    return _battery_exit(entries)


def _cmd_compare(args) -> int:
    label_a, produce_a = _parse_genspec(args.gen_a)
    label_b, produce_b = _parse_genspec(args.gen_b)
    if label_a == label_b:
        label_a, label_b = f"A:{label_a}", f"B:{label_b}"
    sources = {label_a: produce_a(args.size), label_b: produce_b(args.size)}
    entries = battery.run_battery(
        sources, sink=sys.stdout,
        n_matrices=args.n_matrices, n_tuples=args.n_tuples,
    )
    return _battery_exit(entries)


_HANDLERS = {
    "make-square": _cmd_make_square,
    "validate-square": _cmd_validate_square,
    "gen": _cmd_gen,
    "test": _cmd_test,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except latin.LatinSquareError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (engine.OrderTooLargeForBytes, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


def run() -> None:
    sys.exit(main())
