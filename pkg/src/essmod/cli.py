"""Command-line front end: gen / check / witness / suite.

JSON travels on stdin/stdout by default or through --in/--out paths.
Exit codes: 0 all checks pass, 1 a check or property failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generate, properties, runner, serialize
from .errors import EssmodError, SchemaError


def _read_doc(path: str | None):
    try:
        if path:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON input: {exc}") from exc
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc


def _write_doc(doc, path: str | None, pretty: bool):
    text = serialize.dumps(doc, pretty=pretty)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_blocks(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad --blocks value {text!r}") from exc
    if not dims:
        raise SchemaError("--blocks must list at least one dimension")
    return dims


def cmd_gen(args) -> int:
    if args.kind == "right_ideal":
        doc = generate.gen_right_ideal(_parse_blocks(args.blocks), args.seed)
    elif args.kind == "module_submodule":
        doc = generate.gen_module_submodule(_parse_blocks(args.blocks), args.k, args.seed)
    elif args.kind == "field":
        doc = generate.gen_field(args.d, args.pieces, args.generators, args.defect, args.seed)
    else:
        raise SchemaError(f"unknown kind {args.kind!r}")
    _write_doc(doc, args.out, args.json_pretty)
    return 0


def cmd_check(args) -> int:
    doc = _read_doc(getattr(args, "in"))
    report = runner.run_check(doc)
    _write_doc(report, args.out, args.json_pretty)
    return 0 if report["checks_ok"] else 1


def cmd_witness(args) -> int:
    doc = _read_doc(getattr(args, "in"))
    report = runner.run_witness(doc, samples=args.samples, section_index=args.section)
    _write_doc(report, args.out, args.json_pretty)
    return 0 if report["checks_ok"] else 1


def cmd_suite(args) -> int:
    if args.trials < 1:
        raise SchemaError("--trials must be >= 1")
    report = properties.run_suite(args.seed, args.trials)
    _write_doc(report, args.out, args.json_pretty)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="essmod",
        description="Essentiality checks and witness constructions for right "
        "ideals, module submodules, and continuous fields of Hilbert spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded random instance")
    gen.add_argument("--kind", required=True, choices=serialize.KINDS)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--blocks", default="2", help="comma-separated block dims")
    gen.add_argument("--k", type=int, default=2, help="module rank")
    gen.add_argument("--d", type=int, default=2, help="fiber dimension")
    gen.add_argument("--pieces", type=int, default=4, help="partition pieces")
    gen.add_argument("--generators", type=int, default=2, help="field generators")
    gen.add_argument("--defect", default="none", choices=("none", "points", "interval"))
    gen.add_argument("--out", default=None)
    gen.add_argument("--json-pretty", action="store_true")
    gen.set_defaults(fn=cmd_gen)

    check = sub.add_parser("check", help="decide essentiality of an instance")
    check.add_argument("--in", default=None, help="instance path (default stdin)")
    check.add_argument("--out", default=None)
    check.add_argument("--json-pretty", action="store_true")
    check.set_defaults(fn=cmd_check)

    witness = sub.add_parser("witness", help="construct and verify witness objects")
    witness.add_argument("--in", default=None, help="instance path (default stdin)")
    witness.add_argument("--out", default=None)
    witness.add_argument("--samples", type=int, default=8, help="defect samples (fields)")
    witness.add_argument("--section", type=int, default=0, help="generator index (fields)")
    witness.add_argument("--json-pretty", action="store_true")
    witness.set_defaults(fn=cmd_witness)

    suite = sub.add_parser("suite", help="run the seeded property suite")
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--trials", type=int, default=20)
    suite.add_argument("--out", default=None)
    suite.add_argument("--json-pretty", action="store_true")
    suite.set_defaults(fn=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except EssmodError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
