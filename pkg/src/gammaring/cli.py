"""Command line entry point.

Exit codes: 0 success, 1 a checked property failed, 2 bad input or usage,
3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import os
import sys
from dataclasses import dataclass

from .algebra import load_gamma_semiring, serialize_gamma_semiring, validate_gamma_semiring
from .correspondence import MAP_CARRIERS, TransferContext, run_suite, transfer
from .enumeration import DEFAULT_ENUMERATION_CAP, DEFAULT_SEARCH_CAP, FAMILIES, GeneratorSpec
from .enumeration import enumerate_levels, generate_gamma_semirings
from .errors import CapExceeded, GammaRingError, ParseError
from .fuzzy import FuzzySubset, IdealKind, check_gamma_ideal, check_semiring_ideal
from .fuzzy import parse_fuzzy_subset, pointwise_leq, serialize_fuzzy_subset
from .operator import DEFAULT_MAX_ELEMENTS, build_operator_semiring, find_left_unity, find_right_unity

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    text: str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _kind(text):
    try:
        return IdealKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gammaring", description="Finite Gamma-semirings, operator semirings and fuzzy ideals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("validate", help="check the Gamma-semiring axioms")
    c.add_argument("structure")

    c = sub.add_parser("build-operators", help="build L and/or R and report unities")
    c.add_argument("structure")
    c.add_argument("--side", choices=("left", "right", "both"), default="both")
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)

    c = sub.add_parser("check", help="decide a fuzzy ideal predicate")
    c.add_argument("structure")
    c.add_argument("fuzzy")
    c.add_argument("--kind", type=_kind, required=True)
    c.add_argument("--on", choices=("S", "L", "R"), default="S")
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)

    c = sub.add_parser("transfer", help="apply one of the four transfer maps")
    c.add_argument("structure")
    c.add_argument("fuzzy")
    c.add_argument("--map", dest="map_name", choices=tuple(MAP_CARRIERS), required=True)
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)

    c = sub.add_parser("roundtrip", help="send a fuzzy subset of S to L (or R) and back")
    c.add_argument("structure")
    c.add_argument("fuzzy")
    c.add_argument("--side", choices=("left", "right"), default="left")
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)

    c = sub.add_parser("enumerate", help="list fuzzy ideals with values in {0, 1/K, ..., 1}")
    c.add_argument("structure")
    c.add_argument("--chain", type=_positive, required=True)
    c.add_argument("--kind", type=_kind, required=True)
    c.add_argument("--on", choices=("S", "L", "R"), default="S")
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--cap", type=_positive, default=DEFAULT_ENUMERATION_CAP)
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)

    c = sub.add_parser("generate", help="write generated Gamma-semirings to a directory")
    c.add_argument("--family", choices=FAMILIES, default="from_semiring_subset")
    c.add_argument("--s", dest="s_size", type=_positive, required=True)
    c.add_argument("--gamma", dest="g_size", type=_positive, required=True)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", required=True)
    c.add_argument("--cap", type=_positive, default=DEFAULT_SEARCH_CAP)

    c = sub.add_parser("suite", help="run every claim check on one structure")
    c.add_argument("structure")
    c.add_argument("--chain", type=_positive, default=2)
    c.add_argument("--samples", type=_positive, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--report")
    c.add_argument("--force-ungated", action="store_true")
    c.add_argument("--max-elements", type=_positive, default=DEFAULT_MAX_ELEMENTS)
    c.add_argument("--cap", type=_positive, default=DEFAULT_ENUMERATION_CAP)
    return p


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _structure(path):
    try:
        return load_gamma_semiring(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _require_valid(g):
    report = validate_gamma_semiring(g)
    if not report.ok:
        raise ParseError("structure violates the Gamma-semiring axioms: " + "; ".join(report.lines()))


def _carrier_structure(g, on, max_elements):
    if on == "S":
        return g
    return build_operator_semiring(g, "left" if on == "L" else "right", max_elements)


def _fuzzy(path, carrier, size):
    try:
        return parse_fuzzy_subset(_read(path), carrier, size)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _table_lines(table):
    return [" ".join(str(int(v)) for v in row) for row in table]


def cmd_validate(args):
    report = validate_gamma_semiring(_structure(args.structure))
    return CommandOutcome(EXIT_OK if report.ok else EXIT_PROPERTY, "\n".join(report.lines()) + "\n")


def cmd_build_operators(args):
    g = _structure(args.structure)
    _require_valid(g)
    sides = ("left", "right") if args.side == "both" else (args.side,)
    out = []
    for side in sides:
        sr = build_operator_semiring(g, side, args.max_elements)
        unity = (find_left_unity if side == "left" else find_right_unity)(g, sr)
        out.append(f"{side.upper()} {sr.carrier} elements={sr.size}")
        for i, (elem, w) in enumerate(zip(sr.elements, sr.witnesses)):
            out.append(f"element {i} action={','.join(map(str, elem))} witness={w}")
        out.append("add")
        out += _table_lines(sr.add)
        out.append("mul")
        out += _table_lines(sr.mul)
        out.append(f"unity {unity.formal_sum} element={unity.element}" if unity else "no unity")
    return CommandOutcome(EXIT_OK, "\n".join(out) + "\n")


def cmd_check(args):
    g = _structure(args.structure)
    _require_valid(g)
    target = _carrier_structure(g, args.on, args.max_elements)
    size = g.s_size if args.on == "S" else target.size
    mu = _fuzzy(args.fuzzy, args.on, size)
    if args.on == "S":
        res = check_gamma_ideal(g, mu, args.kind)
    else:
        res = check_semiring_ideal(target, mu, args.kind)
    if res.ok:
        return CommandOutcome(EXIT_OK, f"OK: fuzzy {args.kind.value} ideal of {args.on}\n")
    cex = res.counterexample
    return CommandOutcome(
        EXIT_PROPERTY,
        f"FAIL: not a fuzzy {args.kind.value} ideal of {args.on} ({cex.family})\n{cex}\n",
    )


def cmd_transfer(args):
    g = _structure(args.structure)
    _require_valid(g)
    ctx = TransferContext.build(g, args.max_elements)
    cin, _ = MAP_CARRIERS[args.map_name]
    mu = _fuzzy(args.fuzzy, cin, ctx.size(cin))
    return CommandOutcome(EXIT_OK, serialize_fuzzy_subset(transfer(ctx, args.map_name, mu)))


def cmd_roundtrip(args):
    g = _structure(args.structure)
    _require_valid(g)
    ctx = TransferContext.build(g, args.max_elements)
    sigma = _fuzzy(args.fuzzy, "S", g.s_size)
    there, back = ("plus-prime", "plus") if args.side == "left" else ("star-prime", "star")
    mid = transfer(ctx, there, sigma)
    result = transfer(ctx, back, mid)
    same = result == sigma
    text = serialize_fuzzy_subset(result) + f"ROUNDTRIP {'equal' if same else 'differs'}"
    if not same:
        text += " (returned subset is " + ("below" if pointwise_leq(result, sigma) else "not below") + " the input)"
    return CommandOutcome(EXIT_OK if same else EXIT_PROPERTY, text + "\n")


def cmd_enumerate(args):
    g = _structure(args.structure)
    _require_valid(g)
    target = _carrier_structure(g, args.on, args.max_elements)
    levels = enumerate_levels(target, args.chain, args.kind, args.cap)
    out = [f"COUNT {len(levels)}"]
    if not args.count_only:
        for row in levels:
            mu = FuzzySubset.from_levels(row, args.chain, args.on)
            out.append(" ".join(f"{v.numerator}/{v.denominator}" for v in mu.values))
    return CommandOutcome(EXIT_OK, "\n".join(out) + "\n")


def cmd_generate(args):
    spec = GeneratorSpec(args.s_size, args.g_size, seed=args.seed, family=args.family)
    os.makedirs(args.out, exist_ok=True)
    names = []
    for i, g in enumerate(generate_gamma_semirings(spec, args.cap)):
        fname = f"{i:04d}_{g.name}.gsr"
        with open(os.path.join(args.out, fname), "w", encoding="utf-8") as fh:
            fh.write(serialize_gamma_semiring(g))
        names.append(fname)
    return CommandOutcome(EXIT_OK, f"GENERATED {len(names)}\n" + "".join(f"{n}\n" for n in names))


def cmd_suite(args):
    g = _structure(args.structure)
    _require_valid(g)
    report = run_suite(g, args.chain, args.samples, args.seed, args.force_ungated,
                       args.max_elements, args.cap)
    text = report.text()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return CommandOutcome(EXIT_OK if report.ok else EXIT_PROPERTY, text)


COMMANDS = {
    "validate": cmd_validate,
    "build-operators": cmd_build_operators,
    "check": cmd_check,
    "transfer": cmd_transfer,
    "roundtrip": cmd_roundtrip,
    "enumerate": cmd_enumerate,
    "generate": cmd_generate,
    "suite": cmd_suite,
}


def dispatch(argv) -> CommandOutcome:
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            args = parser.parse_args(list(argv))
    except _UsageError as exc:
        return CommandOutcome(EXIT_INPUT, str(exc))
    except SystemExit as exc:  # --help
        return CommandOutcome(int(exc.code or 0), buf.getvalue())
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        return CommandOutcome(EXIT_CAP, f"error: {exc}\n")
    except (GammaRingError, ValueError) as exc:
        return CommandOutcome(EXIT_INPUT, f"error: {exc}\n")


def main(argv=None):
    outcome = dispatch(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if outcome.exit_code in (EXIT_OK, EXIT_PROPERTY) else sys.stderr
    stream.write(outcome.text)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
