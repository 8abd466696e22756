"""Command-line front end: ``shiftlab {define,transform,defect,verify,truncate,spectral}``.

Exit codes: 0 success, 1 a requested expectation or verdict failed,
2 usage or configuration error.  Reports go to stdout, diagnostics to
stderr.  The default format is ``table`` on a terminal and ``json`` when
stdout is piped.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import serialize
from .errors import ShiftlabError
from .isometry import is_m_isometry
from .oracle import (MAX_DIM, matrix_aluthge, matrix_lambda_mean, matrix_mean,
                     truncate)
from .spectral import (DEFAULT_WINDOW, power_bounded_probe, power_norm_table,
                       spectral_radius)
from .theorems import THEOREM_IDS, run_all
from .transforms import HALF, TransformKind
from .weights import (Constant, Explicit, Periodic, PowerTower, Tail,
                      TwoIsoFamily, WeightedShift, as_number)

FORMATS = ("json", "csv", "table", "markdown")
FAMILY_FLAGS = {
    "constant": ("c",),
    "two-iso": ("a",),
    "periodic": ("weights", "squares"),
    "power-tower": ("x", "tower_lambda"),
    "explicit": ("weights", "squares", "tail"),
}
ALL_FAMILY_FLAGS = ("a", "c", "weights", "squares", "x", "tower_lambda", "tail")


class UsageError(Exception):
    """Bad flags or configuration; reported with exit code 2."""


def _flag(dest: str) -> str:
    return "--" + dest.replace("_", "-")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{x} ({float(x):.17g})"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _number(text: str, flag: str):
    try:
        return as_number(text)
    except (ShiftlabError, TypeError, ZeroDivisionError):
        raise UsageError(f"{flag}: not a number: {text!r}") from None


def _number_list(text: str, flag: str) -> tuple:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError(f"{flag}: expected a comma-separated list of numbers")
    return tuple(_number(t, flag) for t in items)


def _tail(text: str | None) -> Tail:
    if text is None:
        raise UsageError("--tail is required with --family explicit "
                         "(repeat-last | constant:C | two-iso-extend:A)")
    rule, _, value = text.partition(":")
    if rule == "repeat-last" and not value:
        return Tail.repeat_last()
    if rule in ("constant", "two-iso-extend") and value:
        return Tail(rule, _number(value, "--tail"))
    raise UsageError(f"--tail: expected repeat-last, constant:C or two-iso-extend:A, got {text!r}")


def _family_sequence(args):
    family = args.family
    allowed = FAMILY_FLAGS[family]
    for dest in ALL_FAMILY_FLAGS:
        if getattr(args, dest) is not None and dest not in allowed:
            raise UsageError(f"{_flag(dest)} does not apply to --family {family}")

    def need(dest):
        value = getattr(args, dest)
        if value is None:
            raise UsageError(f"{_flag(dest)} is required with --family {family}")
        return value

    if family == "constant":
        return Constant(_number(need("c"), "--c"))
    if family == "two-iso":
        return TwoIsoFamily(_number(need("a"), "--a"))
    if family == "power-tower":
        return PowerTower(_number(need("x"), "--x"),
                          _number(need("tower_lambda"), "--tower-lambda"))
    if args.weights is not None and args.squares is not None:
        raise UsageError("give either --weights or --squares, not both")
    if args.weights is None and args.squares is None:
        raise UsageError(f"--weights (or --squares) is required with --family {family}")
    squared = args.squares is not None
    flag = "--squares" if squared else "--weights"
    values = _number_list(args.squares if squared else args.weights, flag)
    if family == "periodic":
        return Periodic(values, squared)
    return Explicit(values, _tail(args.tail), squared)


def load_shift(args) -> WeightedShift:
    """Build the shift from exactly one source: ``--shift FILE`` or ``--family``."""
    if args.shift is not None and args.family is not None:
        raise UsageError("give either --shift FILE or --family, not both")
    if args.shift is not None:
        for dest in ALL_FAMILY_FLAGS:
            if getattr(args, dest) is not None:
                raise UsageError(f"{_flag(dest)} cannot be combined with --shift")
        try:
            with open(args.shift, encoding="utf-8") as fh:
                return serialize.loads(fh.read())
        except OSError as exc:
            raise UsageError(f"--shift: cannot read {args.shift}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"--shift: {args.shift} is not valid JSON: {exc}") from None
    if args.family is None:
        raise UsageError("a shift source is required: --shift FILE or --family NAME")
    return WeightedShift(_family_sequence(args))


def _transform_kind(kind: str, lam_text: str | None) -> TransformKind:
    if kind in ("duggal", "mean"):
        if lam_text is not None:
            raise UsageError(f"--lambda does not apply to --kind {kind}")
        return TransformKind(kind)
    lam = HALF if lam_text is None else _number(lam_text, "--lambda")
    if not 0 <= lam <= 1:
        raise UsageError(f"--lambda must lie in [0, 1], got {lam_text}")
    return TransformKind(kind, lam)


def _format(args) -> str:
    if args.format is not None:
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_rows(fmt: str, header, rows) -> None:
    rows = [[_fmt(v) for v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    elif fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
        for row in [header] + rows:
            line = "  ".join(str(c).ljust(w) for c, w in zip(row, widths))
            sys.stdout.write(line.rstrip() + "\n")


def _preview(seq, count: int) -> list:
    level = seq.exactness.exponent
    if level == 1:
        return [seq.exact(j) for j in range(1, count + 1)]
    return [seq.weight(j) for j in range(1, count + 1)]


def cmd_define(args) -> int:
    shift = load_shift(args)
    sys.stdout.write(serialize.dumps(shift) + "\n")
    return 0


def cmd_transform(args) -> int:
    shift = load_shift(args)
    kind = _transform_kind(args.kind, args.lam)
    out = kind.apply(shift)
    provenance = kind.kind if kind.lam is None else f"{kind.kind}(lambda={kind.lam})"
    before = _preview(shift.weights, args.preview)
    after = _preview(out.weights, args.preview)
    fmt = _format(args)
    if fmt == "json":
        _emit_json({
            "input": serialize.shift_to_dict(shift),
            "output": serialize.shift_to_dict(out),
            "provenance": provenance,
            "preview": {"j": list(range(1, args.preview + 1)),
                        "input": [float(v) for v in before],
                        "output": [float(v) for v in after]},
        })
    else:
        if fmt != "csv":
            sys.stdout.write(f"transform: {provenance}\n")
        _emit_rows(fmt, ["j", "input", "output"],
                   [(j, b, a) for j, (b, a) in enumerate(zip(before, after), start=1)])
    return 0


def cmd_defect(args) -> int:
    shift = load_shift(args)
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    if args.n_max < args.n_min:
        raise UsageError("--n-max must be >= --n-min")
    report = is_m_isometry(shift, args.m, args.n_max, args.tol, n_min=args.n_min)
    fmt = _format(args)
    if fmt == "json":
        _emit_json(report.to_dict(max_values=args.values))
    else:
        witness = "none"
        if report.witness is not None:
            witness = f"n={report.witness[0]}, D={_fmt(report.witness[1])}"
        _emit_rows(fmt, ["field", "value"], [
            ("m", report.m), ("n_range", f"{report.n_range[0]}..{report.n_range[1]}"),
            ("mode", report.mode), ("tol", f"{report.tol:g} ({report.tol_mode})"),
            ("verdict", report.verdict), ("witness", witness),
        ])
    if args.expect == "zero" and not report.is_zero:
        return 1
    if args.expect == "nonzero" and report.is_zero:
        return 1
    return 0


def cmd_verify(args) -> int:
    if args.all == bool(args.theorem):
        raise UsageError("give --theorem ID (repeatable) or --all")
    ids = THEOREM_IDS if args.all else tuple(args.theorem)
    unknown = [i for i in ids if i not in THEOREM_IDS]
    if unknown:
        raise UsageError(f"--theorem: unknown id {unknown[0]!r}; known: {', '.join(THEOREM_IDS)}")
    params = {}
    if args.lambda_grid is not None:
        params["lambda_grid"] = _number_list(args.lambda_grid, "--lambda-grid")
    verdicts = run_all(ids, jobs=args.jobs, **params)
    ok = all(v.overall for v in verdicts)
    fmt = _format(args)
    if fmt == "json":
        _emit_json({"overall": ok, "verdicts": [v.to_dict() for v in verdicts]})
    elif fmt == "csv":
        _emit_rows("csv", ["id", "check", "expected", "observed", "pass", "tag"],
                   [(v.id, c.name, c.expected, c.observed, c.passed, c.tag)
                    for v in verdicts for c in v.checks])
    else:
        sys.stdout.write("\n".join(v.to_markdown() for v in verdicts))
        passed = sum(v.overall for v in verdicts)
        sys.stdout.write(f"\n{passed}/{len(verdicts)} verdicts pass\n")
    return 0 if ok else 1


def cmd_truncate(args) -> int:
    shift = load_shift(args)
    if not 2 <= args.dim <= MAX_DIM:
        raise UsageError(f"--dim must lie in [2, {MAX_DIM}]")
    matrix = truncate(shift, args.dim)
    if args.kind is not None:
        kind = _transform_kind(args.kind, args.lam)
        if kind.kind == "mean":
            matrix = matrix_mean(matrix)
        elif kind.kind == "lambda-mean":
            matrix = matrix_lambda_mean(matrix, kind.lam)
        else:
            matrix = matrix_aluthge(matrix, 1 if kind.kind == "duggal" else kind.lam)
    elif args.lam is not None:
        raise UsageError("--lambda needs --kind")
    fmt = _format(args)
    text = matrix.to_json() + "\n" if fmt == "json" else matrix.to_csv()
    if fmt in ("table", "markdown") and args.output is None:
        rows = [row.split(",") for row in text.splitlines()]
        widths = [max(len(c) for c in col) for col in zip(*rows)]
        text = "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in rows)
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_spectral(args) -> int:
    shift = load_shift(args)
    if args.alpha is not None:
        shift = shift.scaled(_number(args.alpha, "--alpha"))
    if args.powers < 1 or args.max_power < 2:
        raise UsageError("--powers must be >= 1 and --max-power >= 2")
    radius = spectral_radius(shift, args.max_power, args.window)
    table = power_norm_table(shift, args.powers, args.window)
    probe = None
    if args.probe is not None:
        probe = power_bounded_probe(shift, 1, args.probe, args.bound, args.window)
    fmt = _format(args)
    if fmt == "json":
        doc = {"radius": radius.to_dict(), "table": table.to_dict()}
        if probe is not None:
            doc["probe"] = probe.to_dict()
        _emit_json(doc)
        return 0
    if fmt == "csv":
        sys.stdout.write(table.to_csv())
        return 0
    sys.stdout.write(f"spectral radius: {radius.value:.17g} "
                     f"({'exact' if radius.exact else 'estimate'})\n")
    if probe is not None:
        where = f" at n={probe.n}" if probe.n is not None else ""
        sys.stdout.write(f"probe (bound {probe.bound:g}, n <= {args.probe}): "
                         f"{probe.verdict}{where}\n")
    _emit_rows(fmt, ["n", "norm", "estimate"],
               zip(table.powers, table.norms, table.radius_estimates))
    return 0


def _add_shift_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("shift source (give --shift or --family)")
    g.add_argument("--shift", metavar="FILE", help="JSON shift definition")
    g.add_argument("--family", choices=tuple(FAMILY_FLAGS))
    g.add_argument("--a", help="two-iso parameter, a > -1")
    g.add_argument("--c", help="constant weight")
    g.add_argument("--weights", metavar="LIST", help="comma-separated weights")
    g.add_argument("--squares", metavar="LIST", help="comma-separated squared weights")
    g.add_argument("--x", help="power-tower base, x > 0")
    g.add_argument("--tower-lambda", dest="tower_lambda", help="power-tower lambda")
    g.add_argument("--tail", help="explicit tail: repeat-last | constant:C | two-iso-extend:A")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS,
                   help="output format (default: table on a terminal, json otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlab", description="Transforms, m-isometry defects and spectral "
                                     "probes for unilateral weighted shifts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("define", help="print the JSON definition of a shift")
    _add_shift_source(p)
    p.set_defaults(func=cmd_define)

    p = sub.add_parser("transform", help="apply an Aluthge-type or mean transform")
    _add_shift_source(p)
    p.add_argument("--kind", required=True, choices=TransformKind.KINDS)
    p.add_argument("--lambda", dest="lam", help="lambda in [0, 1] (default 1/2)")
    p.add_argument("--preview", type=int, default=12, help="weights to show (default 12)")
    _add_format(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("defect", help="evaluate the m-isometry defect D_m(n)")
    _add_shift_source(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=256)
    p.add_argument("--tol", type=float,
                   help="absolute zero threshold for floating mode "
                        "(default: scale-aware, SHIFTLAB_TOL relative)")
    p.add_argument("--expect", choices=("zero", "nonzero"))
    p.add_argument("--values", type=int, default=64, help="defect values kept in JSON output")
    _add_format(p)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("verify", help="run theorem runners")
    p.add_argument("--theorem", action="append", metavar="ID",
                   help=f"one of {', '.join(THEOREM_IDS)}; repeatable")
    p.add_argument("--all", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--lambda-grid", metavar="LIST",
                   help="comma-separated lambda grid for the lambda-dependent runners")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("truncate", help="export the N x N truncation matrix")
    _add_shift_source(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--kind", choices=TransformKind.KINDS,
                   help="apply a transform by dense matrix products")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--output", metavar="FILE")
    _add_format(p)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("spectral", help="power norms and spectral radius")
    _add_shift_source(p)
    p.add_argument("--alpha", help="scale the shift by alpha first")
    p.add_argument("--powers", type=int, default=32, help="rows of the norm table")
    p.add_argument("--max-power", type=int, default=256)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--probe", type=int, metavar="N",
                   help="scan ||T^n|| for n <= N against --bound")
    p.add_argument("--bound", type=float, default=1e6)
    _add_format(p)
    p.set_defaults(func=cmd_spectral)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ShiftlabError) as exc:
        parser.exit(2, f"shiftlab {args.command}: error: {exc}\n")
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
