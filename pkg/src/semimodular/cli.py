"""Command-line surface: eval, check, poles, matrix, grid.

Every subcommand writes json-lines records (schema field "schema": 1) to
stdout and diagnostics to stderr.  Identical inputs produce byte-identical
output.  Exit codes: 0 success, 1 failed identity check, 2 pole proximity,
3 tolerance unreachable, 64 usage, 74 output I/O failure.
"""

from __future__ import annotations

import argparse
import colorsys
import json
import math
import re
import sys

from .errors import (
    InvalidPairing,
    MobiusPole,
    OddWeight,
    PoleProximity,
    ToleranceUnreachable,
    UncertifiedOnly,
)
from .gl2 import fib_matrix_check, generator_identities, P, S
from .lucas import FIBONACCI, LUCAS_NUMBERS, Kind, SequenceSpec
from .series import (
    GUARD_EPS,
    SeriesSpec,
    Variant,
    evaluate,
    pole_map,
)
from .symmetry import InversionS, MirrorPa, check_identity

SCHEMA = 1
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_POLE = 2
EXIT_TOL = 3
EXIT_USAGE = 64
EXIT_IO = 74

_SEQ_GRAMMAR = re.compile(r"lucas-(first|second):(-?\d+):(-?\d+)$")


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code this tool documents."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, record: dict, human: str) -> None:
    if args.format == "human":
        print(human)
    else:
        print(json.dumps(record, separators=(",", ":"), allow_nan=False))


def _parse_seq(text: str, uncertified: bool, parser: _Parser) -> SequenceSpec:
    if text == "fib":
        return FIBONACCI
    if text == "lucas":
        return LUCAS_NUMBERS
    m = _SEQ_GRAMMAR.match(text)
    if m is None:
        parser.error(f"bad sequence selector {text!r} (use fib, lucas, lucas-first:a:b, lucas-second:a:b)")
    kind = Kind.FIRST if m.group(1) == "first" else Kind.SECOND
    a, b = int(m.group(2)), int(m.group(3))
    if a == 0:
        parser.error("a = 0 is not allowed (the mirror family needs a nonzero coefficient)")
    if b == 0:
        parser.error("b = 0 is not allowed (the series diverges)")
    spec = SequenceSpec(a, b, kind)
    if b != -1 and not uncertified:
        parser.error("b != -1 is exploration-only; pass --uncertified to evaluate anyway")
    return spec


def _parse_z(text: str, parser: _Parser) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        parser.error(f"bad complex literal {text!r}; expected RE,IM")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        parser.error(f"bad complex literal {text!r}; expected RE,IM")


def _parse_window(text: str, parser: _Parser) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        parser.error(f"bad window {text!r}; expected x0,x1,y0,y1")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts)
    except ValueError:
        parser.error(f"bad window {text!r}; expected x0,x1,y0,y1")
    if not (x0 < x1 and y0 < y1):
        parser.error("window must satisfy x0 < x1 and y0 < y1")
    return x0, x1, y0, y1


def _parse_res(text: str, parser: _Parser) -> tuple[int, int]:
    m = re.match(r"(\d+)x(\d+)$", text)
    if m is None:
        parser.error(f"bad resolution {text!r}; expected WxH")
    w, h = int(m.group(1)), int(m.group(2))
    if not (1 <= w <= 4096 and 1 <= h <= 4096):
        parser.error("resolution out of range (1..4096 per axis)")
    return w, h


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_eval(args, parser) -> int:
    seq = _parse_seq(args.seq, args.uncertified, parser)
    variant = Variant.FOOTNOTE if args.variant == "footnote" else Variant.STANDARD
    if variant is Variant.FOOTNOTE and seq != FIBONACCI:
        parser.error("--variant footnote requires --seq fib")
    spec = SeriesSpec(seq, args.weight, variant)
    z = _parse_z(args.z, parser)
    res = evaluate(spec, z, args.tol, guard_eps=args.guard_eps)
    _emit(
        args,
        {
            "schema": SCHEMA,
            "command": "eval",
            "value_re": res.value.real,
            "value_im": res.value.imag,
            "tail_bound": res.tail_bound,
            "certified": res.certified,
            "j_min": res.j_min,
            "j_max": res.j_max,
        },
        f"value = {res.value.real!r} + {res.value.imag!r}i  tail <= {res.tail_bound:.3e}  "
        f"certified={res.certified}  window=[{res.j_min}, {res.j_max}]",
    )
    return EXIT_OK


def _cmd_check(args, parser) -> int:
    seq = _parse_seq(args.seq, args.uncertified, parser)
    variant = Variant.FOOTNOTE if args.variant == "footnote" else Variant.STANDARD
    spec = SeriesSpec(seq, 2 * args.k, variant)
    if args.identity == "inversion":
        kind = InversionS()
        force = False
    else:
        mirror_a = seq.a if args.mirror_a is None else args.mirror_a
        kind = MirrorPa(mirror_a)
        force = mirror_a != seq.a
    report = check_identity(
        spec,
        kind,
        n_samples=args.samples,
        seed=args.seed,
        eval_tol=args.tol,
        force_pairing=force,
    )
    for i, (z, r, t) in enumerate(
        zip(report.sample_points, report.residuals, report.tolerances)
    ):
        _emit(
            args,
            {
                "schema": SCHEMA,
                "type": "sample",
                "index": i,
                "z_re": z.real,
                "z_im": z.imag,
                "residual": r,
                "tolerance": t,
                "ok": r <= t,
            },
            f"sample {i:3d}  z = {z.real:+.4f}{z.imag:+.4f}i  residual {r:.3e}  "
            f"tolerance {t:.3e}  {'ok' if r <= t else 'FAIL'}",
        )
    _emit(
        args,
        {
            "schema": SCHEMA,
            "type": "summary",
            "identity": args.identity,
            "pass": report.passed,
            "max_residual": report.max_residual,
            "samples": args.samples,
            "seed": args.seed,
        },
        f"{args.identity}: {'PASS' if report.passed else 'FAIL'}  "
        f"max residual {report.max_residual:.3e}  ({args.samples} samples, seed {args.seed})",
    )
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_poles(args, parser) -> int:
    seq = _parse_seq(args.seq, args.uncertified, parser)
    pm = pole_map(seq, args.nmin, args.nmax)
    for p in pm.poles:
        _emit(
            args,
            {
                "schema": SCHEMA,
                "type": "pole",
                "fraction": f"{p.numerator}/{p.denominator}",
                "numerator": p.numerator,
                "denominator": p.denominator,
            },
            f"pole {p.numerator}/{p.denominator}",
        )
    _emit(
        args,
        {
            "schema": SCHEMA,
            "type": "accumulation",
            "points": list(pm.accumulation_points),
        },
        "accumulation points: " + (", ".join(repr(a) for a in pm.accumulation_points) or "none"),
    )
    return EXIT_OK


def _cmd_matrix(args, parser) -> int:
    if args.fib_power is not None:
        n = args.fib_power
        if n < 1:
            parser.error("--fib-power needs n >= 1")
        mat = (P * S).power(n)
        _emit(
            args,
            {
                "schema": SCHEMA,
                "type": "fib-power",
                "n": n,
                "p": mat.p,
                "q": mat.q,
                "r": mat.r,
                "s": mat.s,
            },
            f"(PS)^{n} = [[{mat.p}, {mat.q}], [{mat.r}, {mat.s}]]",
        )
        return EXIT_OK
    ok = True
    for name, holds in generator_identities():
        ok &= holds
        _emit(
            args,
            {"schema": SCHEMA, "type": "identity", "name": name, "holds": holds},
            f"{name}: {'ok' if holds else 'FAIL'}",
        )
    fib_ok = all(fib_matrix_check(n) for n in range(1, 51))
    ok &= fib_ok
    _emit(
        args,
        {"schema": SCHEMA, "type": "fib-matrix", "max_n": 50, "holds": fib_ok},
        f"(PS)^n Fibonacci form for n <= 50: {'ok' if fib_ok else 'FAIL'}",
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _pixel_color(value: complex) -> tuple[int, int, int]:
    hue = (math.atan2(value.imag, value.real) + math.pi) / (2.0 * math.pi)
    if hue >= 1.0:
        hue -= 1.0
    brightness = 1.0 - 1.0 / (1.0 + math.log1p(abs(value)))
    r, g, b = colorsys.hsv_to_rgb(hue, 1.0, brightness)
    return (int(r * 255 + 0.5), int(g * 255 + 0.5), int(b * 255 + 0.5))


def render_grid(
    spec: SeriesSpec,
    window: tuple[float, float, float, float],
    width: int,
    height: int,
    tol: float = 1e-8,
    guard_eps: float = GUARD_EPS,
) -> bytes:
    """Binary PPM (P6, maxval 255) domain coloring of the series.

    Pixel (column i, row j) maps to
    z = x0 + (i+0.5)*(x1-x0)/W + i*(y1 - (j+0.5)*(y1-y0)/H).  Pixels whose
    evaluation trips the pole guard (or cannot reach tol) render black.
    Output bytes depend only on the arguments.
    """
    x0, x1, y0, y1 = window
    out = bytearray(b"P6\n%d %d\n255\n" % (width, height))
    for j in range(height):
        im = y1 - (j + 0.5) * (y1 - y0) / height
        for i in range(width):
            re = x0 + (i + 0.5) * (x1 - x0) / width
            try:
                value = evaluate(spec, complex(re, im), tol, guard_eps=guard_eps).value
            except (PoleProximity, ToleranceUnreachable):
                out.extend((0, 0, 0))
                continue
            out.extend(_pixel_color(value))
    return bytes(out)


def _cmd_grid(args, parser) -> int:
    seq = _parse_seq(args.seq, args.uncertified, parser)
    variant = Variant.FOOTNOTE if args.variant == "footnote" else Variant.STANDARD
    spec = SeriesSpec(seq, args.weight, variant)
    window = _parse_window(args.window, parser)
    width, height = _parse_res(args.res, parser)
    data = render_grid(spec, window, width, height, args.tol, args.guard_eps)
    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        print(f"semimodular: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit(
        args,
        {
            "schema": SCHEMA,
            "command": "grid",
            "out": args.out,
            "width": width,
            "height": height,
        },
        f"wrote {args.out} ({width}x{height})",
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------


def _add_seq_flags(sub) -> None:
    sub.add_argument("--seq", required=True, help="fib | lucas | lucas-first:a:b | lucas-second:a:b")
    sub.add_argument("--uncertified", action="store_true", help="allow b != -1 exploration sequences")
    sub.add_argument("--variant", choices=["standard", "footnote"], default="standard")
    _add_format_flag(sub)


def _add_format_flag(sub) -> None:
    sub.add_argument("--format", choices=["jsonl", "human"], default="jsonl")


def build_parser() -> _Parser:
    parser = _Parser(prog="semimodular", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate a series at one point")
    _add_seq_flags(p_eval)
    p_eval.add_argument("--weight", type=int, required=True)
    p_eval.add_argument("--z", required=True, help="RE,IM")
    p_eval.add_argument("--tol", type=float, default=1e-10)
    p_eval.add_argument("--guard-eps", type=float, default=GUARD_EPS)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = subs.add_parser("check", help="residual-scan one invariance law")
    _add_seq_flags(p_check)
    p_check.add_argument("--identity", choices=["inversion", "mirror"], required=True)
    p_check.add_argument("--k", type=int, default=1, help="half-weight; the series weight is 2k")
    p_check.add_argument("--samples", type=int, default=100)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--tol", type=float, default=1e-10, help="per-evaluation tolerance")
    p_check.add_argument("--mirror-a", type=int, default=None, help="override the mirror parameter (negative control)")
    p_check.set_defaults(func=_cmd_check)

    p_poles = subs.add_parser("poles", help="exact pole ratios over an index range")
    _add_seq_flags(p_poles)
    p_poles.add_argument("--nmin", type=int, required=True)
    p_poles.add_argument("--nmax", type=int, required=True)
    p_poles.set_defaults(func=_cmd_poles)

    p_matrix = subs.add_parser("matrix", help="verify generator identities or print a Fibonacci-matrix power")
    group = p_matrix.add_mutually_exclusive_group(required=True)
    group.add_argument("--verify", action="store_true")
    group.add_argument("--fib-power", type=int, default=None, metavar="N")
    _add_format_flag(p_matrix)
    p_matrix.set_defaults(func=_cmd_matrix)

    p_grid = subs.add_parser("grid", help="render a domain-colored PPM raster")
    _add_seq_flags(p_grid)
    p_grid.add_argument("--weight", type=int, required=True)
    p_grid.add_argument("--window", required=True, help="x0,x1,y0,y1")
    p_grid.add_argument("--res", required=True, help="WxH")
    p_grid.add_argument("--out", required=True)
    p_grid.add_argument("--tol", type=float, default=1e-8)
    p_grid.add_argument("--guard-eps", type=float, default=GUARD_EPS)
    p_grid.set_defaults(func=_cmd_grid)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser)
    except SystemExit as exc:
        # Late usage errors raised through parser.error inside a subcommand.
        return int(exc.code or 0)
    except PoleProximity as exc:
        print(f"semimodular: {exc}", file=sys.stderr)
        return EXIT_POLE
    except ToleranceUnreachable as exc:
        print(f"semimodular: {exc}", file=sys.stderr)
        return EXIT_TOL
    except (UncertifiedOnly, InvalidPairing, OddWeight, MobiusPole, ValueError) as exc:
        print(f"semimodular: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"semimodular: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    run()
