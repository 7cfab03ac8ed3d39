"""Command-line front end: eval, digits, graph, render, verify."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import curve, geometry, render, revolving, verify
from .binary import parse_x
from .exact import DyadicGaussian, format_decimal, format_exact

_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:\.\d*)?(?:/\d+)?)?"
    r"(?:(?P<im>[+-]?(?:\d+(?:\.\d*)?(?:/\d+)?)?)\*?[ij])?$"
)


class CliError(Exception):
    """A failure reported on stderr with exit status 1."""


class UsageError(Exception):
    """Bad input; reported with the usage line and exit status 2."""


def _parse_word(text: str, n_digits: int):
    try:
        return parse_x(text, n_digits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_complex(text: str):
    """``"a+bi"`` -> DyadicGaussian when both parts are dyadic, else complex."""
    compact = text.replace(" ", "")
    m = _COMPLEX_RE.match(compact)
    if m and compact:
        re_txt, im_txt = m.group("re"), m.group("im")
        re_part = Fraction(re_txt) if re_txt else Fraction(0)
        if im_txt is None:
            im_part = Fraction(0)
        elif im_txt in ("", "+", "-"):
            im_part = Fraction(-1 if im_txt == "-" else 1)
        else:
            im_part = Fraction(im_txt)
        try:
            return DyadicGaussian.coerce(re_part) + DyadicGaussian.coerce(im_part) * DyadicGaussian(0, 1)
        except ValueError:
            return complex(float(re_part), float(im_part))
    try:
        return complex(compact.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levydragon",
        description="Revolving digit expansions of the Levy dragon and its s-shifted translate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate f (levy) or G (shifted) at x")
    p.add_argument("--curve", choices=curve.CURVES, required=True)
    p.add_argument("--x", required=True, help='x as "0.0101b", "p/q" or a decimal')
    p.add_argument("--terms", type=_positive, default=128, help="series terms (default 128)")
    p.add_argument("--exact", action="store_true", help="print only the exact value")
    p.add_argument("--oracle", choices=("recursion", "ifs", "decode"), help="cross-check with an oracle")

    p = sub.add_parser("digits", help="print the xi (levy) or gamma (shifted) digits of x")
    p.add_argument("--curve", choices=curve.CURVES, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("-n", type=_positive, required=True, help="number of digits")
    p.add_argument("--via", choices=("formula", "graph"), default="formula")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("graph", help="emit the G1 or G2 digit automaton")
    p.add_argument("--which", choices=("g1", "g2"), required=True)
    p.add_argument("--format", choices=("dot",), default="dot")

    p = sub.add_parser("render", help="draw a depth-D polyline of a curve")
    p.add_argument("--curve", choices=("levy", "shifted", "general"), required=True)
    p.add_argument("--lambda", dest="lam", type=parse_complex, default=DyadicGaussian(1))
    p.add_argument("--tau", type=parse_complex, default=DyadicGaussian(0))
    p.add_argument("--depth", type=_non_negative, required=True)
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    p.add_argument("--color", choices=render.COLOR_MODES, default="solid")
    p.add_argument("--size", type=_positive, default=800, help="SVG width and height in pixels")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=verify.suite_names(), default="all")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    return parser


def _cmd_eval(args, out) -> int:
    w = _parse_word(args.x, args.terms)
    point = curve.evaluate(args.curve, w, args.terms)
    if args.exact:
        if point.exact is None:
            raise CliError(f"no exact value: {w} is not a terminating dyadic within {args.terms} digits")
        out.write(f"{format_exact(point.exact)}\n")
    else:
        if point.exact is not None:
            out.write(f"exact {format_exact(point.exact)}\n")
        out.write(
            f"approx {format_decimal(point.approx)} tail_bound={point.tail_bound:.3g} terms={point.terms_used}\n"
        )
    if args.oracle:
        return _run_oracle(args, w, point, out)
    return 0


def _run_oracle(args, w, point, out) -> int:
    if args.oracle == "recursion":
        value = curve.recursion_oracle(args.curve, w)
        ok = point.exact == value if point.exact is not None else False
        out.write(f"oracle recursion exact {format_exact(value)} {'agrees' if ok else 'DISAGREES'}\n")
    elif args.oracle == "ifs":
        depth = min(args.terms, 64) if not w.terminating else 64
        value = curve.ifs_limit_oracle(curve.curve_maps(args.curve), w, depth)
        slack = point.tail_bound + 2 * (2**-0.5) ** depth
        gap = abs(value - point.approx)
        ok = gap <= max(slack, 1e-12)
        out.write(
            f"oracle ifs approx {format_decimal(value)} gap={gap:.3g} bound={slack:.3g} "
            f"{'agrees' if ok else 'DISAGREES'}\n"
        )
    else:
        n = max(w.width, 1) if not w.is_one else args.terms
        seq = (revolving.xi_sequence if args.curve == "levy" else revolving.gamma_sequence)(w, n)
        decoded = curve.decode_digits(seq, args.curve)
        if point.exact is not None and not w.is_one:
            ok = decoded.exact == point.exact
        else:
            ok = abs(decoded.approx - point.approx) <= point.tail_bound + curve.truncation_bound(n, args.curve)
        out.write(f"oracle decode exact {format_exact(decoded.exact)} {'agrees' if ok else 'DISAGREES'}\n")
    return 0 if ok else 1


def _cmd_digits(args, out) -> int:
    w = _parse_word(args.x, args.n)
    if args.via == "graph":
        seq = revolving.automaton_run(revolving.build_graph("G1" if args.curve == "levy" else "G2"), w, args.n)
    elif args.curve == "levy":
        seq = revolving.xi_sequence(w, args.n)
    else:
        seq = revolving.gamma_sequence(w, args.n)
    if args.json:
        out.write(json.dumps([str(d) for d in seq]) + "\n")
    else:
        out.write(revolving.format_digits(seq) + "\n")
    return 0


def _cmd_graph(args, out) -> int:
    out.write(revolving.graph_to_dot(revolving.build_graph(args.which)))
    return 0


def _cmd_render(args, out) -> int:
    if args.curve == "general":
        maps = geometry.general_family(args.lam, args.tau)
    else:
        maps = curve.curve_maps(args.curve)
    poly = geometry.attractor_polyline(maps, args.depth, curve=args.curve)
    target = open(args.output, "w", newline="") if args.output else out
    try:
        if args.format == "csv":
            render.write_csv(poly, target)
        else:
            spec = render.RenderSpec(width=args.size, height=args.size, color_mode=args.color)
            target.write(render.to_svg(poly, spec))
    finally:
        if args.output:
            target.close()
    return 0


def _cmd_verify(args, out) -> int:
    results = verify.run_suite(args.suite, seed=args.seed)
    for r in results:
        out.write(r.line() + "\n")
    failed = [r for r in results if not r.passed]
    if failed:
        out.write(f"first failing property: {failed[0].name}\n")
        return 1
    out.write(f"all {len(results)} properties passed\n")
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "digits": _cmd_digits,
    "graph": _cmd_graph,
    "render": _cmd_render,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"levydragon {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError) as exc:
        print(f"levydragon {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
