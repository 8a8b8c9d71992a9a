"""``wallcross`` command line: presets, wall reports, scans, plots, self test.

Exit codes: 0 success, 1 scan found violations (or selftest failed),
2 unparseable input, 3 input violating a mathematical precondition.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .chern import ChernCharacter, ideal_sheaf_twist, line_bundle, structure_sheaf
from .errors import WallcrossError
from .lattice import DivisorClass, SurfacePreset, hirzebruch, product_of_lines
from .render import RenderSpec, render_svg
from .scan import (
    ScanBounds,
    dual_scan_for_shift,
    symmetric_grid,
    verify_no_negative_curves,
    verify_rank2_conjecture,
)
from .selftest import format_table, run_selftest
from .serialize import (
    chern_to_json,
    load_scan_config,
    load_surface,
    surface_to_json,
    wall_report,
)
from .walls import wall

EXIT_VIOLATIONS, EXIT_PARSE, EXIT_MATH = 1, 2, 3


class ParseError(ValueError):
    pass


PRESETS = {
    "f1": lambda: hirzebruch(1),
    "f2": lambda: hirzebruch(2),
    "p1p1": product_of_lines,
}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(x) for x in text.split(",") if x.strip()]


def parse_class(text: str, surface: SurfacePreset) -> DivisorClass:
    """``a,b,...`` in the lattice basis, or ``cone(a,b)`` in effective-cone coordinates."""
    text = text.strip()
    m = re.fullmatch(r"cone\((.*)\)", text)
    if m:
        vals = _rational_list(m.group(1))
        if len(vals) != 2:
            raise ParseError("cone(...) takes two coordinates")
        return surface.cone_class(*vals)
    vals = _rational_list(text)
    if len(vals) != surface.lattice.rank:
        raise ParseError(f"expected {surface.lattice.rank} lattice coordinates, got {text!r}")
    return surface.lattice.divisor(*vals)


def parse_chern(text: str, surface: SurfacePreset) -> ChernCharacter:
    """Parse ``O(-C)``, ``O(C)``, ``IZ(C;n)``, ``TOR(C)``, ``TOR(C;n)`` or ``raw r;c1;ch2``."""
    text = text.strip()
    if text.startswith("raw"):
        parts = text[3:].strip().split(";")
        if len(parts) != 3:
            raise ParseError("raw takes 'r;c1;ch2'")
        r = _rational(parts[0])
        if r.denominator != 1:
            raise ParseError("rank must be an integer")
        return ChernCharacter(int(r), parse_class(parts[1], surface), _rational(parts[2]))
    m = re.fullmatch(r"(O|IZ|TOR)\((.*)\)", text)
    if not m:
        raise ParseError(f"unrecognized object {text!r}")
    head, body = m.groups()
    if head == "O":
        neg = body.startswith("-")
        C = parse_class(body[1:] if neg else body, surface)
        return line_bundle(-C if neg else C)
    cls, _, n = body.partition(";")
    C = parse_class(cls, surface)
    n = _rational(n) if n else Fraction(0)
    if n.denominator != 1 or n < 0:
        raise ParseError("length must be a non-negative integer")
    if head == "IZ":
        return ideal_sheaf_twist(C, int(n))
    return ChernCharacter(0, C, C.square() / 2 - int(n))


def _surface(path: str) -> SurfacePreset:
    if path.lower() in PRESETS and not Path(path).exists():
        return PRESETS[path.lower()]()
    try:
        return load_surface(path)
    except FileNotFoundError as exc:
        raise ParseError(f"no such surface file: {path}") from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed surface file {path}: {exc}") from exc


def _base(surface: SurfacePreset, name: str) -> ChernCharacter:
    o = structure_sheaf(surface.lattice)
    if name == "O":
        return o
    if name == "O[1]":
        return -o
    raise ParseError(f"base must be O or O[1], got {name!r}")


def _emit(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_preset(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    names = PRESETS if args.name == "all" else [args.name]
    for name in names:
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(surface_to_json(PRESETS[name]()), indent=2) + "\n")
        print(path)
    return 0


def cmd_wall(args) -> int:
    surface = _surface(args.surface)
    ch = parse_chern(args.object, surface)
    base = _base(surface, args.base)
    w = wall(ch, base, surface.frame)
    grid = _rational_list(args.u_grid) if args.u_grid else ()
    report = {
        "surface": surface.name,
        "object": chern_to_json(ch),
        "base": args.base,
        "wall": wall_report(w, grid, shifted_base=args.base == "O[1]"),
    }
    if args.svg:
        Path(args.svg).write_text(render_svg([(args.object, w)], RenderSpec()))
        report["svg"] = args.svg
    _emit(report, args.out)
    return 0


def _bounds(args) -> ScanBounds:
    grid = _rational_list(args.u_grid) if args.u_grid else symmetric_grid(args.grid_points, _rational(args.grid_top))
    return ScanBounds(args.N, args.max_length, tuple(grid), args.max_rank)


def cmd_scan(args) -> int:
    injected = ()
    if args.config:
        try:
            cfg = load_scan_config(args.config)
        except FileNotFoundError as exc:
            raise ParseError(f"no such file: {exc.filename}") from exc
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed scan config: {exc}") from exc
        surface, bounds, mode, injected = cfg.surface, cfg.bounds, cfg.mode, cfg.injected
        workers = args.workers or cfg.workers
    else:
        if not args.surface:
            raise ParseError("scan needs a surface file or --config")
        surface, bounds, mode, workers = _surface(args.surface), _bounds(args), args.mode, args.workers
    if args.mode_given:
        mode = args.mode
    mode = mode.replace("-", "_")
    if mode in ("one_negative", "two_negative"):
        report = verify_rank2_conjecture(surface, bounds, mode, injected, workers)
    elif mode == "no_negative":
        report = verify_no_negative_curves(surface, bounds, injected, workers)
    elif mode in ("dual", "dual_two_negative"):
        report = dual_scan_for_shift(surface, bounds, "two_negative" if mode == "dual_two_negative" else "one_negative",
                                     workers)
    else:
        raise ParseError(f"unknown mode {mode!r}")
    _emit(report.to_json(), args.out)
    status = "certified" if report.certified else f"{len(report.violations)} violation(s)"
    print(f"{report.mode} on {report.surface}: {status} ({report.timing:.2f}s)", file=sys.stderr)
    return 0 if report.certified else EXIT_VIOLATIONS


def cmd_plot(args) -> int:
    surface = _surface(args.surface)
    base = _base(surface, args.base)
    walls = [(spec, wall(parse_chern(spec, surface), base, surface.frame)) for spec in args.objects]
    vp = _rational_list(args.viewport)
    if len(vp) != 4:
        raise ParseError("viewport takes xmin,xmax,ymin,ymax")
    mu = _rational_list(args.mu_lines) if args.mu_lines else ()
    spec = RenderSpec(args.plane, _rational(args.u) if args.u is not None else None, tuple(vp), args.samples,
                      not args.no_pw, not args.no_asymptotes, tuple(mu))
    svg = render_svg(walls, spec)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed, args.n)
    print(format_table(results))
    return 0 if all(r.ok for r in results) else EXIT_VIOLATIONS


class _ModeAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.mode_given = True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wallcross", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("preset", help="write surface presets as JSON")
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--name", default="all", choices=["all", *PRESETS])
    sp.set_defaults(func=cmd_preset)

    sw = sub.add_parser("wall", help="wall report for one object")
    sw.add_argument("surface", help="surface JSON file (or f1, f2, p1p1)")
    sw.add_argument("object", help="O(-C), O(C), IZ(C;n), TOR(C;n) or 'raw r;c1;ch2'")
    sw.add_argument("--base", default="O", help="O or O[1]")
    sw.add_argument("--u-grid", help="comma-separated u values for the circle table")
    sw.add_argument("--svg", help="also write a t = 0 plot here")
    sw.add_argument("--out", help="write JSON here instead of stdout")
    sw.set_defaults(func=cmd_wall)

    ss = sub.add_parser("scan", help="bounded destabilizer scan")
    ss.add_argument("surface", nargs="?", help="surface JSON file (or f1, f2, p1p1)")
    ss.add_argument("--config", help="scan.json with surface, bounds, mode and injected candidates")
    ss.add_argument("--mode", default="one-negative", action=_ModeAction,
                    choices=["one-negative", "two-negative", "no-negative", "dual", "dual-two-negative"])
    ss.add_argument("--N", type=int, default=8, help="bound on cone coordinates")
    ss.add_argument("--max-length", type=int, default=5, help="bound on the length of Z")
    ss.add_argument("--max-rank", type=int, default=4, help="bound on rank reduction chains")
    ss.add_argument("--grid-points", type=int, default=25)
    ss.add_argument("--grid-top", default="3")
    ss.add_argument("--u-grid", help="explicit comma-separated u values")
    ss.add_argument("--workers", type=int, default=None)
    ss.add_argument("--out", help="write the report here instead of stdout")
    ss.set_defaults(func=cmd_scan, mode_given=False)

    pp = sub.add_parser("plot", help="SVG of walls")
    pp.add_argument("surface")
    pp.add_argument("objects", nargs="+")
    pp.add_argument("--base", default="O")
    pp.add_argument("--plane", default="T0", choices=["T0", "PiU"])
    pp.add_argument("--u", help="u of the plane for --plane PiU")
    pp.add_argument("--viewport", default="-3,3,-3,3")
    pp.add_argument("--samples", type=int, default=200)
    pp.add_argument("--no-pw", action="store_true")
    pp.add_argument("--no-asymptotes", action="store_true")
    pp.add_argument("--mu-lines", help="comma-separated s values of vertical reference lines")
    pp.add_argument("--out")
    pp.set_defaults(func=cmd_plot)

    st = sub.add_parser("selftest", help="seeded invariant suites")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--n", type=int, default=200)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (WallcrossError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
