"""Command line entry point.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 target not weakly
visible, 4 iteration cap reached, 5 scene generation budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aspect import disk_aspect_ratio, line_aspect_ratio
from .geom import GeometryError
from .oracle import GenerationBudgetExceeded, Scene, coverage_report, random_scene
from .render import render_svg
from .scenefile import (
    SceneFormatError,
    dumps,
    guard_report,
    load_polygon,
    load_scene,
    read_json,
    save_scene,
    scene_to_dict,
)
from .slicer import IterationCapExceeded, NotWeaklyVisible, SliceError, slice_guards
from .visibility import classify_pair

EXIT_OK = 0
EXIT_UNCOVERED = 1
EXIT_INPUT = 2
EXIT_NOT_WEAK = 3
EXIT_CAP = 4
EXIT_BUDGET = 5


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _err(msg: str) -> None:
    print(f"segguard: {msg}", file=sys.stderr)


def _scene(path) -> Scene:
    try:
        return load_scene(path)
    except OSError as e:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {e.strerror or e}") from e
    except (SceneFormatError, GeometryError) as e:
        raise CliError(EXIT_INPUT, f"{path}: {e}") from e


def _slice(sc: Scene):
    try:
        return slice_guards(sc.polygon, sc.source, sc.target)
    except NotWeaklyVisible as e:
        raise CliError(EXIT_NOT_WEAK, str(e)) from e
    except IterationCapExceeded as e:
        raise CliError(EXIT_CAP, str(e)) from e
    except SliceError as e:
        raise CliError(EXIT_INPUT, f"degenerate scene: {e}") from e


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise CliError(EXIT_INPUT, f"cannot write {path}: {e.strerror or e}") from e


def cmd_classify(args) -> int:
    sc = _scene(args.scene)
    print(classify_pair(sc.polygon, sc.source, sc.target).value)
    return EXIT_OK


def cmd_guards(args) -> int:
    sc = _scene(args.scene)
    gs = _slice(sc)
    covered = None
    if args.samples:
        covered = coverage_report(sc.polygon, gs.guards, gs.target, args.samples).covered_fraction
    text = dumps(guard_report(gs, trace=args.trace, covered=covered))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ar(args) -> int:
    try:
        P = load_polygon(args.path)
    except OSError as e:
        raise CliError(EXIT_INPUT, f"cannot read {args.path}: {e.strerror or e}") from e
    except (SceneFormatError, GeometryError) as e:
        raise CliError(EXIT_INPUT, f"{args.path}: {e}") from e
    la, da = line_aspect_ratio(P), disk_aspect_ratio(P)
    print(f"LW = {la.lw:.6f}")
    print(f"SW = {la.sw:.6f}")
    print(f"AR_line = {la.ar:.6f}")
    print(f"LD = {da.ld:.6f}")
    print(f"SD = {da.sd:.6f}")
    print(f"AR_disk = {da.ar:.6f}")
    if la.witness is None:
        print("SW witness: none")
    else:
        w = la.witness
        print(f"SW witness: ({w.r1.x:g}, {w.r1.y:g}) ({w.r2.x:g}, {w.r2.y:g}) normal ({w.normal.x:.6f}, {w.normal.y:.6f})")
    return EXIT_OK


def cmd_render(args) -> int:
    sc = _scene(args.scene)
    try:
        gs = slice_guards(sc.polygon, sc.source, sc.target)
    except SliceError as e:
        _err(f"drawing scene without guards: {e}")
        gs = None
    _write(args.svg, render_svg(sc, gs, with_trace=args.with_trace))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        sc = random_scene(args.seed, args.vertices)
    except GenerationBudgetExceeded as e:
        raise CliError(EXIT_BUDGET, str(e)) from e
    sc.name = f"seed{args.seed}-n{args.vertices}"
    if args.out:
        try:
            save_scene(sc, args.out)
        except OSError as e:
            raise CliError(EXIT_INPUT, f"cannot write {args.out}: {e.strerror or e}") from e
    else:
        sys.stdout.write(dumps(scene_to_dict(sc)))
    return EXIT_OK


def cmd_verify(args) -> int:
    sc = _scene(args.scene)
    gs = _slice(sc)
    guards = gs.guards
    if args.guards:
        try:
            guards = [tuple(map(float, g)) for g in read_json(args.guards)["guards"]]
        except (OSError, SceneFormatError, KeyError, TypeError, ValueError) as e:
            raise CliError(EXIT_INPUT, f"bad guard file {args.guards}: {e}") from e
    rep = coverage_report(sc.polygon, guards, sc.target, args.samples)
    print(f"guards={len(guards)} samples={rep.samples} coveredFraction={rep.covered_fraction:.6f}")
    if rep.uncovered:
        for s, p in rep.uncovered[:10]:
            _err(f"uncovered at t={s:.6f} ({p.x:.6f}, {p.y:.6f})")
        return EXIT_UNCOVERED
    return EXIT_OK


def _vertices(text: str) -> int:
    n = int(text)
    if n < 4:
        raise argparse.ArgumentTypeError("need at least 4 vertices")
    return n


def _samples(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("need at least 2 samples")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="segguard", description="Guard a target segment from points on a source segment.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="visibility class of the scene's segment pair")
    p.add_argument("scene")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("guards", help="place guards on the source")
    p.add_argument("scene")
    p.add_argument("--trace", action="store_true", help="include the iteration trace")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--samples", type=_samples, help="also report sampled coverage")
    p.set_defaults(func=cmd_guards)

    p = sub.add_parser("ar", help="widths and aspect ratios of the polygon")
    p.add_argument("path", help="scene or polygon file")
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("render", help="draw the scene as SVG")
    p.add_argument("scene")
    p.add_argument("--svg", required=True)
    p.add_argument("--with-trace", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("gen", help="generate a random weakly visible scene")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=_vertices, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="slice and check coverage by sampling")
    p.add_argument("scene")
    p.add_argument("--samples", type=_samples, default=10000)
    p.add_argument("--guards", help="check this guard file instead of the computed guards")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        _err(str(e))
        return e.code


if __name__ == "__main__":
    sys.exit(main())
