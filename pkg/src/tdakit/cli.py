"""Command line entry points.

Every subcommand reads plain-text files (see the io module for formats),
writes results to stdout or, with -o, atomically to a file, and exits with
0 on success, 2 on unusable input files or arguments, 3 on domain errors
(asymmetric matrices, mismatched essential classes, and the like), and 4 on
internal failures. Commands that draw random numbers take --seed and fall
back to the TDAKIT_SEED environment variable, then to 0.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .builders import circle_distance_bitmap, percolation_sweep
from .errors import BadParameter, ParseError, TdaError
from .io import (
    atomic_write_text,
    format_diagram,
    format_heat_map,
    format_landscape,
    read_diagram,
    read_grid,
    read_landscape,
    read_matrix,
    read_points,
    read_series,
    sniff_plot_input,
    sniff_points_or_matrix,
)
from .metrics import bottleneck_distance, wasserstein_distance
from .pipelines import (
    cubical_diagram,
    rips_diagram,
    rips_diagram_from_matrix,
    sliding_window_diagram,
)
from .plotting import plot_barcode, plot_diagram, plot_landscape
from .representations import build_heat_map, build_landscape, permutation_test


def _emit(text: str, output):
    if output is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(output, text)


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("TDAKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise BadParameter(f"TDAKIT_SEED must be an integer, got {env!r}") from None
    return 0


def _cmd_rips(args) -> int:
    kind = "matrix" if args.matrix else sniff_points_or_matrix(args.input)
    if kind == "matrix":
        diagram = rips_diagram_from_matrix(
            read_matrix(args.input), args.max_edge, args.max_dim, args.engine
        )
    else:
        diagram = rips_diagram(read_points(args.input), args.max_edge, args.max_dim, args.engine)
    _emit(format_diagram(diagram), args.output)
    return 0


def _cmd_cubical(args) -> int:
    if (args.input is None) == (args.demo_circle is None):
        raise BadParameter("pass exactly one of INPUT or --demo-circle")
    if args.demo_circle is not None:
        bitmap = circle_distance_bitmap(args.demo_circle)
    else:
        bitmap = read_grid(args.input)
    diagram = cubical_diagram(bitmap, binary=args.binary, engine=args.engine)
    _emit(format_diagram(diagram), args.output)
    return 0


def _cmd_slide(args) -> int:
    if (args.input is None) == (args.demo_sin is None):
        raise BadParameter("pass exactly one of INPUT or --demo-sin")
    if args.demo_sin is not None:
        if args.demo_sin < 2:
            raise BadParameter("--demo-sin needs at least 2 samples")
        values = np.sin(np.linspace(0.0, 10.0 * np.pi, args.demo_sin))
    else:
        values = read_series(args.input)
    diagram = sliding_window_diagram(
        values, args.window, args.max_edge, args.max_dim, args.engine, args.stride
    )
    _emit(format_diagram(diagram), args.output)
    return 0


def _cmd_distance(args) -> int:
    first = read_diagram(args.first).pairs(args.dim)
    second = read_diagram(args.second).pairs(args.dim)
    if args.metric == "bottleneck":
        value = bottleneck_distance(first, second, args.essential_cutoff)
    else:
        value = wasserstein_distance(first, second, args.q, args.essential_cutoff)
    sys.stdout.write(f"{value:.17g}\n")
    return 0


def _cmd_landscape(args) -> int:
    pairs = read_diagram(args.input).pairs(args.dim)
    _emit(format_landscape(build_landscape(pairs)), args.output)
    return 0


def _cmd_heatmap(args) -> int:
    pairs = read_diagram(args.input).pairs(args.dim)
    if len(args.resolution) > 2:
        raise BadParameter("--resolution takes one or two integers")
    resolution = tuple(args.resolution) if len(args.resolution) == 2 else int(args.resolution[0])
    window = None
    if args.window is not None:
        window = ((args.window[0], args.window[1]), (args.window[2], args.window[3]))
    heat_map = build_heat_map(
        pairs,
        resolution,
        args.bandwidth,
        mode=args.mode,
        window=window,
        truncation_radius=args.truncation_radius,
    )
    _emit(format_heat_map(heat_map), args.output)
    return 0


def _cmd_permtest(args) -> int:
    group_a = [read_diagram(path).pairs(args.dim) for path in args.a]
    group_b = [read_diagram(path).pairs(args.dim) for path in args.b]
    result = permutation_test(
        group_a, group_b, args.permutations, _resolve_seed(args.seed), args.p
    )
    sys.stdout.write(f"p-value {result.p_value:.17g}\n")
    sys.stdout.write(f"distance {result.observed_distance:.17g}\n")
    return 0


def _cmd_percolate(args) -> int:
    rows = percolation_sweep(args.dims, args.p, args.trials, _resolve_seed(args.seed))
    k = len(args.dims)
    lines = ["# p " + " ".join(f"betti_{d}" for d in range(k))]
    for row in rows:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_plot(args) -> int:
    kind = sniff_plot_input(args.input)
    style = args.style
    if kind == "landscape":
        if style not in (None, "landscape"):
            raise BadParameter(f"a landscape file cannot be drawn as {style}")
        text = plot_landscape(read_landscape(args.input))
    else:
        if style == "landscape":
            raise BadParameter("a diagram file cannot be drawn as landscape")
        diagram = read_diagram(args.input)
        text = plot_barcode(diagram) if style == "barcode" else plot_diagram(diagram)
    _emit(text, args.output)
    return 0


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("-o", "--output", metavar="PATH", help="write here instead of stdout")


def _add_engine(p: argparse.ArgumentParser, streamed: bool):
    choices = ["auto", "reference", "compiled"] + (["streamed"] if streamed else [])
    p.add_argument("--engine", choices=choices, default="auto", help="reduction engine")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdakit", description="Persistent homology toolkit for point clouds, grids, and time series."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rips", help="Rips diagram of a point cloud or distance matrix")
    p.add_argument("input", metavar="INPUT", help="points file, or matrix file (see --matrix)")
    p.add_argument("--max-edge", type=float, required=True, help="largest edge length admitted")
    p.add_argument("--max-dim", type=int, default=1, help="clique dimension cap (default 1)")
    p.add_argument("--matrix", action="store_true", help="treat INPUT as a distance matrix")
    _add_engine(p, streamed=True)
    _add_output(p)
    p.set_defaults(func=_cmd_rips)

    p = sub.add_parser("cubical", help="sublevel diagram of a grid of values")
    p.add_argument("input", metavar="INPUT", nargs="?", help="grid file")
    p.add_argument("--binary", action="store_true", help="grid holds 0/1 presence values")
    p.add_argument(
        "--demo-circle",
        type=int,
        metavar="N",
        help="use the distance-to-circle demo grid with 2N+1 cells per axis",
    )
    _add_engine(p, streamed=False)
    _add_output(p)
    p.set_defaults(func=_cmd_cubical)

    p = sub.add_parser("slide", help="Rips diagram of a sliding-window embedding")
    p.add_argument("input", metavar="INPUT", nargs="?", help="series file, one or more values per line")
    p.add_argument("--demo-sin", type=int, metavar="M", help="use M samples of sin on [0, 10 pi]")
    p.add_argument("--window", type=int, required=True, help="embedding window length")
    p.add_argument("--max-edge", type=float, required=True, help="largest edge length admitted")
    p.add_argument("--max-dim", type=int, default=1, help="clique dimension cap (default 1)")
    p.add_argument("--stride", type=int, default=1, help="keep every stride-th window")
    _add_engine(p, streamed=True)
    _add_output(p)
    p.set_defaults(func=_cmd_slide)

    p = sub.add_parser("distance", help="distance between two diagram files in one degree")
    p.add_argument("first", metavar="A")
    p.add_argument("second", metavar="B")
    p.add_argument("--metric", choices=["bottleneck", "wasserstein"], default="bottleneck")
    p.add_argument("--dim", type=int, default=1, help="homology degree (default 1)")
    p.add_argument("--q", type=float, default=2.0, help="Wasserstein exponent (default 2)")
    p.add_argument(
        "--essential-cutoff",
        type=float,
        default=None,
        help="replace infinite deaths with this value on both sides",
    )
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("landscape", help="landscape of one degree of a diagram file")
    p.add_argument("input", metavar="INPUT")
    p.add_argument("--dim", type=int, default=1, help="homology degree (default 1)")
    _add_output(p)
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("heatmap", help="Gaussian heat map of one degree of a diagram file")
    p.add_argument("input", metavar="INPUT")
    p.add_argument("--dim", type=int, default=1, help="homology degree (default 1)")
    p.add_argument("--bandwidth", type=float, required=True, help="Gaussian bandwidth")
    p.add_argument(
        "--resolution", type=int, nargs="+", default=[64], help="cells per axis, one or two values"
    )
    p.add_argument(
        "--mode",
        choices=["constant", "persistence-weighted", "signed-symmetric"],
        default="constant",
    )
    p.add_argument(
        "--truncation-radius",
        type=float,
        default=None,
        help="ignore contributions beyond this distance (default 3 bandwidths, inf to disable)",
    )
    p.add_argument(
        "--window",
        type=float,
        nargs=4,
        metavar=("BMIN", "BMAX", "DMIN", "DMAX"),
        help="birth and death ranges (default: span of the data, padded)",
    )
    _add_output(p)
    p.set_defaults(func=_cmd_heatmap)

    p = sub.add_parser("permtest", help="two-sample permutation test on landscape distance")
    p.add_argument("--a", nargs="+", required=True, metavar="FILE", help="first group of diagram files")
    p.add_argument("--b", nargs="+", required=True, metavar="FILE", help="second group of diagram files")
    p.add_argument("--dim", type=int, default=1, help="homology degree (default 1)")
    p.add_argument("--permutations", type=int, default=1000, help="shuffle count (default 1000)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default TDAKIT_SEED or 0)")
    p.add_argument("--p", type=float, default=2.0, help="landscape norm exponent (default 2)")
    p.set_defaults(func=_cmd_permtest)

    p = sub.add_parser("percolate", help="mean Betti numbers of random grids per occupancy p")
    p.add_argument("--dims", type=int, nargs="+", required=True, help="grid extents")
    p.add_argument("--p", type=float, nargs="+", required=True, help="occupancy probabilities, ascending")
    p.add_argument("--trials", type=int, default=20, help="grids per probability (default 20)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default TDAKIT_SEED or 0)")
    _add_output(p)
    p.set_defaults(func=_cmd_percolate)

    p = sub.add_parser("plot", help="render a diagram or landscape file as SVG")
    p.add_argument("input", metavar="INPUT")
    p.add_argument(
        "--style",
        choices=["diagram", "barcode", "landscape"],
        default=None,
        help="default: diagram scatter, or landscape for landscape files",
    )
    _add_output(p)
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TdaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
