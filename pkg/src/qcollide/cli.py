"""Command-line front end emitting plot-ready CSV or JSON data.

Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
4 numerical invariant violation.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

from . import __version__
from .dynamics import (
    SUPERPOSITION_MINUS,
    SUPERPOSITION_PLUS,
    InvariantViolationError,
    default_window,
    markovian_trajectory,
    orbit_sweep,
    random_schedule,
    repeated_schedule,
    run_trajectory,
)
from .metrics import BACKFLOW_TOL, backflow_events
from .model import ThermalAncilla

_EPILOG = {
    "trajectory": (
        "Columns with one ancilla: n,coherence_A,coherence_env,negativity,"
        "trace_distance. Columns with two or three ancillas: n,coherence_A,"
        "trace_distance. Both system copies start in the orthogonal "
        "equal-weight superpositions and share the collision schedule."
    ),
    "orbit": (
        "Columns: p,value. One row per windowed coherence value of the "
        "single-ancilla repeated-collision run at each grid point."
    ),
    "markovian": (
        "Columns: n,p,trace_distance,coherence, sorted by (p, n). A footer "
        "comment reports monotonicity of each trace-distance column."
    ),
}


class ConfigError(ValueError):
    pass


def parse_grid(spec: str) -> list[float]:
    """Parse 'start:stop:step' into an inclusive ascending grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must look like start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise ConfigError(f"non-numeric grid specification {spec!r}") from None
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    count = int((stop - start) / step + 1e-9)
    if stop < start or count < 0:
        raise ConfigError(f"grid {spec!r} is empty")
    return [start + k * step for k in range(count + 1)]


def parse_window(spec: str) -> tuple[int, int]:
    """Parse 'a:b' into a half-open integer range of collision indices."""
    parts = spec.split(":")
    try:
        a, b = (int(x) for x in parts)
    except ValueError:
        raise ConfigError(f"window must look like a:b with integers, got {spec!r}") from None
    if a < 0 or b <= a:
        raise ConfigError(f"window {spec!r} is empty or negative")
    return a, b


def _fmt(x, /) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    if x is None:
        return "none"
    return str(x)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcollide",
        description="Simulate qubit collision dynamics and emit metric series.",
    )
    parser.add_argument("--version", action="version", version=f"qcollide {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("trajectory", "metric series of one collision run"),
        ("orbit", "long-term coherence values over a probability grid"),
        ("markovian", "fresh-ancilla (infinite bath) evolution"),
    ):
        cmd = sub.add_parser(name, help=help_text, epilog=_EPILOG[name])
        cmd.add_argument("--p", action="append", type=float, default=None,
                         metavar="X", help="interaction probability (repeatable for markovian)")
        cmd.add_argument("--p-grid", default=None, metavar="A:B:STEP",
                         help="inclusive probability grid")
        cmd.add_argument("--wg", type=float, default=0.8, metavar="X",
                         help="ancilla ground-state weight (default 0.8)")
        cmd.add_argument("--ancillas", type=int, default=1, metavar="N",
                         help="number of thermal ancillas, 1..3 (default 1)")
        cmd.add_argument("--collisions", type=int, default=100, metavar="N",
                         help="number of collisions (default 100)")
        cmd.add_argument("--seed", type=int, default=None, metavar="N",
                         help="seed for the random collision schedule")
        cmd.add_argument("--window", default=None, metavar="A:B",
                         help="half-open range of collision indices to emit")
        cmd.add_argument("--restrict-system-ancilla", action="store_true",
                         help="draw only system-ancilla pairs in random schedules")
        cmd.add_argument("--backflow-tol", type=float, default=BACKFLOW_TOL, metavar="X",
                         help=f"revival detection tolerance (default {BACKFLOW_TOL})")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv",
                         help="output format (default csv)")
        cmd.add_argument("--out", default=None, metavar="PATH",
                         help="output file (default: standard output)")
    return parser


def _single_p(args) -> float:
    if args.p_grid is not None or args.p is None or len(args.p) != 1:
        raise ConfigError("this command needs exactly one --p value")
    return args.p[0]


def _ancilla(args) -> ThermalAncilla:
    if not 0.0 <= args.wg <= 1.0:
        raise ConfigError(f"--wg must lie in [0, 1], got {args.wg}")
    return ThermalAncilla(args.wg, 1.0 - args.wg)


def _window_or_none(args) -> tuple[int, int] | None:
    return parse_window(args.window) if args.window is not None else None


def _cmd_trajectory(args) -> tuple[dict, list[str], list[list], list[str]]:
    p = _single_p(args)
    if not 1 <= args.ancillas <= 3:
        raise ConfigError(f"--ancillas must be 1..3, got {args.ancillas}")
    if args.collisions < 1:
        raise ConfigError("--collisions must be at least 1")
    ancilla = _ancilla(args)
    n_qubits = 1 + args.ancillas
    if args.ancillas == 1:
        scenario = "single"
        seed = None
        schedule = repeated_schedule(2, (0, 1), args.collisions)
    else:
        scenario = "multi"
        seed = args.seed if args.seed is not None else secrets.randbits(63)
        schedule = random_schedule(
            n_qubits, args.collisions, seed,
            system_ancilla_only=args.restrict_system_ancilla,
        )
    traj = run_trajectory(
        (SUPERPOSITION_PLUS, SUPERPOSITION_MINUS),
        [ancilla] * args.ancillas, p, schedule,
    )
    window = _window_or_none(args)
    header = {
        "command": "trajectory",
        "scenario": scenario,
        "p": p,
        "w_g": args.wg,
        "n_ancillas": args.ancillas,
        "n_collisions": args.collisions,
        "seed": seed,
        "window": args.window,
        "restrict_system_ancilla": bool(args.restrict_system_ancilla),
        "format": args.format,
        "backflow_tol": args.backflow_tol,
    }
    if scenario == "multi":
        header["schedule"] = " ".join(f"{i}-{j}" for i, j in schedule.events)
    if scenario == "single":
        columns = ["n", "coherence_A", "coherence_env", "negativity", "trace_distance"]
        rows = [
            [s.n, s.coherence_a, s.coherence_env, s.negativity, s.trace_distance]
            for s in traj.steps
        ]
    else:
        columns = ["n", "coherence_A", "trace_distance"]
        rows = [[s.n, s.coherence_a, s.trace_distance] for s in traj.steps]
    if window is not None:
        rows = [r for r in rows if window[0] <= r[0] < window[1]]
    report = backflow_events(traj.trace_distance_series(), tol=args.backflow_tol)
    footer = [
        f"backflow_events = {len(report.events)}, total_backflow = "
        f"{_fmt(report.total_backflow)}, max_distance = {_fmt(report.max_distance)} "
        f"(backflow_tol = {_fmt(args.backflow_tol)})"
    ]
    return header, columns, rows, footer


def _cmd_orbit(args) -> tuple[dict, list[str], list[list], list[str]]:
    if args.p_grid is not None:
        if args.p is not None:
            raise ConfigError("give either --p or --p-grid, not both")
        grid = parse_grid(args.p_grid)
    elif args.p is not None and len(args.p) == 1:
        grid = [args.p[0]]
    else:
        raise ConfigError("orbit needs --p-grid or a single --p")
    if args.collisions < 1:
        raise ConfigError("--collisions must be at least 1")
    window = _window_or_none(args) or default_window(args.collisions)
    diagram = orbit_sweep(grid, args.collisions, window, ancilla=_ancilla(args))
    header = {
        "command": "orbit",
        "scenario": "orbit",
        "w_g": args.wg,
        "n_collisions": args.collisions,
        "window": f"{window[0]}:{window[1]}",
        "format": args.format,
    }
    if args.p_grid is not None:
        header["p_grid"] = args.p_grid
    else:
        header["p"] = grid[0]
    rows = [[p, v] for p, vals in zip(diagram.p_grid, diagram.values) for v in vals]
    return header, ["p", "value"], rows, []


def _cmd_markovian(args) -> tuple[dict, list[str], list[list], list[str]]:
    if args.p_grid is not None:
        ps = parse_grid(args.p_grid)
    elif args.p:
        ps = sorted(args.p)
    else:
        raise ConfigError("markovian needs one or more --p values or --p-grid")
    if args.collisions < 1:
        raise ConfigError("--collisions must be at least 1")
    ancilla = _ancilla(args)
    window = _window_or_none(args)
    rows = []
    footer = []
    for p in ps:
        traj = markovian_trajectory(
            (SUPERPOSITION_PLUS, SUPERPOSITION_MINUS), p, ancilla, args.collisions,
        )
        for s in traj.steps:
            if window is None or window[0] <= s.n < window[1]:
                rows.append([s.n, p, s.trace_distance, s.coherence_a])
        report = backflow_events(traj.trace_distance_series(), tol=args.backflow_tol)
        footer.append(
            f"monotone_nonincreasing p = {_fmt(p)}: {_fmt(not report.events)} "
            f"(backflow_events = {len(report.events)}, backflow_tol = {_fmt(args.backflow_tol)})"
        )
    header = {
        "command": "markovian",
        "scenario": "markovian",
        "p": ",".join(_fmt(p) for p in ps),
        "w_g": args.wg,
        "n_collisions": args.collisions,
        "window": args.window,
        "format": args.format,
        "backflow_tol": args.backflow_tol,
    }
    return header, ["n", "p", "trace_distance", "coherence"], rows, footer


def render_csv(header: dict, columns: list[str], rows: list[list], footer: list[str]) -> str:
    lines = [f"# {key} = {_fmt(value)}" for key, value in header.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    lines.extend(f"# {text}" for text in footer)
    return "\n".join(lines) + "\n"


def render_json(header: dict, columns: list[str], rows: list[list], footer: list[str]) -> str:
    doc = {
        "config": dict(header),
        "rows": [dict(zip(columns, row)) for row in rows],
    }
    if footer:
        doc["notes"] = footer
    return json.dumps(doc, indent=2) + "\n"


def read_csv_output(path: str) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Parse an emitted CSV file back into (header dict, columns, data rows).

    Only comments above the column row are configuration; comments after the
    data are footer notes and are skipped.
    """
    header: dict[str, str] = {}
    columns: list[str] = []
    rows: list[list[str]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                if not columns and " = " in line:
                    key, _, value = line[1:].partition(" = ")
                    header[key.strip()] = value.strip()
                continue
            if not columns:
                columns = line.split(",")
            else:
                rows.append(line.split(","))
    return header, columns, rows


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    runners = {
        "trajectory": _cmd_trajectory,
        "orbit": _cmd_orbit,
        "markovian": _cmd_markovian,
    }
    try:
        header, columns, rows, footer = runners[args.command](args)
    except InvariantViolationError as exc:
        print(f"qcollide: numerical invariant violated: {exc}", file=sys.stderr)
        return 4
    except (ConfigError, ValueError) as exc:
        print(f"qcollide: {exc}", file=sys.stderr)
        return 2
    render = render_csv if args.format == "csv" else render_json
    text = render(header, columns, rows, footer)
    try:
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"qcollide: cannot write output: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
