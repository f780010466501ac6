"""Command-line front end.

Exit codes: 0 success (or all hypotheses hold), 1 checked and failed,
2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .chern import (
    ChernClass,
    bogomolov_check,
    discriminant,
    euler_characteristic,
    is_lattice_class,
    slope,
)
from .config import ConfigError, JobConfig, load_config, set_field
from .core import Surface, format_rational
from .kernel import check_theorem_hypotheses, destabilizing_wall
from .svg import WallDiagram, Window
from .walls import (
    EnumerationConfig,
    Semicircle,
    VerticalLine,
    candidates_to_csv,
    classify_wall,
    default_rank_range,
    enumerate_candidate_walls,
    sqrt_upper,
    vertical_wall,
    wall_coefficients,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

# options that take a value; used to let values such as "-1,0,0" through
_VALUE_FLAGS = {
    "--config", "--surface", "--h2", "--lambda", "--chi-o", "--class", "--h0", "--reg",
    "--rank-range", "--deg-step", "--ch2-step", "--min-radius-sq", "--beta-min",
    "--beta-max", "--alpha-max", "--out", "--format", "--jobs",
}

_FLAG_KEYS = {
    "surface": "surface", "h2": "h2", "lambda": "lambda", "chi_o": "chi-o", "h0": "h0",
    "reg": "reg", "rank_range": "rank-range", "deg_step": "deg-step", "ch2_step": "ch2-step",
    "min_radius_sq": "min-radius-sq", "beta_min": "beta-min", "beta_max": "beta-max",
    "alpha_max": "alpha-max", "out": "out", "format": "format", "jobs": "jobs",
}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("job")
    g.add_argument("--config", help="flat key = value job file; flags override it")
    g.add_argument("--surface", help="del-pezzo:<d> or p2")
    g.add_argument("--h2", help="H^2 of a custom surface")
    g.add_argument("--lambda", dest="lambda", help="-K = lambda H on a custom surface")
    g.add_argument("--chi-o", dest="chi_o", help="chi(O_X) of a custom surface (default 1)")
    g.add_argument("--class", dest="classes", action="append", default=[],
                   help="class literal r,d,c or NAME=r,d,c; repeatable")
    g.add_argument("--h0", help="number of global sections of E")
    g.add_argument("--reg", help="Castelnuovo-Mumford regularity (twist bound)")
    g.add_argument("--rank-range", dest="rank_range", help="a..b")
    g.add_argument("--deg-step", dest="deg_step")
    g.add_argument("--ch2-step", dest="ch2_step")
    g.add_argument("--min-radius-sq", dest="min_radius_sq")
    g.add_argument("--beta-min", dest="beta_min")
    g.add_argument("--beta-max", dest="beta_max")
    g.add_argument("--alpha-max", dest="alpha_max")
    g.add_argument("--out", help="output path (default stdout)")
    g.add_argument("--format", help="text, csv, svg or json")
    g.add_argument("--jobs", help="worker processes for enumeration")

    parser = argparse.ArgumentParser(
        prog="tiltwalls",
        description="Exact tilt-stability walls and kernel-sheaf checks on polarized surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="slope, discriminant, chi per class")
    sub.add_parser("wall", parents=[common], help="numerical wall of the first two classes")
    sub.add_parser("kernel-check", parents=[common], help="check the kernel stability hypotheses")
    sub.add_parser("enumerate", parents=[common], help="candidate destabilizing walls as CSV")
    sub.add_parser("plot", parents=[common], help="SVG picture of the walls")
    return parser


def _job_from_args(args: argparse.Namespace) -> JobConfig:
    base = load_config(args.config) if args.config else JobConfig()
    flags = JobConfig()
    for attr, key in _FLAG_KEYS.items():
        value = getattr(args, attr)
        if value is not None:
            set_field(flags, key, value, f"--{key}")
    for n, literal in enumerate(args.classes, start=1):
        name, sep, body = literal.partition("=")
        if not sep:
            name, body = f"arg{n}", literal
        set_field(flags, f"class.{name}", body, "--class")
    return base.merged(flags)


def _classes(job: JobConfig, at_least: int) -> list[tuple[str, ChernClass]]:
    items = list(job.classes.items())
    if len(items) < at_least:
        raise ConfigError(f"need at least {at_least} class(es), got {len(items)}", "class")
    return items


def _emit(text: str, job: JobConfig):
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_invariants(job: JobConfig) -> int:
    s = job.build_surface()
    rows = []
    for name, x in _classes(job, 1):
        rows.append({
            "name": name,
            "class": x.literal(),
            "slope": format_rational(slope(x)),
            "disc": format_rational(discriminant(x)),
            "chi": format_rational(euler_characteristic(s, x)),
            "bogomolov": bogomolov_check(x),
            "lattice": is_lattice_class(x),
        })
    if job.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", job)
        return EXIT_OK
    lines = [f"surface: {s.describe()}"]
    for row in rows:
        lines.append(
            f"{row['name']} = ({row['class']}): mu={row['slope']} disc={row['disc']} chi={row['chi']} "
            f"bogomolov={'yes' if row['bogomolov'] else 'no'} lattice={'yes' if row['lattice'] else 'no'}"
        )
    _emit("\n".join(lines) + "\n", job)
    return EXIT_OK


def _wall_fields(w) -> tuple[str, str, str]:
    if isinstance(w, Semicircle):
        return "semicircle", format_rational(w.center), format_rational(w.radius_sq)
    if isinstance(w, VerticalLine):
        return "vertical", format_rational(w.beta), ""
    return str(w).lower(), "", ""


def cmd_wall(job: JobConfig) -> int:
    (ne, e), (nf, f) = _classes(job, 2)[:2]
    coeffs = wall_coefficients(e, f)
    wall = classify_wall(e, f)
    xs = [format_rational(v) for v in (coeffs.x, coeffs.y, coeffs.z)]
    if job.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["e", "f", "x", "y", "z", "kind", "position", "radius_sq"])
        w.writerow([e.literal(), f.literal(), *xs, *_wall_fields(wall)])
        _emit(buf.getvalue(), job)
        return EXIT_OK
    text = (
        f"W({ne}, {nf}) with {ne} = ({e.literal()}), {nf} = ({f.literal()})\n"
        f"coefficients: x={xs[0]} y={xs[1]} z={xs[2]}\n"
        f"equation: ({xs[0]})*alpha^2 + ({xs[0]})*beta^2 - 2*({xs[1]})*beta + 2*({xs[2]}) = 0\n"
        f"wall: {wall}\n"
    )
    _emit(text, job)
    return EXIT_OK


def _h0_or_default(job: JobConfig, s: Surface, e: ChernClass) -> int:
    if job.h0 is not None:
        return job.h0
    chi = euler_characteristic(s, e)
    if chi.denominator != 1 or chi < e.rank:
        raise ConfigError(f"h0 not given and chi(E) = {format_rational(chi)} is not a usable default", "h0")
    print(f"warning: h0 not given; using chi(E) = {chi}, which presumes h1(E) = h2(E) = 0",
          file=sys.stderr)
    return int(chi)


def cmd_kernel_check(job: JobConfig) -> int:
    s = job.build_surface()
    _, e = _classes(job, 1)[0]
    h0 = _h0_or_default(job, s, e)
    report = check_theorem_hypotheses(s, e, h0)
    _emit(report.to_json() + "\n" if job.format == "json" else report.render(), job)
    return EXIT_OK if report.holds else EXIT_FAIL


def _enumeration_target(job: JobConfig, e: ChernClass) -> ChernClass:
    # with h0 the walls of the shifted kernel M[1] = E - h0 O are enumerated
    if job.h0 is None:
        return e
    return ChernClass(e.rank - job.h0, e.deg, e.ch2)


def _enumeration_config(job: JobConfig, s: Surface, target: ChernClass) -> EnumerationConfig:
    try:
        return EnumerationConfig(
            rank_range=job.rank_range or default_rank_range(s, target),
            deg_step=job.deg_step if job.deg_step is not None else Fraction(1),
            ch2_step=job.ch2_step if job.ch2_step is not None else Fraction(1, 2),
            min_radius_sq=job.min_radius_sq if job.min_radius_sq is not None else Fraction(0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc), "enumeration bounds") from None


def cmd_enumerate(job: JobConfig) -> int:
    s = job.build_surface()
    _, e = _classes(job, 1)[0]
    target = _enumeration_target(job, e)
    cfg = _enumeration_config(job, s, target)
    cands = enumerate_candidate_walls(target, cfg, workers=job.jobs or 1)
    if job.format == "text":
        lines = [f"numerical candidates for ({target.literal()}), ranks {cfg.rank_range[0]}..{cfg.rank_range[1]}"]
        lines += [f"{c.destabilizer.literal()}: {c.wall} [{', '.join(sorted(c.filters_passed))}]" for c in cands]
        _emit("\n".join(lines) + "\n", job)
    else:
        _emit(candidates_to_csv(cands), job)
    return EXIT_OK


def _auto_window(walls: list[Semicircle], extra: list[Fraction]) -> Window:
    lo = min([Fraction(0), *extra])
    hi = max([Fraction(0), *extra])
    top = Fraction(1)
    for w in walls:
        rho = sqrt_upper(w.radius_sq)
        lo, hi, top = min(lo, w.center - rho), max(hi, w.center + rho), max(top, rho)
    pad = (hi - lo) / 10 or Fraction(1)
    return Window(lo - pad, hi + pad, top + pad)


def cmd_plot(job: JobConfig) -> int:
    s = job.build_surface()
    if not job.out:
        raise ConfigError("plot needs --out", "out")
    _, e = _classes(job, 1)[0]
    cfg = _enumeration_config(job, s, e)
    cands = enumerate_candidate_walls(e, cfg, workers=job.jobs or 1)
    highlight = destabilizing_wall(e) if job.h0 is not None else None
    walls = [c.wall for c in cands] + ([highlight] if highlight else [])
    vert = vertical_wall(e)
    if None in (job.beta_min, job.beta_max, job.alpha_max):
        auto = _auto_window(walls, [vert.beta])
        window = Window(
            job.beta_min if job.beta_min is not None else auto.beta_min,
            job.beta_max if job.beta_max is not None else auto.beta_max,
            job.alpha_max if job.alpha_max is not None else auto.alpha_max,
        )
    else:
        window = Window(job.beta_min, job.beta_max, job.alpha_max)
    diagram = WallDiagram(window, title=f"walls of ({e.literal()}) on {s.describe()}")
    diagram.axis()
    diagram.vertical(vert)
    seen = set()
    for c in cands:
        if c.wall not in seen:
            seen.add(c.wall)
            diagram.semicircle(c.wall, label=f"candidate via ({c.destabilizer.literal()})")
    if highlight is not None:
        diagram.semicircle(highlight, label="destabilizing wall W(O^h0[1], E)", highlight=True)
    diagram.save(job.out)
    return EXIT_OK


COMMANDS = {
    "invariants": cmd_invariants,
    "wall": cmd_wall,
    "kernel-check": cmd_kernel_check,
    "enumerate": cmd_enumerate,
    "plot": cmd_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    try:
        job = _job_from_args(args)
        if job.format is None:
            job.format = "csv" if args.command == "enumerate" else "text"
        return COMMANDS[args.command](job)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
