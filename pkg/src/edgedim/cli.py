"""Command-line surface.

Exit codes: 0 success, 1 verification mismatch or bound violation, 2 argument
errors, 3 input-format errors.  Errors go to stderr as one-line JSON.

Generic `--edge` flags on edge-list inputs take 0-based vertex ids; the
`grid2d` subcommands take 1-based grid coordinates (xE,yE,xF,yF), matching
the coordinate convention of the rest of the package.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import distribution, grid2d, perturb, solver
from .graphs import (
    EdgeListFormatError,
    format_edge_list,
    grid,
    gstar,
    parse_edge_list,
    ring,
    apsp,
)

__all__ = ["run", "main"]


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # JSON on stderr instead of usage text
        raise _ArgumentError(message)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _fail(message: str, code: int) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise _ArgumentError(f"{what} needs {count} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise _ArgumentError(f"{what} needs integers, got {text!r}")


def _cmd_gen(args) -> int:
    if args.family == "grid":
        dims = tuple(int(p) for p in args.dims.split(","))
        g = grid(dims)
        comment = f"grid dims={','.join(map(str, dims))}"
    elif args.family == "ring":
        g = ring(args.n)
        comment = f"ring n={args.n}"
    else:
        g, e_id, f_id = gstar(args.n)
        comment = f"gstar n={args.n} E={e_id} F={f_id}"
    sys.stdout.write(format_edge_list(g, comment=comment))
    return 0


def _cmd_md(args) -> int:
    g = parse_edge_list(_read_input(args.positional or args.input))
    d = apsp(g)
    try:
        res = solver.metric_dimension(d, k_max=args.kmax)
    except solver.KMaxExceededError as exc:
        _emit({"exceeds_k_max": exc.k_max, "explored": exc.explored})
        return 0
    _emit(
        {
            "dimension": res.dimension,
            "witness": list(res.witness),
            "explored": res.explored,
            "restricted": res.restricted,
        }
    )
    return 0


def _cmd_perturb(args) -> int:
    g = parse_edge_list(_read_input(args.input))
    u, v = _parse_ints(args.edge, 2, "--edge")
    edge = perturb.ExtraEdge(u, v)
    d = apsp(g)
    if args.report == "regions":
        _emit(perturb.region_report(d, edge))
        return 0
    if args.report == "gains":
        prof = perturb.gain_profile(d, edge)
        _emit({"gain_max": list(prof.gain_max), "gain_ef": perturb.gain(d, edge, u, v)})
        return 0
    comp = perturb.composition_upper_bound(g, edge)
    dec = perturb.decrease_bound_check(g, edge)
    _emit(
        {
            "composition": {
                "beta_g1": comp.beta_g1,
                "beta_g2": comp.beta_g2,
                "bound": comp.bound,
                "beta_gprime": comp.beta_gprime,
                "holds": comp.holds,
            },
            "decrease": {
                "beta_gprime": dec.beta_gprime,
                "witness": list(dec.witness),
                "base_set": list(dec.base_set),
                "resolves_base": dec.resolves_base,
                "beta_g": dec.beta_g,
                "holds_inequality": dec.holds_inequality,
            },
        }
    )
    violated = comp.holds is False or not dec.resolves_base or not dec.holds_inequality
    return 1 if violated else 0


def _grid_config(args) -> grid2d.GridEdgeConfig:
    xe, ye, xf, yf = _parse_ints(args.edge, 4, "--edge")
    m = args.m if args.m is not None else args.n
    return grid2d.GridEdgeConfig(args.n, m, (xe, ye), (xf, yf))


def _cmd_predict(args) -> int:
    verdict = grid2d.conjecture_predict(_grid_config(args))
    _emit(
        {
            "predicted": verdict.predicted,
            "clause": verdict.clause,
            "matched": list(verdict.matched),
        }
    )
    return 0


def _cmd_verify(args) -> int:
    report = grid2d.conjecture_verify(
        args.n, args.m, workers=args.workers, budget=args.budget
    )
    _emit(report.to_json())
    return 1 if report.mismatches else 0


def _cmd_regions(args) -> int:
    cfg = _grid_config(args)
    if args.format == "ascii":
        sys.stdout.write(grid2d.region_map_ascii(cfg))
    else:
        _emit(grid2d.region_report_json(cfg))
    return 0


def _cmd_dist(args) -> int:
    report = distribution.md_distribution(
        args.n, args.mode, sample_count=args.samples, seed=args.seed
    )
    _emit(report.to_json())
    return 0


def build_parser() -> _Parser:
    p = _Parser(prog="edgedim", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generator's edge list on stdout")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g_grid = gen_sub.add_parser("grid")
    g_grid.add_argument("--dims", required=True, help="comma-separated side lengths")
    g_grid.set_defaults(func=_cmd_gen)
    g_ring = gen_sub.add_parser("ring")
    g_ring.add_argument("--n", type=int, required=True)
    g_ring.set_defaults(func=_cmd_gen)
    g_star = gen_sub.add_parser("gstar")
    g_star.add_argument("--n", type=int, required=True)
    g_star.set_defaults(func=_cmd_gen)

    md = sub.add_parser("md", help="exact metric dimension of an edge-list graph")
    md.add_argument("positional", nargs="?", default=None, metavar="INPUT")
    md.add_argument("--input", default="-", help="edge-list path or '-' for stdin")
    md.add_argument("--kmax", type=int, default=8)
    md.set_defaults(func=_cmd_md)

    pert = sub.add_parser("perturb", help="region/gain/bound reports for one extra edge")
    pert.add_argument("--input", default="-")
    pert.add_argument("--edge", required=True, help="U,V as 0-based vertex ids")
    pert.add_argument("--report", choices=("regions", "gains", "bounds"), default="regions")
    pert.set_defaults(func=_cmd_perturb)

    g2 = sub.add_parser("grid2d", help="2-D grid machinery")
    g2_sub = g2.add_subparsers(dest="action", required=True)
    pred = g2_sub.add_parser("predict")
    pred.add_argument("--n", type=int, required=True)
    pred.add_argument("--m", type=int, default=None)
    pred.add_argument("--edge", required=True, help="xE,yE,xF,yF (1-based coordinates)")
    pred.set_defaults(func=_cmd_predict)
    ver = g2_sub.add_parser("verify")
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
    ver.set_defaults(func=_cmd_verify)
    reg = g2_sub.add_parser("regions")
    reg.add_argument("--n", type=int, required=True)
    reg.add_argument("--m", type=int, default=None)
    reg.add_argument("--edge", required=True, help="xE,yE,xF,yF (1-based coordinates)")
    reg.add_argument("--format", choices=("ascii", "json"), default="ascii")
    reg.set_defaults(func=_cmd_regions)

    dist = sub.add_parser("dist", help="MD distribution over random/enumerated edges")
    dist.add_argument("--n", type=int, required=True)
    dist.add_argument("--mode", choices=("exact", "conjecture", "sample"), required=True)
    dist.add_argument("--samples", type=int, default=None)
    dist.add_argument("--seed", type=int, default=None)
    dist.set_defaults(func=_cmd_dist)

    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        return _fail(str(exc), 2)
    try:
        return args.func(args)
    except _ArgumentError as exc:
        return _fail(str(exc), 2)
    except EdgeListFormatError as exc:
        return _fail(str(exc), 3)
    except FileNotFoundError as exc:
        return _fail(str(exc), 3)
    except (ValueError, solver.KMaxExceededError) as exc:
        return _fail(str(exc), 2)


def main() -> None:
    sys.exit(run())
