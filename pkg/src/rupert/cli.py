"""Command-line front end.

Exit codes: 0 success, 1 usage or invalid input, 2 search/verification
failure (budget exhausted, negative margin), 3 I/O failure.  Data goes to
stdout (or --out); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from importlib.metadata import version as _pkg_version

from . import catalog
from .emitter import Silhouette, discover_silhouettes, emit_system, to_polysys
from .errors import (
    DegenerateInput,
    DomainError,
    InvalidSolution,
    NonIntegerCoordinates,
    NotConvexPosition,
    NotFound,
    NotPointSymmetric,
    ParseError,
    RupertError,
    TooLarge,
    UnknownSolid,
)
from .nieuwland import DEFAULT_MU_ITERS, ImproveConfig, mu_of
from .records import SolutionRecord, utc_now
from .render import RenderSpec, render_solution
from .rupertness import estimate_rupertness
from .solver import SearchConfig, solve, solve_naive, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_FOUND = 2
EXIT_IO = 3

_USAGE_ERRORS = (
    UnknownSolid,
    ParseError,
    DomainError,
    NonIntegerCoordinates,
    NotPointSymmetric,
    NotConvexPosition,
    DegenerateInput,
    TooLarge,
    ValueError,
)
_SEARCH_ERRORS = (NotFound, InvalidSolution)


def _tool_version() -> str:
    try:
        return _pkg_version("rupert")
    except Exception:
        return "unknown"


def _resolve_solid(args) -> "catalog.Polyhedron":
    if getattr(args, "file", None):
        recenter = getattr(args, "recenter", False)
        if args.file == "-":
            try:
                doc = json.load(sys.stdin)
            except json.JSONDecodeError as exc:
                raise ParseError(f"stdin: not valid JSON ({exc})") from exc
            return catalog.from_dict(doc, recenter=recenter, source="stdin")
        return catalog.load(args.file, recenter=recenter)
    if not args.solid:
        raise UnknownSolid("no solid name or --file given")
    return catalog.get(args.solid)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _deadline(seconds) -> float | None:
    return None if seconds is None else time.monotonic() + float(seconds)


def cmd_solve(args) -> int:
    P = _resolve_solid(args)
    cfg = SearchConfig(
        seed=args.seed,
        batch_size=args.batch,
        max_batches=args.max_batches,
        rotation_samples=args.samples,
    )
    if args.naive:
        v = solve_naive(P, cfg)
    else:
        v = solve(P, cfg, deadline=_deadline(args.time_budget))
    margin = verify(P, v)
    mu = mu_of(P, v).mu
    record = SolutionRecord.from_septuple(
        P.name, v, mu=mu, margin=margin, seed=args.seed,
        timestamp=utc_now(), version=_tool_version(),
    )
    _emit(args, record.to_json())
    return EXIT_OK


def _iter_records(args):
    if args.all_goldens:
        folder = args.goldens
        names = sorted(f for f in os.listdir(folder) if f.endswith(".json"))
        if not names:
            raise ParseError(f"no golden records in {folder}")
        for f in names:
            yield SolutionRecord.load(os.path.join(folder, f))
    else:
        if not args.solution:
            raise ParseError("need --solution FILE or --all-goldens")
        rec = SolutionRecord.load(args.solution)
        if args.solid and catalog.canonical_name(args.solid) != catalog.canonical_name(rec.solid):
            rec = SolutionRecord.from_septuple(
                args.solid, rec.septuple(), mu=rec.mu, margin=rec.margin)
        yield rec


def cmd_verify(args) -> int:
    lines = []
    all_ok = True
    for rec in _iter_records(args):
        P = catalog.get(rec.solid) if not args.file else catalog.load(args.file)
        m = verify(P, rec.septuple())
        row = {"solid": rec.solid, "margin": m, "ok": m > 0.0}
        if args.check_mu is not None and rec.mu is not None:
            computed = mu_of(P, rec.septuple()).mu if m > 0.0 else None
            row["mu"] = computed
            row["mu_reference"] = rec.mu
            row["mu_ok"] = computed is not None and abs(computed - rec.mu) <= args.check_mu
            row["ok"] = row["ok"] and row["mu_ok"]
        all_ok = all_ok and row["ok"]
        lines.append(json.dumps(row))
    _emit(args, "\n".join(lines))
    return EXIT_OK if all_ok else EXIT_NOT_FOUND


def cmd_nieuwland(args) -> int:
    P = _resolve_solid(args)
    rec = SolutionRecord.load(args.solution)
    result = mu_of(P, rec.septuple(), iters=args.iters)
    _emit(args, json.dumps({
        "solid": P.name,
        "mu": result.mu,
        "iterations": result.iterations,
        "margin_at_mu_minus": result.margin_at_mu_minus,
    }))
    return EXIT_OK


def cmd_improve(args) -> int:
    from .nieuwland import improve

    P = _resolve_solid(args)
    starts = [SolutionRecord.load(p) for p in args.solution]
    overall_deadline = _deadline(args.time_budget)
    best = None
    best_mu = float("-inf")
    for idx, rec in enumerate(starts):
        # split the remaining wall-clock budget over the remaining starts
        chunk_deadline = None
        if overall_deadline is not None:
            remaining = overall_deadline - time.monotonic()
            if remaining <= 0:
                break
            chunk_deadline = time.monotonic() + remaining / (len(starts) - idx)
        cfg = ImproveConfig(seed=args.seed + idx, rounds=args.rounds,
                            initial_window=args.window,
                            shrink_factor=args.shrink,
                            stall_threshold=args.stall)
        try:
            candidate = improve(P, rec.septuple(), cfg,
                                deadline=chunk_deadline, target_mu=args.target_mu)
        except InvalidSolution as exc:
            print(f"skipping start {idx}: {exc}", file=sys.stderr)
            continue
        candidate_mu = mu_of(P, candidate).mu
        if candidate_mu > best_mu:
            best, best_mu = candidate, candidate_mu
        if args.target_mu is not None and best_mu >= args.target_mu:
            break
    if best is None:
        raise InvalidSolution("no start could be improved within the budget")
    out = SolutionRecord.from_septuple(P.name, best, mu=best_mu,
                                       margin=verify(P, best),
                                       seed=args.seed, timestamp=utc_now(),
                                       version=_tool_version())
    _emit(args, out.to_json())
    return EXIT_OK


def cmd_rupertness(args) -> int:
    P = _resolve_solid(args)
    est = estimate_rupertness(P, args.trials, alpha=args.alpha, seed=args.seed,
                              samples=args.samples, workers=args.threads)
    row = {
        "name": P.name, "n": est.n, "k": est.k, "k/n": est.point_estimate,
        "ci_low": est.ci_low, "ci_high": est.ci_high,
        "alpha": args.alpha, "seed": args.seed, "samples": args.samples,
    }
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        _emit(args, buf.getvalue())
    else:
        _emit(args, json.dumps(row))
    return EXIT_OK


def _parse_silhouette(text: str) -> Silhouette:
    try:
        return Silhouette(tuple(int(p) for p in text.replace(",", " ").split()))
    except (TypeError, ValueError) as exc:
        raise DomainError(f"bad silhouette {text!r}: {exc}") from exc


def cmd_emit_system(args) -> int:
    P = _resolve_solid(args)
    if args.discover:
        cycles = discover_silhouettes(P, samples=args.discover, seed=args.seed)
        _emit(args, json.dumps([list(s.cycle) for s in cycles]))
        return EXIT_OK
    if not args.silhouette:
        raise DomainError("need --silhouette or --discover")
    system = emit_system(P, _parse_silhouette(args.silhouette),
                         extra_equations=tuple(args.minpoly))
    _emit(args, to_polysys(system, name=P.name))
    return EXIT_OK


def cmd_render(args) -> int:
    P = _resolve_solid(args)
    rec = SolutionRecord.load(args.solution)
    spec = RenderSpec(width_px=args.width, height_px=args.height,
                      outer_color=args.outer_color, inner_color=args.inner_color,
                      stroke_width=args.stroke_width)
    _emit(args, render_solution(P, rec.septuple(), spec))
    return EXIT_OK


def cmd_catalog_list(args) -> int:
    rows = [
        {
            "name": e.name,
            "family": e.family,
            "vertices": e.vertex_count,
            "point_symmetric": e.point_symmetric,
        }
        for e in catalog.entries()
    ]
    _emit(args, json.dumps(rows, indent=1))
    return EXIT_OK


def _add_solid_arguments(p, positional=True):
    if positional:
        p.add_argument("solid", nargs="?", help="catalog solid name")
    p.add_argument("--file", help="polyhedron JSON file instead of a catalog name"
                   " ('-' reads stdin)")
    p.add_argument("--recenter", action="store_true",
                   help="recenter file vertices at their centroid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rupert",
        description="Search, verify, optimize and measure passage solutions"
                    " for convex polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="randomized search for a verified solution")
    _add_solid_arguments(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch", type=int, default=100, help="projections per batch")
    p.add_argument("--max-batches", type=int, default=1000)
    p.add_argument("--naive", action="store_true", help="blind 7-parameter sampling")
    p.add_argument("--samples", type=int, default=1024, help="rotation grid size")
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check solution records")
    _add_solid_arguments(p)
    p.add_argument("--solution", help="SolutionRecord JSON file")
    p.add_argument("--all-goldens", action="store_true")
    p.add_argument("--goldens", default="goldens", help="directory of golden records")
    p.add_argument("--check-mu", type=float, default=None,
                   help="also compare the scaling number within this tolerance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nieuwland", help="scaling number of a solution")
    _add_solid_arguments(p)
    p.add_argument("--solution", required=True)
    p.add_argument("--iters", type=int, default=DEFAULT_MU_ITERS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_nieuwland)

    p = sub.add_parser("improve", help="hill-climb the scaling number")
    _add_solid_arguments(p)
    p.add_argument("--solution", required=True, action="append",
                   help="starting record; repeat for multi-start")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=20000)
    p.add_argument("--window", type=float, default=0.05)
    p.add_argument("--shrink", type=float, default=0.5)
    p.add_argument("--stall", type=int, default=200)
    p.add_argument("--target-mu", type=float, default=None)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_improve)

    p = sub.add_parser("rupertness", help="Monte-Carlo passage probability")
    _add_solid_arguments(p)
    p.add_argument("-n", "--trials", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rupertness)

    p = sub.add_parser("emit-system", help="emit polynomial inequality systems")
    _add_solid_arguments(p)
    p.add_argument("--silhouette", help="comma-separated 1-based cycle, e.g. 1,2,4")
    p.add_argument("--discover", type=int, default=None, metavar="N",
                   help="sample N projections and list observed silhouettes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--minpoly", action="append", default=[],
                   help="extra '= 0' constraint appended verbatim (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_emit_system)

    p = sub.add_parser("render", help="SVG figure of a solution")
    _add_solid_arguments(p)
    p.add_argument("--solution", required=True)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=640)
    p.add_argument("--outer-color", default="red")
    p.add_argument("--inner-color", default="black")
    p.add_argument("--stroke-width", type=float, default=2.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("catalog-list", help="list catalog solids")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _SEARCH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RupertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
