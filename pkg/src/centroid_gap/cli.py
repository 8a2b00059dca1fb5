"""Command-line surface.

Subcommands:
  verify    gap-ratio bound and the diameter/perimeter corollaries
  lemmas    full inequality suite on a polygon or a seeded corpus
  sweep     slicing profile of the normalized frame as CSV
  extremal  convergence table of the thin-triangle family
  search    hill-climbing probe of the gap-ratio bound

Exit codes: 0 all checks pass, 1 a mathematical check failed (report still
written), 2 input or usage error.  Reports go to stdout (or --out) as
JSON; diagnostics go to stderr.  All randomness derives from --seed, so
reports are byte-stable for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .checks import CheckReport, abs_check
from .errors import CentroidGapError, DegenerateInput, DomainError, PolygonFileError
from .frame import frame_scalars_valid, normalize
from .geometry import (area_centroid, boundary_centroid, diameter,
                       gap_ratio, measures, unit_from_angle)
from .lemmas import (quintic_check, region_inequalities_check,
                     run_lemma_suite, tan_random_margins)
from .polyio import load_polygon, polygon_to_json, save_polygon
from .search import (convergence_table, corpus_item, closed_form_ratio,
                     direction_grid, maximize_ratio)
from .sweep import profile

BOUND = 1.0 / 6.0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="centroid-gap",
        description="Verification of the centroid-gap bound for planar convex polygons.")
    ap.add_argument("--tol", type=float, default=1e-9,
                    help="relative violation tolerance (default 1e-9)")
    ap.add_argument("--seed", type=int, default=0, help="master RNG seed")
    ap.add_argument("--jobs", type=int, default=1, help="corpus worker processes")
    ap.add_argument("--out", type=str, default=None,
                    help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="bound and corollaries on one polygon")
    p.add_argument("polygon", help="polygon file (JSON or CSV)")
    p.add_argument("--directions", type=int, default=64)

    p = sub.add_parser("lemmas", help="inequality suite")
    p.add_argument("polygon", nargs="?", default=None)
    p.add_argument("--corpus", nargs=2, type=int, metavar=("N", "SEED"),
                   default=None, help="run on a seeded random corpus")
    p.add_argument("--directions", type=int, default=16)
    p.add_argument("--scalars-only", action="store_true",
                   help="only the geometry-free scalar suites")
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="sample count for the scalar suites")

    p = sub.add_parser("sweep", help="normalized-frame profile CSV")
    p.add_argument("polygon")
    p.add_argument("--theta", type=float, default=0.0, help="direction angle, radians")
    p.add_argument("--grid", type=int, default=2048)

    p = sub.add_parser("extremal", help="thin-triangle convergence table")
    p.add_argument("eps", nargs="+", type=float)

    p = sub.add_parser("search", help="maximize the gap ratio")
    p.add_argument("n", type=int, help="vertex budget")
    p.add_argument("budget", type=int, help="total ratio evaluations")
    p.add_argument("searchseed", type=int, help="search seed")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--best-polygon", type=str, default=None,
                   help="write the best polygon to this file")
    return ap


def emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report(args, checks, frames=(), extra=None) -> dict:
    worst = min(checks, key=lambda c: c.margin) if checks else None
    doc = {
        "command": args.command,
        "seed": args.seed,
        "tolerance": args.tol,
        "checks": [c.as_dict() for c in checks],
        "frames": list(frames),
        "summary": {
            "total": len(checks),
            "passed": sum(1 for c in checks if c.passed),
            "worst_margin": worst.margin if worst else None,
            "worst_context": f"{worst.name}: {worst.context}" if worst else "",
        },
    }
    if extra:
        doc.update(extra)
    return doc


def finish(args, checks, frames=(), extra=None) -> int:
    doc = report(args, checks, frames, extra)
    emit(args, doc)
    return 0 if all(c.passed for c in checks) else 1


def cmd_verify(args) -> int:
    poly = load_polygon(args.polygon)
    if args.directions < 1:
        raise DomainError("--directions must be positive")
    scale = poly.bbox_diagonal
    g = boundary_centroid(poly) - area_centroid(poly)
    gap_norm = float(math.hypot(g[0], g[1]))
    checks = []
    for k, d in enumerate(direction_grid(args.directions)):
        r = gap_ratio(poly, d)
        checks.append(abs_check("gap_ratio", r, BOUND, args.tol,
                                f"direction {k}/{args.directions}"))
    _, perim = measures(poly)
    diam = diameter(poly)
    checks.append(abs_check("gap_le_diameter_over_6", gap_norm, diam / 6.0,
                            args.tol * scale, f"diameter={diam!r}"))
    checks.append(abs_check("gap_le_perimeter_over_12", gap_norm, perim / 12.0,
                            args.tol * scale, f"perimeter={perim!r}"))
    return finish(args, checks)


def _suite_summaries(poly, directions, tol):
    """Per-direction lemma suites, reduced to (name -> worst CheckReport)."""
    out = {}
    for k, ang in enumerate(np.linspace(0.0, 2.0 * math.pi, directions,
                                        endpoint=False)):
        suite = run_lemma_suite(poly, unit_from_angle(float(ang)), tol=tol)
        for c in suite.checks:
            tagged = CheckReport(c.name, c.lhs, c.rhs, c.margin, c.passed,
                                 f"angle {k}/{directions}; {c.context}")
            if c.name not in out or tagged.margin < out[c.name].margin:
                out[c.name] = tagged
    return out


def _corpus_worker(job):
    i, seed, directions, tol = job
    poly = corpus_item(i, seed)
    worst = _suite_summaries(poly, directions, tol)
    fs = frame_scalars_valid(normalize(poly, np.array([1.0, 0.0])), tol)
    worst["frame_scalars"] = fs
    return i, {name: c.as_dict() for name, c in worst.items()}


def cmd_lemmas(args) -> int:
    checks = []
    frames = []
    if not args.scalars_only:
        if (args.polygon is None) == (args.corpus is None):
            raise DomainError("give a polygon file or --corpus N SEED (not both)")
        if args.directions < 1:
            raise DomainError("--directions must be positive")
        if args.polygon is not None:
            poly = load_polygon(args.polygon)
            for k, ang in enumerate(np.linspace(0.0, 2.0 * math.pi,
                                                args.directions, endpoint=False)):
                theta = unit_from_angle(float(ang))
                suite = run_lemma_suite(poly, theta, tol=args.tol)
                frames.append(suite.frame.scalars())
                for c in suite.checks:
                    checks.append(CheckReport(
                        c.name, c.lhs, c.rhs, c.margin, c.passed,
                        f"angle {k}/{args.directions}; {c.context}"))
        else:
            count, corpus_seed = args.corpus
            if count < 1:
                raise DomainError("corpus size must be positive")
            jobs = [(i, corpus_seed, args.directions, args.tol)
                    for i in range(count)]
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_corpus_worker, jobs,
                                            chunksize=max(1, count // (8 * args.jobs))))
            else:
                results = [_corpus_worker(j) for j in jobs]
            results.sort(key=lambda r: r[0])
            worst = {}
            for i, named in results:
                for name, d in named.items():
                    c = CheckReport(d["name"], d["lhs"], d["rhs"], d["margin"],
                                    d["pass"], f"item {i}; {d['context']}")
                    if name not in worst or c.margin < worst[name].margin:
                        worst[name] = c
            checks.extend(worst[name] for name in sorted(worst))

    checks.append(_tan_sample_check(args.samples, args.seed))
    checks.append(quintic_check())
    checks.append(region_inequalities_check(max(args.samples, 10_000), args.seed))
    return finish(args, checks, frames)


def _tan_sample_check(n, seed):
    margins = tan_random_margins(n, seed)
    i = int(np.argmin(margins))
    worst = float(margins[i])
    return CheckReport("tan_inequality_sampled", -worst, 0.0, worst,
                       worst >= -1e-12, f"n={n}, worst margin {worst!r}")


def cmd_sweep(args) -> int:
    poly = load_polygon(args.polygon)
    if args.grid < 2:
        raise DomainError("--grid must be at least 2")
    frame = normalize(poly, unit_from_angle(args.theta))
    prof = profile(frame.polygon, args.grid)
    lines = ["t,ell,A,P,Ptilde,a,p,c_a,c_p"]
    for row in zip(prof.ts, prof.ell, prof.A, prof.Pfull, prof.Ptilde,
                   prof.a, prof.p, prof.c_a, prof.c_p):
        lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_extremal(args) -> int:
    for e in args.eps:
        if not (0.0 < e <= 1.0):
            raise DomainError(f"eps values must lie in (0, 1], got {e!r}")
    rows = convergence_table(args.eps)
    checks = []
    for row in rows:
        e = row["eps"]
        if e <= 0.5:
            want = closed_form_ratio(e, 1.0)
            err = abs(row["ratio_axis"] - want)
            checks.append(CheckReport(
                "closed_form_agreement", err, 1e-9, 1e-9 - err, err <= 1e-9,
                f"eps={e!r}: geometric {row['ratio_axis']!r} vs formula {want!r}"))
        checks.append(abs_check("ratio_bound", row["ratio_axis"], BOUND,
                                args.tol, f"eps={e!r}"))
    ordered = sorted(rows, key=lambda r: -r["eps"])
    for a, b in zip(ordered, ordered[1:]):
        for col, target in [("gap_over_diameter", "1/6"),
                            ("gap_over_perimeter", "1/12")]:
            checks.append(abs_check(
                f"monotone_{col}", a[col], b[col], args.tol,
                f"eps {a['eps']!r} -> {b['eps']!r} toward {target}"))
    return finish(args, checks, extra={"table": rows})


def cmd_search(args) -> int:
    if args.n < 3:
        raise DomainError("n must be at least 3")
    if args.budget < 1:
        raise DomainError("budget must be positive")
    if args.restarts < 1:
        raise DomainError("--restarts must be positive")
    state = maximize_ratio(args.n, args.budget, args.searchseed,
                           restarts=args.restarts)
    checks = [abs_check("search_ratio_bound", state.best_ratio, BOUND,
                        args.tol, f"evaluations={state.evaluations}")]
    extra = {
        "search": {
            "best_ratio": state.best_ratio,
            "best_angle": state.best_angle,
            "evaluations": state.evaluations,
            "seed": state.seed,
            "n_vertices": state.n_vertices,
            "best_polygon": [[float(x), float(y)]
                             for x, y in state.best_polygon.vertices],
        }
    }
    if args.best_polygon:
        save_polygon(args.best_polygon, state.best_polygon)
    if not checks[0].passed:
        sys.stderr.write("bound violated; counterexample polygon:\n")
        sys.stderr.write(polygon_to_json(state.best_polygon))
    return finish(args, checks, extra=extra)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {
        "verify": cmd_verify,
        "lemmas": cmd_lemmas,
        "sweep": cmd_sweep,
        "extremal": cmd_extremal,
        "search": cmd_search,
    }
    try:
        return handlers[args.command](args)
    except (PolygonFileError, DegenerateInput, DomainError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except CentroidGapError as e:
        sys.stderr.write(f"internal error: {e}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
