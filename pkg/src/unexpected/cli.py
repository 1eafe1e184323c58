"""Command-line front end.

Every command writes a JSON report that embeds the validated configuration,
the seed and the package version.  Exit codes: 0 success, 1 usage error,
2 certification downgrade under --certify, 3 mismatch against golden data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__, golden
from .detector import DetectConfig, DetectionCell, ResultStore, default_threads, detect, extract_form, search
from .duality import bmss_check
from .field import QQ, QQ_GOLDEN, QQ_OMEGA, QQ_SQRT5, FieldSpec
from .lefschetz import equivalence_test, wlp_check, wlp_scan
from .pointsets import PointSet, PointSetError, fermat_supersolvable_duals, root_system, twisted_cubic_points

log = logging.getLogger("unexpected")

EXIT_OK, EXIT_USAGE, EXIT_DOWNGRADE, EXIT_GOLDEN = 0, 1, 2, 3

FIELDS = {"rationals": QQ, "sqrt5": QQ_SQRT5, "golden": QQ_GOLDEN, "omega": QQ_OMEGA}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_field(text: str) -> FieldSpec:
    if text in FIELDS:
        return FIELDS[text]
    if text.startswith("quadratic:"):
        p, _, q = text[len("quadratic:"):].partition(",")
        return FieldSpec.quadratic(p, q)
    raise argparse.ArgumentTypeError(f"unknown field {text!r}; use {', '.join(FIELDS)} or quadratic:P,Q")


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("point source")
    g.add_argument("--points", help="JSON or CSV point file")
    g.add_argument("--field", type=parse_field, default=QQ, help="field for CSV input")
    g.add_argument("--system", help="root system name (A, B, C, D, E6, E7, E8, F4, H3, H4)")
    g.add_argument("--rank", type=int, default=0, help="root system rank")
    g.add_argument("--fermat", action="store_true", help="the 12 supersolvable Fermat duals")
    g.add_argument("--twisted-cubic", type=int, metavar="COUNT", help="points on the twisted cubic")
    g.add_argument("--cubic-seed", type=int, default=None, help="shuffle the cubic parameters")


def _add_mode(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("symbolic", "probabilistic", "hybrid"), default="hybrid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--time-budget", type=float, default=None, help="seconds per cell for symbolic certification")
    p.add_argument("--certify", action="store_true", help="exit 2 if any verdict is only probabilistic")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="JSON report path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="unexpected", description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=__version__)
    top.add_argument("--quiet", action="store_true", help="only log errors")
    top.add_argument("--threads", type=int, default=None, help="worker processes (default: UNEXPECTED_THREADS or CPU count)")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("points", help="generate or convert a point set")
    _add_source(p)
    p.add_argument("--out", help="output file; .csv selects CSV")
    p.add_argument("--format", choices=("json", "csv"), default="")

    p = sub.add_parser("detect", help="one (d, m) cell")
    _add_source(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--form", action="store_true", help="include the unexpected form")
    _add_mode(p)
    _add_out(p)

    p = sub.add_parser("search", help="all cells 2 <= m <= d <= dmax")
    _add_source(p)
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--mmin", type=int, default=2)
    p.add_argument("--mmax", type=int, default=None)
    p.add_argument("--store", help="JSON-lines cache for resumable runs")
    p.add_argument("--csv", help="also write a CSV summary here")
    _add_mode(p)
    _add_out(p)

    p = sub.add_parser("form", help="extract unexpected forms")
    _add_source(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    _add_mode(p)
    _add_out(p)

    p = sub.add_parser("duality", help="bi-degree, swap symmetry and BMSS tangent cones")
    _add_source(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--sample-point", action="append", default=[], help="comma-separated coordinates, repeatable")
    _add_mode(p)
    _add_out(p)

    p = sub.add_parser("wlp", help="multiplication by a general linear form on R/(L_i^k)")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--degree", type=int, default=None, help="source degree (default k-1)")
    p.add_argument("--scan", action="store_true", help="check every degree")
    p.add_argument("--check-equivalence", action="store_true", help="compare with the detector at d = m = k")
    _add_mode(p)
    _add_out(p)

    p = sub.add_parser("reproduce", help="rerun a reference scan and diff against golden tuples")
    p.add_argument("target", choices=sorted(golden.SCANS))
    _add_mode(p)
    p.add_argument("--store", help="JSON-lines cache for resumable runs")
    _add_out(p)
    return top


def load_points(args) -> PointSet:
    chosen = [x for x in (args.points, args.system, args.fermat or None, args.twisted_cubic) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --points, --system, --fermat, --twisted-cubic")
    if args.points:
        path = Path(args.points)
        if not path.exists():
            raise UsageError(f"no such file: {path}")
        return PointSet.load(path, spec=args.field)
    if args.system:
        return root_system(args.system, args.rank)
    if args.fermat:
        return fermat_supersolvable_duals()
    return twisted_cubic_points(args.twisted_cubic, args.cubic_seed)


def _config(args) -> DetectConfig:
    return DetectConfig(mode=args.mode, seed=args.seed, trials=args.trials, time_budget=args.time_budget)


def _run_config(args) -> dict:
    skip = {"func", "quiet", "threads", "out", "csv", "store"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = v.to_json() if isinstance(v, FieldSpec) else v
    return out


def _report(args, Z: Optional[PointSet], result) -> dict:
    rep = {"version": __version__, "command": args.command, "config": _run_config(args)}
    if Z is not None:
        rep["points"] = {"label": Z.label, "n": Z.n, "count": len(Z), "field": Z.field.to_json()}
    rep["result"] = result
    return rep


def _write(args, report: dict) -> None:
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def cells_csv(cells: Sequence[DetectionCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "n", "d", "m", "edim", "adim", "unexpected", "certificate"])
    for c in cells:
        w.writerow([c.label, c.n, c.d, c.m, c.edim, c.adim, int(c.unexpected), c.certificate])
    return buf.getvalue()


def _downgraded(cells: Sequence[DetectionCell]) -> bool:
    return any(c.certificate != "certified" for c in cells)


def _threads(args) -> int:
    return args.threads if args.threads else default_threads()


# commands


def cmd_points(args) -> int:
    Z = load_points(args)
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    if args.out:
        Z.save(args.out, fmt)
        log.info("wrote %d points to %s", len(Z), args.out)
    else:
        sys.stdout.write(Z.to_csv() if fmt == "csv" else json.dumps(Z.to_json(), indent=1) + "\n")
    return EXIT_OK


def cmd_detect(args) -> int:
    Z = load_points(args)
    cfg = _config(args)
    cell = detect(Z, args.d, args.m, cfg)
    result = cell.to_json()
    if args.form and cell.unexpected:
        result["form"] = [f.to_text() for f in extract_form(Z, args.d, args.m, 1, cfg)]
    log.info("%s (%d,%d): edim %d adim %d unexpected=%s [%s]",
             Z.label, cell.d, cell.m, cell.edim, cell.adim, cell.unexpected, cell.certificate)
    _write(args, _report(args, Z, result))
    return EXIT_DOWNGRADE if args.certify and _downgraded([cell]) else EXIT_OK


def _scan(args, Z: PointSet, d_range, m_range=None) -> List[DetectionCell]:
    store = ResultStore(args.store) if getattr(args, "store", None) else None
    t0 = time.time()
    cells = search(Z, d_range, m_range, _config(args), threads=_threads(args), store=store)
    log.info("%s: %d cells in %.1fs", Z.label, len(cells), time.time() - t0)
    for c in cells:
        if c.unexpected:
            log.info("  unexpected %s [%s]", c.tuple, c.certificate)
    return cells


def cmd_search(args) -> int:
    Z = load_points(args)
    if args.dmin > args.dmax:
        raise UsageError("--dmin exceeds --dmax")
    mmax = args.mmax if args.mmax is not None else args.dmax
    cells = _scan(args, Z, range(args.dmin, args.dmax + 1), range(args.mmin, mmax + 1))
    result = {"cells": [c.to_json() for c in cells], "unexpected": [list(c.tuple) for c in cells if c.unexpected]}
    _write(args, _report(args, Z, result))
    if args.csv:
        Path(args.csv).write_text(cells_csv(cells))
    return EXIT_DOWNGRADE if args.certify and _downgraded(cells) else EXIT_OK


def cmd_form(args) -> int:
    Z = load_points(args)
    forms = extract_form(Z, args.d, args.m, args.count, _config(args))
    result = {"forms": [{"bidegree": list(f.bidegree), "poly": f.to_text()} for f in forms]}
    _write(args, _report(args, Z, result))
    return EXIT_OK


def _parse_point(text: str):
    return tuple(s.strip() for s in text.split(","))


def cmd_duality(args) -> int:
    Z = load_points(args)
    pts = [_parse_point(s) for s in args.sample_point]
    rep = bmss_check(Z, args.d, args.m, pts, samples=args.samples, seed=args.seed, config=_config(args))
    log.info("bidegree %s, swap %s, tangent cones match: %s", rep.bidegree, rep.swap_relation, rep.tangent_cone_match)
    _write(args, _report(args, Z, rep.to_json()))
    return EXIT_OK


def cmd_wlp(args) -> int:
    Z = load_points(args)
    if args.k < 1:
        raise UsageError("--k must be positive")
    result = {}
    v = wlp_check(Z, args.k, args.degree, args.seed)
    result["verdict"] = v.to_json()
    if args.scan:
        result["scan"] = [x.to_json() for x in wlp_scan(Z, args.k, args.seed)]
    if args.check_equivalence:
        if args.k < 2:
            raise UsageError("the equivalence needs k >= 2")
        cfg = _config(args)
        result["equivalence"] = {"d": args.k, "m": args.k,
                                 "unexpected": equivalence_test(Z, args.k, args.k, (args.seed,), cfg)}
    log.info("x L from degree %d: rank %d, source %d, target %d, fails=%s",
             v.degree, v.map_rank, v.dim_source, v.dim_target, v.fails)
    _write(args, _report(args, Z, result))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    system, ranks, d_range, expected = golden.SCANS[args.target]
    cells: List[DetectionCell] = []
    for r in ranks:
        cells += _scan(args, root_system(system, r), d_range)
    found = [c.tuple for c in cells if c.unexpected]
    diff = golden.diff(found, expected)
    ok = not diff["missing"] and not diff["extra"]
    result = {
        "target": args.target,
        "unexpected": [list(t) for t in found],
        "expected": [list(t) for t in expected],
        "diff": {k: [list(t) for t in v] for k, v in diff.items()},
        "match": ok,
        "certificates": {str(list(c.tuple)): c.certificate for c in cells if c.unexpected},
        "cells": [c.to_json() for c in cells],
    }
    _write(args, _report(args, None, result))
    if not ok:
        log.error("golden mismatch: %s", diff)
        return EXIT_GOLDEN
    log.info("%s: all %d golden tuples reproduced", args.target, len(expected))
    return EXIT_DOWNGRADE if args.certify and _downgraded(cells) else EXIT_OK


COMMANDS = {
    "points": cmd_points,
    "detect": cmd_detect,
    "search": cmd_search,
    "form": cmd_form,
    "duality": cmd_duality,
    "wlp": cmd_wlp,
    "reproduce": cmd_reproduce,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.ERROR if args.quiet else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PointSetError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
