"""Command-line front end.

Exit codes: 0 success, 1 internal error or failed verification, 2 usage
or input error, 3 input not well oriented.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from .complexity import (
    BOUND_KINDS,
    FIGURE7_CURVES,
    PAPER_FIGURE7_PARAMS,
    ComplexityParams,
    bound_log,
    bound_value,
    figure7_csv,
    figure7_table,
    pEA_degree_forms,
)
from .formula import FormulaSyntaxError, Problem, load_problem
from .lifting import NULLIFICATION_MODES, NotWellOriented, jobs_from_env
from .polynomial import PolynomialError
from .projection import COEFFICIENT_RULES, OPERATORS, ProjectionError, projection_phase
from .subcad import (
    LayeredState,
    SubCAD,
    complete_cad,
    layered_recursive,
    layered_subcad,
    layered_variety_subcad,
    sub_tticad,
    variety_subcad,
    variety_subcad_lower,
)

log = logging.getLogger("subcad")

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3

TTICAD_CLI_MODES = {"full": "full", "variety": "variety", "layered": "layered", "lv": "layered_variety"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# constructions


def _formula(pr: Problem):
    if len(pr.formulas) != 1:
        raise UsageError("this command takes a single-formula problem; use 'tticad' for formula lists")
    return pr.formula


def build(pr: Problem, kind: str, args) -> SubCAD:
    """Run one construction on a problem."""
    rule = args.rule
    nul = args.nullification
    if kind == "cad":
        op = args.operator or ("tticad" if len(pr.formulas) > 1 else "mccallum")
        if op == "tticad":
            return sub_tticad(pr.formulas, "full", rule=rule, nullification=nul)
        return complete_cad(_formula(pr), operator=op, rule=rule, nullification=nul)
    if kind == "variety":
        phi = _formula(pr)
        if phi.ec is not None and phi.ec.level < len(pr.order):
            return variety_subcad_lower(phi, rule=rule)
        return variety_subcad(phi, rule=rule, nullification=nul)
    if kind == "layered":
        op = args.operator or "mccallum"
        if op == "tticad":
            return sub_tticad(pr.formulas, "layered", args.layers, rule=rule, nullification=nul)
        return layered_subcad(_formula(pr), args.layers, operator=op, rule=rule,
                              leading_coefficient_only=args.leading_coeff_only)
    if kind == "lv":
        return layered_variety_subcad(_formula(pr), args.layers, rule=rule, nullification=nul)
    if kind == "tticad":
        mode = TTICAD_CLI_MODES[args.mode]
        if mode in ("layered", "layered_variety") and args.layers is None:
            raise UsageError(f"--mode {args.mode} needs --layers")
        return sub_tticad(pr.formulas, mode, args.layers, rule=rule, nullification=nul)
    raise UsageError(f"unknown construction {kind!r}")


def _emit(sub: SubCAD, args, out=None):
    out = out or sys.stdout
    if args.format == "json":
        out.write(sub.to_json(indent=None if args.compact else 1) + "\n")
    else:
        out.write(sub.summary() + "\n")
        for note in sub.notes:
            out.write(f"note: {note}\n")


def _dump_projection(sub_or_run, args):
    if args.dump_projection is None:
        return
    run = getattr(sub_or_run, "run", sub_or_run)
    text = run.to_json(indent=1) + "\n"
    if args.dump_projection == "-":
        sys.stderr.write(text)
    else:
        Path(args.dump_projection).write_text(text, encoding="utf-8")


def cmd_construct(args) -> int:
    pr = load_problem(args.problem)
    if args.command == "layered" and args.recursive:
        return _layered_recursive(pr, args)
    sub = build(pr, args.command, args)
    sub.evaluate()
    _dump_projection(sub, args)
    _emit(sub, args)
    return EXIT_OK


def _layered_recursive(pr: Problem, args) -> int:
    state = None
    if args.state and Path(args.state).exists():
        state = LayeredState.from_json(Path(args.state).read_text(encoding="utf-8"))
    target = args.layers
    sub = None
    if state is None:
        sub, state = layered_recursive(None, _formula(pr), operator=args.operator or "mccallum", rule=args.rule)
    elif target is None or state.layers < target:
        sub, state = layered_recursive(state)
    while target is not None and state.layers < target:
        sub, state = layered_recursive(state)
    if sub is None:
        # the saved state already holds the requested layers
        inv = {"mccallum": "sign", "mccallum_ec": "truth", "tticad": "truth_table"}[state.run.operator]
        sub = SubCAD(state.cells, "layered", inv, state.run, layers=state.layers, ec=list(state.run.ec),
                     formulas=state.formulas)
    if args.state:
        Path(args.state).write_text(state.to_json(), encoding="utf-8")
    sub.evaluate()
    _dump_projection(sub, args)
    _emit(sub, args)
    return EXIT_OK


def _params_from_args(args) -> ComplexityParams:
    return ComplexityParams.parse(args.params) if args.params else PAPER_FIGURE7_PARAMS


def _fmt_big(v) -> str:
    if isinstance(v, int) and len(str(v)) > 40:
        return f"~10^{math.log10(v):.1f} ({len(str(v))} digits)"
    return str(v)


def cmd_bounds(args) -> int:
    p = _params_from_args(args)
    lo, _, hi = args.n_range.partition("..")
    n_range = range(int(lo), int(hi or lo) + 1)
    if args.csv:
        rows, notes = figure7_table(p, n_range)
        text = figure7_csv(rows)
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            Path(args.csv).write_text(text, encoding="utf-8")
        for note in notes:
            sys.stderr.write(note + "\n")
        if args.csv == "-":
            return EXIT_OK
    kinds = args.kind or list(BOUND_KINDS)
    for k in kinds:
        if k not in BOUND_KINDS:
            raise UsageError(f"unknown bound kind {k!r}")
        if k == "root_sep_lower":
            sys.stdout.write(f"{k}: {float(bound_value(k, p)):.6g}\n")
        elif bound_log(k, p) < 200:
            sys.stdout.write(f"{k}: {_fmt_big(bound_value(k, p))}\n")
        else:
            sys.stdout.write(f"{k}: ~e^{bound_log(k, p):.1f}\n")
    forms = pEA_degree_forms(p)
    sys.stdout.write(f"pEA_degree forms: max {forms['max_form']}, stated {forms['final_form']}\n")
    return EXIT_OK


def cmd_plot2d(args) -> int:
    from .plot import plot2d

    pr = load_problem(args.problem)
    if len(pr.order) != 2:
        raise UsageError("plot2d needs a problem in two variables")
    sub = build(pr, args.kind, args)
    sub.evaluate()
    window = tuple(float(t) for t in args.window.split(",")) if args.window else None
    if window is not None and len(window) != 4:
        raise UsageError("--window takes xlo,xhi,ylo,yhi")
    svg = plot2d(sub, window=window)
    if args.output and args.output != "-":
        Path(args.output).write_text(svg, encoding="utf-8")
        sys.stdout.write(f"wrote {args.output}: {len(sub)} cells\n")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_invariant_suite

    pr = load_problem(args.problem)
    sub = build(pr, args.kind, args)
    sub.evaluate()
    reps = run_invariant_suite(sub, grid=len(pr.order) == 2)
    bad = 0
    for r in reps:
        sys.stdout.write(r.line() + "\n")
        for v in r.violations[:10]:
            sys.stdout.write(f"  {v}\n")
        bad += not r.ok
    sys.stdout.write(f"{sub.kind}: {len(sub)} cells, {'PASS' if not bad else 'VIOLATIONS'}\n")
    return EXIT_OK if not bad else EXIT_INTERNAL


BENCH_SINGLE = ("full", "ec", "variety", "lv2", "lv1")
BENCH_MULTI = ("full", "variety", "lv2", "lv1")


def bench_problem(pr: Problem, rows: Sequence[str], rule: str = "all"):
    """Yield ``(row, cells, base_cells, true_cells, seconds)`` for the benchmark rows."""
    multi = len(pr.formulas) > 1
    for row in rows:
        t = time.perf_counter()
        if multi:
            mode, L = {"full": ("full", None), "variety": ("variety", None),
                       "lv2": ("layered_variety", 2), "lv1": ("layered_variety", 1)}[row]
            sub = sub_tticad(pr.formulas, mode, L, rule=rule)
        elif row == "full":
            sub = complete_cad(pr.formula, rule=rule)
        elif row == "ec":
            sub = complete_cad(pr.formula, operator="mccallum_ec", rule=rule)
        elif row == "variety":
            sub = variety_subcad(pr.formula, rule=rule)
        else:
            sub = layered_variety_subcad(pr.formula, int(row[2:]), rule=rule)
        dt = time.perf_counter() - t
        true = sub.evaluate()
        yield row, len(sub), sub.base_cells, true, dt


def cmd_bench(args) -> int:
    path = Path(args.fixtures)
    files = sorted(path.glob("*.txt")) if path.is_dir() else [path]
    sys.stdout.write(f"{'problem':<22}{'row':<9}{'cells':>8}{'base':>8}{'true':>12}{'seconds':>10}\n")
    for f in files:
        pr = load_problem(f)
        if pr.formula.ec is None or any(fm.ec is None for fm in pr.formulas):
            continue
        if any(e.level != len(pr.order) for fm in pr.formulas for e in [fm.ec]):
            continue
        multi = len(pr.formulas) > 1
        rows = args.rows.split(",") if args.rows else (BENCH_MULTI if multi else BENCH_SINGLE)
        for row, n, base, true, dt in bench_problem(pr, rows, args.rule):
            tr = "/".join(str(t) for t in true)
            sys.stdout.write(f"{f.stem:<22}{row:<9}{n:>8}{base if base is not None else '-':>8}{tr:>12}{dt:>10.2f}\n")
            sys.stdout.flush()
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, layers_required: bool = False):
    p.add_argument("problem", help="problem file")
    p.add_argument("--operator", choices=OPERATORS, default=None,
                   help="projection operator (default depends on the command)")
    p.add_argument("--rule", choices=COEFFICIENT_RULES, default="all", help="coefficient rule")
    p.add_argument("--dump-projection", nargs="?", const="-", default=None, metavar="FILE",
                   help="write the projection sets as JSON (stderr without FILE)")
    p.add_argument("--format", choices=("summary", "json"), default="summary")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.add_argument("--nullification", choices=NULLIFICATION_MODES, default="fail")
    p.add_argument("--leading-coeff-only", action="store_true",
                   help="project with leading coefficients only (1-layered output)")
    p.add_argument("--layers", type=int, default=None, required=layers_required)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subcad", description="Exact CADs and sub-CADs of Tarski formulae.")
    ap.add_argument("--jobs", type=int, default=None, help="worker cap (also SUBCAD_JOBS)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("cad", help="complete CAD")
    _common(p)
    p = sp.add_parser("variety", help="variety sub-CAD")
    _common(p)
    p = sp.add_parser("layered", help="layered sub-CAD")
    _common(p)
    p.add_argument("--recursive", action="store_true", help="add layers one call at a time")
    p.add_argument("--state", default=None, help="state file for --recursive")
    p = sp.add_parser("lv", help="layered variety sub-CAD")
    _common(p, layers_required=True)
    p = sp.add_parser("tticad", help="truth-table invariant (sub-)CAD")
    _common(p)
    p.add_argument("--mode", choices=tuple(TTICAD_CLI_MODES), default="full")

    p = sp.add_parser("bounds", help="complexity bounds")
    p.add_argument("--params", default=None, help="e.g. n=3,m_A=3,m_E=1,d_A=3,d_E=2,l_A=2,l_E=2")
    p.add_argument("--kind", action="append", default=None, help="bound kind (repeatable)")
    p.add_argument("--csv", default=None, metavar="FILE", help="write the double-log table ('-' for stdout)")
    p.add_argument("--n-range", default="2..8")

    for name, helptext in (("plot2d", "SVG of a 2D (sub-)CAD"), ("verify", "check a (sub-)CAD")):
        p = sp.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("--kind", choices=("cad", "variety", "layered", "lv", "tticad"), default="cad")
        p.add_argument("--mode", choices=tuple(TTICAD_CLI_MODES), default="full")
        if name == "plot2d":
            p.add_argument("-o", "--output", default=None)
            p.add_argument("--window", default=None, help="xlo,xhi,ylo,yhi")

    p = sp.add_parser("bench", help="cell counts and times over fixtures")
    p.add_argument("fixtures", help="fixture file or directory")
    p.add_argument("--rows", default=None, help="comma list from full,ec,variety,lv2,lv1")
    p.add_argument("--rule", choices=COEFFICIENT_RULES, default="all")
    return ap


HANDLERS = {
    "cad": cmd_construct,
    "variety": cmd_construct,
    "layered": cmd_construct,
    "lv": cmd_construct,
    "tticad": cmd_construct,
    "bounds": cmd_bounds,
    "plot2d": cmd_plot2d,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    os.environ["SUBCAD_JOBS"] = str(jobs_from_env(args.jobs))
    if args.command in ("layered",) and args.layers is None and not args.recursive:
        sys.stderr.write("error: layered needs --layers\n")
        return EXIT_USAGE
    if getattr(args, "kind", None) in ("layered", "lv") and args.layers is None:
        sys.stderr.write("error: --kind layered/lv needs --layers\n")
        return EXIT_USAGE
    try:
        return HANDLERS[args.command](args)
    except NotWellOriented as e:
        sys.stderr.write(f"{e}\n")
        sys.stdout.write(json.dumps({"status": "FAIL", "polynomial": str(e.poly), "cell": list(e.cell.index),
                                     "dimension": e.cell.dimension}) + "\n")
        return EXIT_FAIL
    except (UsageError, FormulaSyntaxError, PolynomialError, ProjectionError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except Exception as e:  # pragma: no cover
        log.exception("internal error")
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
