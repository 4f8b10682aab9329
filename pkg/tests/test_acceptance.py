"""Acceptance criteria, one test per criterion.

Each test records a single ``CRITERION k: PASS|FAIL ...`` line, printed
in the terminal summary.  Criteria 3 and 4 are known mismatches and are
strict xfails: the counts are computed in full and compared exactly.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from subcad.complexity import FIGURE7_CURVES, PAPER_FIGURE7_PARAMS, bound_log
from subcad.formula import parse
from subcad.lifting import NotWellOriented, lift_full
from subcad.polynomial import Polynomial, VarOrder
from subcad.projection import projection_phase
from subcad.subcad import (
    complete_cad,
    layered_recursive,
    layered_subcad,
    layered_variety_subcad,
    sub_tticad,
    variety_subcad,
    variety_subcad_lower,
)
from subcad.verify import (
    check_index_subset,
    check_variety_membership,
    grid_check,
    parent_cad,
)

XY = VarOrder.of("x, y")
YX = VarOrder.of("y, x")

# wall-clock budgets in seconds
BUDGET_SMALL = 1.0
BUDGET_QUADRICS = 300.0
BUDGET_SPHERES = 900.0
BUDGET_PROPERTIES = 120.0


def record(k, ok, detail):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def timed(f, *a, **kw):
    t = time.perf_counter()
    out = f(*a, **kw)
    return out, time.perf_counter() - t


def phi(text, order, ec="auto"):
    return parse(text, order, ec=ec)


def test_criterion_1_circle_xy():
    checks = []
    f1 = phi("x^2+y^2-1=0 /\\ x<0", XY)
    s, t = timed(complete_cad, f1)
    checks.append(("complete", len(s), 23, t))
    s, t = timed(variety_subcad, f1)
    checks.append(("variety", (len(s), s.evaluate()[0]), (8, 3), t))
    f2 = phi("x^2+y^2-1<0 /\\ x=0", XY, ec="x")
    s, t = timed(variety_subcad_lower, f2)
    checks.append(("alg2", (len(s), s.base_cells), (11, 7), t))
    f3 = phi("x^2+y^2-1<0 /\\ x<0", XY, ec=None)
    s, t = timed(layered_subcad, f3, 1)
    checks.append(("1-layered", (len(s), s.dims()), (8, {2: 8}), t))
    ok = all(got == want and t < BUDGET_SMALL for _, got, want, t in checks)
    detail = "; ".join(f"{name} {got} (want {want}, {t:.2f}s)" for name, got, want, t in checks)
    assert record(1, ok, detail), detail


def test_criterion_2_circle_yx():
    f1 = phi("x^2+y^2-1=0 /\\ x<0", YX)
    checks = []
    for name, fn, want in (("complete", complete_cad, 19), ("variety", variety_subcad, 4),
                           ("1-LV", lambda f: layered_variety_subcad(f, 1), 2)):
        s, t = timed(fn, f1)
        checks.append((name, len(s), want, t))
    ok = all(got == want and t < BUDGET_SMALL for _, got, want, t in checks)
    detail = "; ".join(f"{name} {got} (want {want}, {t:.2f}s)" for name, got, want, t in checks)
    assert record(2, ok, detail), detail


def _tier_report(run):
    return "tiers " + ", ".join(f"{i}:{len(run.tier(i))}" for i in range(1, run.n + 1))


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="cell counts exceed the published ones; see the decisions ledger")
def test_criterion_3_random_quadrics(problem):
    pr = problem("quadrics_5_1")
    f = pr.formula
    t0 = time.perf_counter()
    lv1 = layered_variety_subcad(f, 1)
    run = lv1.run
    got = {
        "full": len(complete_cad(f)),
        "ec": len(complete_cad(f, operator="mccallum_ec", run=run)),
        "variety": len(variety_subcad(f, run=run)),
        "lv2": len(layered_variety_subcad(f, 2, run=run)),
        "lv1": len(lv1),
        "lv1_true": lv1.evaluate()[0],
    }
    dt = time.perf_counter() - t0
    want = {"full": 17047, "ec": 1315, "variety": 422, "lv2": 348, "lv1": 138, "lv1_true": 36}
    diff = {k: f"{got[k]}/{want[k]}" for k in want if got[k] != want[k]}
    ok = not diff and dt < BUDGET_QUADRICS
    detail = f"ours/published {diff or got}, {_tier_report(run)}, {dt:.0f}s"
    assert record(3, ok, detail), detail


def _spheres(pr, want):
    t0 = time.perf_counter()
    lv1 = sub_tticad(pr.formulas, "layered_variety", 1)
    run = lv1.run
    got = {
        "full": len(sub_tticad(pr.formulas, "full", run=run)),
        "lv1": len(lv1),
        "lv2": len(sub_tticad(pr.formulas, "layered_variety", 2, run=run)),
        "variety": len(sub_tticad(pr.formulas, "variety", run=run)),
    }
    if "base" in want:
        got["base"] = lv1.base_cells
    return got, run, time.perf_counter() - t0


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="cell counts exceed the published ones; see the decisions ledger")
def test_criterion_4_spheres(problem):
    got2, run2, t2 = _spheres(problem("spheres2"), w2 := {"full": 4861, "base": 249, "lv1": 528, "lv2": 1514,
                                                          "variety": 1976})
    got3, run3, t3 = _spheres(problem("spheres3"), w3 := {"full": 10063, "lv1": 1104, "lv2": 3166,
                                                          "variety": 4130})
    d2 = {k: f"{got2[k]}/{w2[k]}" for k in w2 if got2[k] != w2[k]}
    d3 = {k: f"{got3[k]}/{w3[k]}" for k in w3 if got3[k] != w3[k]}
    ok = not d2 and not d3 and t2 + t3 < BUDGET_SPHERES
    detail = (f"two spheres ours/published {d2 or got2} ({_tier_report(run2)}); "
              f"three spheres {d3 or got3} ({_tier_report(run3)}); {t2 + t3:.0f}s")
    assert record(4, ok, detail), detail


def test_criterion_5_piano_movers():
    detail = "SKIPPED: the problem formulation is not given in the source, only cited"
    ACCEPTANCE_LINES.append(f"CRITERION 5: {detail}")
    pytest.skip(detail)


def _random_poly(rng, order, degree=3, terms=3):
    n = len(order)
    names = order.names
    mons = set()
    while len(mons) < terms:
        e = [0] * n
        for _ in range(rng.randint(1, degree)):
            e[rng.randrange(n)] += 1
        mons.add(tuple(e))
    # make sure the top variable occurs
    if all(m[-1] == 0 for m in mons):
        mons.pop()
        mons.add(tuple([0] * (n - 1) + [1]))
    text = " + ".join(
        f"({rng.choice([-3, -2, -1, 1, 2, 3])})" + "".join(f"*{v}^{k}" for v, k in zip(names, m) if k)
        for m in mons
    )
    return Polynomial.parse(text + f" + ({rng.randint(-2, 2)})", order)


def _random_inputs(count, seed=20130501):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        order = VarOrder.of("x, y") if len(out) % 2 == 0 else VarOrder.of("x, y, z")
        k = 2 if len(order) == 2 else 1
        polys = [_random_poly(rng, order, 3 if len(order) == 2 else 2, 3) for _ in range(k)]
        try:
            full = lift_full(projection_phase(polys, order))
        except NotWellOriented:
            continue
        out.append((polys, order, full))
    return out


def test_criterion_6_properties(fixture_path, problem):
    t0 = time.perf_counter()
    failures = []
    # (a) layer union and recursion
    inputs = _random_inputs(20)
    for polys, order, full in inputs:
        n = len(order)
        want = sorted(c.index for c in full)
        union = set()
        for ell in range(1, n + 2):
            union |= {c.index for c in layered_subcad(polys, ell, order) if c.dimension == n + 1 - ell}
        if sorted(union) != want:
            failures.append(f"layer union {polys}")
        sub, st = layered_recursive(None, polys, order)
        for ell in range(1, n + 2):
            if sub.indices() != layered_subcad(polys, ell, order).indices():
                failures.append(f"recursive layer {ell} {polys}")
            if ell <= n:
                sub, st = layered_recursive(st)
        if sub.indices() != want:
            failures.append(f"recursive full {polys}")
    # (b), (c), (d) on the planar fixtures
    outputs = []
    for name, order in (("circle_phi1", XY), ("circle_phi1_yx", YX)):
        f = problem(name).formula
        outputs += [variety_subcad(f), layered_variety_subcad(f, 1), complete_cad(f),
                    complete_cad(f, operator="mccallum_ec")]
    for name in ("circle_phi3", "circle_phi3_yx"):
        f = problem(name).formula
        outputs += [layered_subcad(f, 1), layered_subcad(f, 2), complete_cad(f)]
    outputs.append(variety_subcad_lower(problem("circle_phi2").formula))
    grid_points = 0
    for s in outputs:
        s.evaluate()
        if s.kind in ("variety", "layered_variety"):
            rep = check_variety_membership(s)
            failures += rep.violations
        rep = check_index_subset(s, parent_cad(s.run))
        failures += rep.violations
        rep = grid_check(s)
        grid_points += rep.checked
        failures += rep.violations
    # variety membership on a three-dimensional output too
    s = layered_variety_subcad(problem("quadrics_5_1").formula, 1)
    failures += check_variety_membership(s).violations
    # (e) double-log curve ordering
    for n in range(2, 9):
        logs = [bound_log(k, PAPER_FIGURE7_PARAMS.replace(n=n)) for k in FIGURE7_CURVES]
        if logs != sorted(logs, reverse=True):
            failures.append(f"curve order at n={n}")
    dt = time.perf_counter() - t0
    ok = not failures and dt < BUDGET_PROPERTIES
    detail = (f"{len(inputs)} random inputs, {len(outputs)} planar outputs, {grid_points} grid points, "
              f"{len(failures)} violations, {dt:.0f}s")
    assert record(6, ok, detail), "; ".join(failures[:5]) or detail


def test_criterion_7_nullification(problem):
    f = problem("nullified").formula
    try:
        variety_subcad(f)
        failed = None
    except NotWellOriented as e:
        failed = e
    ok = failed is not None and failed.cell.dimension > 0 and str(failed.poly) == str(f.ec)
    sup = variety_subcad(f, nullification="include-stack")
    extra = [c for c in sup if sup.ec[0] not in c.nullified and c.sign(sup.ec[0]) != 0]
    flagged = [c for c in sup if c.flags.get("nullified_stack")]
    ok = ok and sup.superset and flagged and all(c.flags.get("nullified_stack") for c in extra)
    detail = (f"FAIL raised for {failed.poly} on {list(failed.cell.index)} (dim {failed.cell.dimension}); "
              f"include-stack {len(sup)} cells, {len(flagged)} in nullified stacks" if failed else "no FAIL raised")
    assert record(7, ok, detail), detail
