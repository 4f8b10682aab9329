import random
from fractions import Fraction
from itertools import combinations

import pytest

from subcad.formula import load_problem
from subcad.polynomial import Polynomial, VarOrder, discriminant, resultant, squarefree_basis
from subcad.projection import (
    ProjectionError,
    _coefficients,
    proj_ec,
    proj_mccallum,
    proj_tticad,
    projection_phase,
)
from subcad.roots import isolate_roots_of_set

XY = VarOrder.of("x, y")


def P(s, order=XY):
    return Polynomial.parse(s, order)


def roots_of(polys):
    return [r for r, _ in isolate_roots_of_set(polys)]


def test_mccallum_examples():
    got = proj_mccallum([P("x^2+y^2-1")], "y")
    # finest squarefree basis: x^2 - 1 is not split further
    assert roots_of(got) == [-1, 1]
    assert proj_mccallum([P("y")], "y") == []
    got = proj_mccallum([P("y^2-x"), P("y^2-x-1")], "y")
    assert set(got) == {P("x"), P("x+1")}


def test_ec_examples():
    got = proj_ec([P("x^2+y^2-1"), P("x")], [P("x^2+y^2-1")], "y")
    assert roots_of(got) == [-1, 0, 1]
    assert set(proj_ec([P("x^2+y^2-1")], [P("x^2+y^2-1")], "y")) == set(proj_mccallum([P("x^2+y^2-1")], "y"))
    # constant resultant dropped
    assert proj_ec([P("y+1"), P("y+2")], [P("y+1")], "y") == []
    with pytest.raises(ProjectionError):
        proj_ec([P("y")], [], "y")


def test_tticad_examples():
    A, E = [P("x^2+y^2-1"), P("x")], [P("x^2+y^2-1")]
    assert set(proj_tticad([(A, E)], "y")) == set(proj_ec(A, E, "y"))
    two = proj_tticad([(A, E), ([P("x^2+y^2-1"), P("x-1/2")], E)], "y")
    assert roots_of(two) == [-1, 0, Fraction(1, 2), 1]


def test_phase_examples():
    run = projection_phase([P("x^2+y^2-1"), P("x")], XY, "mccallum")
    # tiers are indexed by main variable, so x sits in tier 1
    assert run.tier(2) == [P("x^2+y^2-1")]
    assert P("x") in run.tier(1)
    assert roots_of(run.tier(1)) == [-1, 0, 1]
    run = projection_phase([P("x^2+y^2-1"), P("x")], XY, "mccallum_ec", ec=P("x^2+y^2-1"))
    assert roots_of(run.tier(1)) == [-1, 0, 1]
    assert run.ec == [P("x^2+y^2-1")]
    x = VarOrder.of("x")
    run = projection_phase([P("x^2-2", x)], x)
    assert run.n == 1 and run.tier(1) == [P("x^2-2", x)]


def test_phase_json_and_diff():
    run = projection_phase([P("x^2+y^2-1"), P("x")], XY)
    d = run.to_dict()
    assert d["order"] == ["x", "y"]
    other = projection_phase([P("x^2+y^2-1")], XY)
    diff = other.diff(run)
    assert diff  # x only appears in one of them


def test_tticad_smaller_than_product_constraint():
    pr = load_problem(__import__("pathlib").Path(__file__).parent.parent / "fixtures" / "spheres2.txt")
    groups = [(f.polynomials(), f.ec) for f in pr.formulas]
    tti = projection_phase([], pr.order, "tticad", groups=groups)
    prod = pr.formulas[0].ec * pr.formulas[1].ec
    allp = pr.polynomials()
    ec_run = projection_phase(allp, pr.order, "mccallum_ec", ec=prod)
    assert sum(tti.sizes().values()) < sum(ec_run.sizes().values())
    assert tti.sizes()[2] < ec_run.sizes()[2]


def _rand_biv(rng, d):
    terms = []
    for i in range(d + 1):
        for j in range(d + 1):
            if rng.random() < 0.6:
                terms.append(f"({rng.randint(-4, 4)})*x^{i}*y^{j}")
    terms.append(f"y^{rng.randint(1, d)}")
    return P(" + ".join(terms))


def _raw_pe(A, E, k):
    out = []
    for f in E:
        out.extend(_coefficients(f, k, "all"))
        if f.degree(k) >= 2:
            out.append(discriminant(f, k))
    for f, g in combinations(E, 2):
        out.append(resultant(f, g, k))
    for f in E:
        for g in A:
            if g not in E:
                out.append(resultant(f, g, k) if g.degree(k) > 0 else g ** f.degree(k))
    return [p for p in out if not p.is_constant()]


def test_degree_and_size_bounds_random():
    """Degree and size of P_E(A) against the bounds.

    The degree of a resultant can reach 2 d_A^2, so the valid form is
    max(2 d_E^2, 2 d_(A-E)^2); the size is checked against the itemised
    count (coefficients, discriminants, resultants)."""
    rng = random.Random(5)
    for _ in range(20):
        d = rng.randint(1, 3)
        A = [_rand_biv(rng, d) for _ in range(rng.randint(2, 3))]
        A = [p for p in squarefree_basis(A) if p.mvar == 1]
        if len(A) < 2:
            continue
        E = A[:1]
        rest = A[1:]
        dE = max(p.max_degree() for p in E)
        dR = max(p.max_degree() for p in rest)
        raw = _raw_pe(A, E, 1)
        max_form = max(2 * dE * dE, 2 * dR * dR)
        assert all(p.max_degree() <= max_form for p in raw)
        mE, mR = len(E), len(rest)
        itemised = mE * (dE + 1) + mE + mE * (mE - 1) // 2 + mE * mR
        assert len(raw) <= itemised


def test_stated_degree_bound_counterexample():
    # two generic quadratics: the resultant has degree 8 > d_A^2 = 4
    f, g = P("x^2*y^2 + x*y + 1 + y^2"), P("y^2 + x^2*y + x^2 + 1")
    r = resultant(f, g, "y")
    assert r.max_degree() > 4
    assert r.max_degree() <= 8
