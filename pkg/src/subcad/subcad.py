"""Sub-CAD constructions: variety, layered, recursive layered, layered variety
and their truth-table invariant counterparts.

Every function takes a :class:`~subcad.formula.Formula` (or a list of them
for the TTICAD variants) or a plain polynomial list, and returns a
:class:`SubCAD` whose cells carry the indices they would have in the
complete CAD built with the same projection operator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .formula import Formula, evaluate_on_cell
from .lifting import (
    Cell,
    NotWellOriented,
    NULLIFICATION_MODES,
    cell_from_dict,
    generate_stack,
    lift_levels,
    root_cell,
)
from .polynomial import Polynomial, VarOrder, squarefree_factors
from .projection import ProjectionRun, projection_phase

__all__ = [
    "KINDS",
    "SubCAD",
    "LayeredState",
    "complete_cad",
    "variety_subcad",
    "variety_subcad_lower",
    "layered_subcad",
    "layered_recursive",
    "layered_variety_subcad",
    "sub_tticad",
]

KINDS = ("complete", "variety", "variety_lower", "layered", "layered_variety", "v_tticad", "l_tticad", "lv_tticad", "tticad")

Input = Union[Formula, Sequence[Polynomial]]


@dataclass
class SubCAD:
    """An index-consistent collection of cells.

    ``base_cells`` counts the cells of ``R^(n-1)`` (or ``R^(k-1)`` for a
    lower-variety run) that the final lift started from.
    """

    cells: List[Cell]
    kind: str
    invariance: str
    run: ProjectionRun
    layers: Optional[int] = None
    ec: List[Polynomial] = field(default_factory=list)
    base_cells: Optional[int] = None
    superset: bool = False
    formulas: List[Formula] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def n(self) -> int:
        return self.run.n

    def dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for c in self.cells:
            out[c.dimension] = out.get(c.dimension, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    def indices(self) -> List[Tuple[int, ...]]:
        return [c.index for c in self.cells]

    def evaluate(self, formulas: Optional[Sequence[Formula]] = None) -> List[int]:
        """Attach truth values; returns the number of true cells per formula."""
        formulas = list(formulas if formulas is not None else self.formulas)
        counts = []
        for k, phi in enumerate(formulas):
            key = f"phi{k + 1}"
            t = 0
            for c in self.cells:
                v = evaluate_on_cell(phi, c)
                c.truth[key] = v
                t += v
            counts.append(t)
        return counts

    def summary(self) -> str:
        dims = ", ".join(f"{d}:{k}" for d, k in self.dims().items())
        s = f"kind: {self.kind}"
        if self.layers is not None:
            s += f" ({self.layers})"
        s += f"\ncells: {len(self.cells)}, dims: {{{dims}}}"
        if self.base_cells is not None:
            s += f"\nbase cells: {self.base_cells}"
        if self.superset:
            s += "\nsuperset: nullified stacks included"
        for k in range(len(self.formulas)):
            key = f"phi{k + 1}"
            if self.cells and key in self.cells[0].truth:
                s += f"\ntrue ({key}): {sum(c.truth[key] for c in self.cells)}"
        return s

    def to_dict(self, signs: bool = True) -> dict:
        polys = self.run.all_polys() if signs else ()
        return {
            "kind": self.kind,
            "invariance": self.invariance,
            "layers": self.layers,
            "ec": [str(p) for p in self.ec],
            "order": list(self.run.order.names),
            "operator": self.run.operator,
            "base_cells": self.base_cells,
            "superset": self.superset,
            "cells": [c.to_dict(polys) for c in self.cells],
        }

    def to_json(self, signs: bool = True, **kw) -> str:
        return json.dumps(self.to_dict(signs), **kw)


# ---------------------------------------------------------------------------
# helpers


def _split_input(phi: Input, order: Optional[VarOrder]) -> Tuple[List[Polynomial], VarOrder, List[Formula], Optional[Polynomial]]:
    if isinstance(phi, Formula):
        return phi.polynomials(), order or phi.order, [phi], phi.ec
    polys = list(phi)
    if order is None:
        if not polys:
            raise ValueError("an empty polynomial list needs an explicit variable order")
        order = polys[0].order
    return polys, order, [], None


def _sorted_cells(cells: List[Cell]) -> List[Cell]:
    return sorted(cells, key=lambda c: c.index)


def _check_mode(nullification: str):
    if nullification not in NULLIFICATION_MODES:
        raise ValueError(f"nullification must be one of {NULLIFICATION_MODES}")


def _lower_levels(run: ProjectionRun, start, top: int, keep_base=None):
    """Lift to ``R^top`` with the McCallum tiers; point nullification is an error below the top."""
    return lift_levels(run, start, 1, top, keep_base=keep_base)


def _final_stack(run: ProjectionRun, c: Cell, E: Sequence[Polynomial], nullification: str):
    """Stack over ``c`` w.r.t. the constraint factors ``E``.

    Returns ``(stack, whole)`` where ``whole`` is true if some factor of
    ``E`` vanished identically over ``c`` and the stack was instead built
    from the non-nullified top tier; every cell of such a stack lies on the
    variety.
    """
    nulled = [e for e in E if generate_stack([e], c, "include-stack").nullified]
    if not nulled:
        return generate_stack(E, c), False
    if c.dimension > 0 and nullification == "fail":
        raise NotWellOriented(nulled[0], c)
    return generate_stack(run.tier(run.n), c, "include-stack"), True


def _ec_lift(run: ProjectionRun, base: Sequence[Cell], nullification: str, sections_only: bool):
    """Final lift w.r.t. the constraint factors ``run.ec``."""
    out: List[Cell] = []
    superset = False
    for c in base:
        st, whole = _final_stack(run, c, run.ec, nullification)
        if whole:
            for d in st.cells:
                d.flags["nullified_stack"] = True
            out.extend(st.cells)
            superset = superset or c.dimension > 0
        else:
            out.extend(st.sections if sections_only else st.cells)
    return out, superset


def _run_for(polys, order, operator, ec, rule, leading_only=False, run=None) -> ProjectionRun:
    if run is not None:
        return run
    return projection_phase(polys, order, operator, ec, rule=rule, leading_coefficient_only=leading_only)


def _top_ec(ec: Optional[Polynomial], n: int) -> Polynomial:
    if ec is None:
        raise ValueError("no equational constraint designated")
    fac = squarefree_factors(ec)
    if not fac or any(f.level != n for f in fac):
        raise ValueError("every factor of the equational constraint must have the last variable as main variable")
    return ec


# ---------------------------------------------------------------------------
# complete CAD


def complete_cad(
    phi: Input,
    order: Optional[VarOrder] = None,
    operator: str = "mccallum",
    rule: str = "all",
    nullification: str = "fail",
    run: Optional[ProjectionRun] = None,
) -> SubCAD:
    """Complete CAD.  With ``mccallum_ec`` or ``tticad`` the final lift is
    w.r.t. the constraints only, giving an EC-invariant CAD."""
    _check_mode(nullification)
    polys, order, formulas, ec = _split_input(phi, order)
    n = len(order)
    if operator == "mccallum_ec":
        _top_ec(ec, n)
    run = _run_for(polys, order, operator, ec, rule, run=run)
    if operator in ("mccallum_ec", "tticad"):
        base = _lower_levels(run, [root_cell()], n - 1)
        cells, sup = _ec_lift(run, base, nullification, sections_only=False)
        inv = "truth" if operator == "mccallum_ec" else "truth_table"
        return SubCAD(_sorted_cells(cells), "complete", inv, run, ec=list(run.ec), base_cells=len(base),
                      superset=sup, formulas=formulas)
    cells = lift_levels(run, [root_cell()], 1, n, point_nullification_levels=(n,))
    return SubCAD(_sorted_cells(cells), "complete", "sign", run, formulas=formulas)


# ---------------------------------------------------------------------------
# Algorithm 1


def variety_subcad(
    phi: Input,
    ec: Optional[Polynomial] = None,
    order: Optional[VarOrder] = None,
    rule: str = "all",
    nullification: str = "fail",
    run: Optional[ProjectionRun] = None,
) -> SubCAD:
    """Variety sub-CAD: the cells of the EC-invariant CAD lying on ``ec = 0``.

    >>> from subcad.formula import parse
    >>> phi = parse("x^2+y^2-1=0 /\\\\ x<0", VarOrder.of("x,y"), ec="auto")
    >>> len(variety_subcad(phi))
    8
    """
    _check_mode(nullification)
    polys, order, formulas, ec0 = _split_input(phi, order)
    ec = _top_ec(ec if ec is not None else ec0, len(order))
    n = len(order)
    run = _run_for(polys, order, "mccallum_ec", ec, rule, run=run)
    base = _lower_levels(run, [root_cell()], n - 1)
    cells, sup = _ec_lift(run, base, nullification, sections_only=True)
    return SubCAD(_sorted_cells(cells), "variety", "truth", run, ec=list(run.ec), base_cells=len(base),
                  superset=sup, formulas=formulas)


# ---------------------------------------------------------------------------
# Algorithm 2


def variety_subcad_lower(
    phi: Input,
    ec: Optional[Polynomial] = None,
    order: Optional[VarOrder] = None,
    rule: str = "all",
) -> SubCAD:
    """Sub-CAD for an EC whose factors share a main variable ``x_k`` below ``x_n``.

    Full McCallum projection; CAD of ``R^(k-1)``; lift to ``R^k`` keeping
    sections of the full tier ``k``; then complete lifting.  The result is
    a superset of a variety sub-CAD.
    """
    polys, order, formulas, ec0 = _split_input(phi, order)
    ec = ec if ec is not None else ec0
    if ec is None:
        raise ValueError("no equational constraint designated")
    fac = squarefree_factors(ec)
    levels = {f.level for f in fac}
    if len(levels) != 1:
        raise ValueError("all factors of the equational constraint must share one main variable")
    k = levels.pop()
    n = len(order)
    run = projection_phase(list(polys) + [ec], order, "mccallum", ec, rule=rule)
    base = _lower_levels(run, [root_cell()], k - 1)
    mid = lift_levels(run, base, k, k, keep_cell=lambda i, c: c.is_section)
    cells = lift_levels(run, mid, k + 1, n, point_nullification_levels=(n,)) if k < n else mid
    # CAD of R^k restricted to the variety's base and its full lift
    sub = SubCAD(_sorted_cells(cells), "variety_lower", "truth", run, ec=list(run.ec),
                 base_cells=len(lift_levels(run, base, k, k)), superset=True, formulas=formulas)
    sub.notes.append(f"constraint main variable x_{k}; {len(mid)} sections of R^{k}")
    return sub


# ---------------------------------------------------------------------------
# Algorithm 3


def _layer_guard(ell: int):
    return lambda i, c: c.dimension > i - ell - 1


def layered_subcad(
    phi: Input,
    layers: int,
    order: Optional[VarOrder] = None,
    operator: str = "mccallum",
    rule: str = "all",
    leading_coefficient_only: bool = False,
    run: Optional[ProjectionRun] = None,
) -> SubCAD:
    """The cells of dimension ``n - i`` for ``0 <= i < layers``.

    ``layers = n + 1`` gives the complete CAD.  With ``mccallum_ec`` the
    final lift is w.r.t. the constraint, as for the EC-invariant CAD.
    """
    polys, order, formulas, ec = _split_input(phi, order)
    n = len(order)
    if not 1 <= layers <= n + 1:
        raise ValueError(f"layers must lie in 1..{n + 1}")
    if leading_coefficient_only and layers != 1:
        raise ValueError("the leading-coefficient simplification is valid for 1-layered sub-CADs only")
    if operator == "mccallum_ec":
        _top_ec(ec, n)
    run = _run_for(polys, order, operator, ec, rule, leading_coefficient_only, run)
    guard = _layer_guard(layers)
    lift_set = None
    if operator in ("mccallum_ec", "tticad"):
        lift_set = lambda i, c: run.ec if i == n else run.tier(i)
    cells = lift_levels(run, [root_cell()], 1, n, lift_set=lift_set, keep_base=guard,
                        point_nullification_levels=(n,))
    cells = [c for c in cells if c.dimension > n - layers]
    inv = {"mccallum": "sign", "mccallum_ec": "truth", "tticad": "truth_table"}[operator]
    return SubCAD(_sorted_cells(cells), "layered", inv, run, layers=layers, ec=list(run.ec), formulas=formulas)


# ---------------------------------------------------------------------------
# Algorithm 4


@dataclass
class LayeredState:
    """Resumable state of the recursive layered construction.

    ``terminators[i]`` holds the cells of ``R^i`` of dimension
    ``i - layers`` that the next call starts from.
    """

    run: ProjectionRun
    layers: int = 0
    cells: List[Cell] = field(default_factory=list)
    terminators: Dict[int, List[Cell]] = field(default_factory=dict)
    formulas: List[Formula] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "order": list(self.run.order.names),
            "operator": self.run.operator,
            "rule": self.run.rule,
            "tiers": {str(i): [str(p) for p in self.run.tier(i)] for i in range(1, self.run.n + 1)},
            "ec": [str(p) for p in self.run.ec],
            "layers": self.layers,
            "cells": [c.to_dict() for c in self.cells],
            "terminators": {str(i): [c.to_dict() for c in cs] for i, cs in self.terminators.items()},
            "formulas": [str(f) for f in self.formulas],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "LayeredState":
        from .formula import parse

        order = VarOrder.of(d["order"])
        tiers = {int(i): [Polynomial.parse(s, order) for s in ps] for i, ps in d["tiers"].items()}
        run = ProjectionRun(order, d["operator"], tiers, ec=[Polynomial.parse(s, order) for s in d["ec"]],
                            ec_level=len(order) if d["ec"] else None, rule=d.get("rule", "all"))
        st = cls(run, d["layers"])
        st.cells = [cell_from_dict(c, order) for c in d["cells"]]
        st.terminators = {int(i): [cell_from_dict(c, order) for c in cs] for i, cs in d["terminators"].items()}
        st.formulas = [parse(s, order) for s in d.get("formulas", [])]
        return st

    @classmethod
    def from_json(cls, text: str) -> "LayeredState":
        return cls.from_dict(json.loads(text))


def layered_recursive(
    state: Optional[LayeredState] = None,
    phi: Optional[Input] = None,
    order: Optional[VarOrder] = None,
    operator: str = "mccallum",
    rule: str = "all",
) -> Tuple[SubCAD, LayeredState]:
    """Add one layer.  The first call (``state`` None) needs ``phi``.

    Projection polynomials live in the state and are never recomputed.
    """
    if state is None:
        if phi is None:
            raise ValueError("the first call needs an input")
        polys, order, formulas, ec = _split_input(phi, order)
        run = projection_phase(polys, order, operator, ec, rule=rule)
        state = LayeredState(run, 0, [], {0: [root_cell()]}, formulas)
    run = state.run
    n = run.n
    if state.layers >= n + 1:
        raise ValueError("the complete CAD has already been produced")
    ell = state.layers  # layers done so far
    new_terms: Dict[int, List[Cell]] = {}
    frontier: List[Cell] = []
    for i in range(1, n + 1):
        todo = list(state.terminators.get(i - 1, [])) + frontier
        P = run.ec if (i == n and run.operator in ("mccallum_ec", "tticad")) else run.tier(i)
        frontier = []
        terms: List[Cell] = []
        for c in todo:
            st = generate_stack(P, c, allow_point_nullification=i == n)
            for d in st.cells:
                (terms if d.dimension == i - ell - 1 else frontier).append(d)
        new_terms[i] = terms
    added = list(state.terminators.get(n, [])) + frontier
    cells = _sorted_cells(state.cells + added)
    new_state = LayeredState(run, ell + 1, cells, new_terms, state.formulas)
    inv = {"mccallum": "sign", "mccallum_ec": "truth", "tticad": "truth_table"}[run.operator]
    sub = SubCAD(cells, "layered", inv, run, layers=ell + 1, ec=list(run.ec), formulas=state.formulas)
    return sub, new_state


# ---------------------------------------------------------------------------
# Algorithm 5


def layered_variety_subcad(
    phi: Input,
    layers: int,
    ec: Optional[Polynomial] = None,
    order: Optional[VarOrder] = None,
    rule: str = "all",
    nullification: str = "fail",
    run: Optional[ProjectionRun] = None,
) -> SubCAD:
    """The cells of the variety sub-CAD of dimension ``n - 1 - i`` for ``0 <= i < layers``."""
    _check_mode(nullification)
    polys, order, formulas, ec0 = _split_input(phi, order)
    n = len(order)
    ec = _top_ec(ec if ec is not None else ec0, n)
    if not 1 <= layers <= n:
        raise ValueError(f"layers must lie in 1..{n}")
    run = _run_for(polys, order, "mccallum_ec", ec, rule, run=run)
    return _lv_from_run(run, layers, nullification, "layered_variety", "truth", formulas)


def _lv_from_run(run, layers, nullification, kind, inv, formulas):
    n = run.n
    base = lift_levels(run, [root_cell()], 1, n - 1, keep_base=_layer_guard(layers))
    base = [c for c in base if c.dimension > n - 1 - layers]
    cells, sup = _ec_lift(run, base, nullification, sections_only=True)
    return SubCAD(_sorted_cells(cells), kind, inv, run, layers=layers, ec=list(run.ec), base_cells=len(base),
                  superset=sup, formulas=formulas)


# ---------------------------------------------------------------------------
# sub-TTICADs

TTICAD_MODES = ("full", "variety", "layered", "layered_variety")


def sub_tticad(
    phis: Sequence[Formula],
    mode: str = "variety",
    layers: Optional[int] = None,
    order: Optional[VarOrder] = None,
    rule: str = "all",
    nullification: str = "fail",
    run: Optional[ProjectionRun] = None,
) -> SubCAD:
    """Truth-table invariant (sub-)CAD for formulae that each carry a constraint.

    The designated variety is the product of the constraints; the final
    lift is w.r.t. the union of their factors.
    """
    if mode not in TTICAD_MODES:
        raise ValueError(f"mode must be one of {TTICAD_MODES}")
    _check_mode(nullification)
    phis = list(phis)
    if not phis:
        raise ValueError("no formulae")
    order = order or phis[0].order
    n = len(order)
    for k, f in enumerate(phis):
        if f.ec is None:
            raise ValueError(f"formula {k + 1} has no equational constraint")
        _top_ec(f.ec, n)
    if run is None:
        run = projection_phase([], order, "tticad", groups=[(f.polynomials(), f.ec) for f in phis], rule=rule)
    if mode == "full":
        base = _lower_levels(run, [root_cell()], n - 1)
        cells, sup = _ec_lift(run, base, nullification, sections_only=False)
        return SubCAD(_sorted_cells(cells), "tticad", "truth_table", run, ec=list(run.ec), base_cells=len(base),
                      superset=sup, formulas=phis)
    if mode == "variety":
        sub = _lv_from_run(run, n, nullification, "v_tticad", "truth_table", phis)
        sub.layers = None
        return sub
    if layers is None:
        raise ValueError(f"mode {mode} needs a number of layers")
    if mode == "layered":
        sub = layered_subcad([], layers, order, "tticad", rule, run=run)
        sub.kind, sub.formulas = "l_tticad", phis
        return sub
    return _lv_from_run(run, layers, nullification, "lv_tticad", "truth_table", phis)

