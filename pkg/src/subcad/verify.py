"""Independent checks on (sub-)CADs.

``grid_check`` places every rational point of a grid in the cell that
contains it, found by isolating roots of the lifting polynomials at the
point itself, and compares exact signs and truth values with the cell's.
The remaining checks are structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .formula import evaluate
from .lifting import Cell, lift_full, lift_levels, root_cell
from .projection import ProjectionRun
from .polynomial import Polynomial
from .roots import compare_roots, merge_roots, real_roots_over
from .subcad import SubCAD, _ec_lift

__all__ = [
    "Report",
    "locate",
    "grid_points",
    "grid_check",
    "check_variety_membership",
    "check_index_subset",
    "check_dimensions",
    "check_cylindrical",
    "parent_cad",
    "run_invariant_suite",
]


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"{self.name}: {status} ({self.checked} checked)"


def _lift_sets(sub: SubCAD) -> Dict[Tuple[int, ...], Sequence[Polynomial]]:
    """Index prefix -> polynomials the stack over that prefix was built from."""
    out: Dict[Tuple[int, ...], Sequence[Polynomial]] = {}
    for c in sub.cells:
        d = c
        while d is not None and d.level > 0:
            key = d.index[:-1]
            if key not in out and d.lift_set:
                out[key] = d.lift_set
            d = d.base
    return out


def _stack_roots(polys: Sequence[Polynomial], k: int, point: Sequence[Fraction]) -> list:
    entries = []
    for j, p in enumerate(polys):
        rs = real_roots_over(p, k, point)
        if rs is None:
            continue
        entries.extend((r, [j]) for r in rs)
    return [r for r, _ in merge_roots(entries, tuple(point))]


def _stack_position(y: Fraction, polys: Sequence[Polynomial], k: int, point: Sequence[Fraction], roots=None) -> int:
    if roots is None:
        roots = _stack_roots(polys, k, point)
    pos = 1
    for r in roots:
        s = compare_roots(y, r, tuple(point))
        if s < 0:
            return pos
        if s == 0:
            return pos + 1
        pos += 2
    return pos


def locate(sub: SubCAD, point: Sequence[Fraction], lift_sets=None) -> Tuple[Tuple[int, ...], Optional[Cell]]:
    """Index of the CAD cell containing a rational point, and the sub-CAD cell if present."""
    lift_sets = lift_sets if lift_sets is not None else _lift_sets(sub)
    by_index = {c.index: c for c in sub.cells}
    idx: Tuple[int, ...] = ()
    for k in range(len(point)):
        polys = lift_sets.get(idx)
        if polys is None:
            return idx, None
        idx = idx + (_stack_position(Fraction(point[k]), polys, k, point[:k]),)
    return idx, by_index.get(idx)


def grid_points(lo=-3, hi=3, step=Fraction(1, 16)) -> Iterable[Tuple[Fraction, Fraction]]:
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    n = int((hi - lo) / step)
    for i in range(n + 1):
        for j in range(n + 1):
            yield (lo + i * step, lo + j * step)


def _tracked(c: Cell) -> List[Polynomial]:
    out: List[Polynomial] = []
    d = c
    while d is not None and d.level > 0:
        for p in d.lift_set:
            if p not in d.nullified:
                out.append(p)
        d = d.base
    return out


class _GridSign:
    """Exact signs at points ``(a/q, b/q)`` by integer evaluation of ``q^D p``."""

    def __init__(self, q: int):
        self.q = q
        self._forms: Dict[Polynomial, list] = {}
        self._cache: Dict[tuple, int] = {}

    def __call__(self, p: Polynomial, nums: Tuple[int, ...]) -> int:
        key = (p, nums[: p.level])
        s = self._cache.get(key)
        if s is not None:
            return s
        form = self._forms.get(p)
        if form is None:
            ip = p.clear_denominators()
            D = ip.total_degree()
            form = [(int(c), m, self.q ** (D - sum(m))) for m, c in ip.terms.items()]
            self._forms[p] = form
        v = 0
        for c, m, scale in form:
            t = c * scale
            for a, e in zip(nums, m):
                if e:
                    t *= a**e
            v += t
        s = (v > 0) - (v < 0)
        self._cache[key] = s
        return s


def grid_check(sub: SubCAD, lo=-3, hi=3, step=Fraction(1, 16)) -> Report:
    """Sign- and truth-invariance of a 2D (sub-)CAD against exact evaluation on a grid."""
    if sub.n != 2:
        raise ValueError("the grid oracle handles CADs of R^2 only")
    rep = Report("grid sign invariance")
    step = Fraction(step)
    q = step.denominator * Fraction(lo).denominator * Fraction(hi).denominator
    gs = _GridSign(q)
    lift_sets = _lift_sets(sub)
    col_cache: Dict[Fraction, tuple] = {}
    by_index = {c.index: c for c in sub.cells}
    for x, y in grid_points(lo, hi, step):
        if x not in col_cache:
            i1 = locate(sub, (x,), lift_sets)[0]
            polys = lift_sets.get(i1)
            col_cache[x] = (i1, polys, _stack_roots(polys, 1, (x,)) if polys is not None else None)
        i1, polys, roots = col_cache[x]
        if polys is None:
            continue
        idx = i1 + (_stack_position(y, polys, 1, (x,), roots),)
        c = by_index.get(idx)
        if c is None:
            continue
        rep.checked += 1
        pt = (x, y)
        nums = (int(x * q), int(y * q))
        for p in _tracked(c):
            s = gs(p, nums)
            if s != c.sign(p):
                rep.violations.append(f"{p} has sign {s} at {pt} but {c.sign(p)} on cell {list(idx)}")
        for k, phi in enumerate(sub.formulas):
            key = f"phi{k + 1}"
            if key in c.truth:
                if evaluate(phi.tree, lambda p: gs(p, nums)) != c.truth[key]:
                    rep.violations.append(f"{key} changes truth on cell {list(idx)} at {pt}")
    return rep


def check_variety_membership(sub: SubCAD) -> Report:
    """Every cell of a variety-kind output lies on the constraint variety."""
    rep = Report("variety membership")
    if not sub.ec:
        return rep
    for c in sub.cells:
        rep.checked += 1
        if sub.superset and c.flags.get("nullified_stack"):
            continue
        if not any(c.sign(e) == 0 for e in sub.ec):
            rep.violations.append(f"cell {list(c.index)} is off the variety")
    return rep


def check_index_subset(sub: SubCAD, parent: SubCAD) -> Report:
    """Index consistency: every cell index of ``sub`` occurs in ``parent``."""
    rep = Report("index consistency")
    have = set(parent.indices())
    for c in sub.cells:
        rep.checked += 1
        if c.index not in have:
            rep.violations.append(f"cell {list(c.index)} not in the parent CAD")
    return rep


def check_dimensions(sub: SubCAD) -> Report:
    """Layer bounds for layered outputs and section-only last coordinates for variety outputs."""
    rep = Report("dimension layers")
    n = sub.n
    for c in sub.cells:
        rep.checked += 1
        if sub.layers is not None and sub.kind in ("layered", "l_tticad") and c.dimension <= n - sub.layers:
            rep.violations.append(f"cell {list(c.index)} of dimension {c.dimension} below the layers")
        if sub.kind in ("variety", "layered_variety", "v_tticad", "lv_tticad"):
            if not c.is_section and not c.flags.get("nullified_stack"):
                rep.violations.append(f"cell {list(c.index)} is a sector")
            if sub.layers is not None and sub.kind in ("layered_variety", "lv_tticad"):
                if c.dimension < n - sub.layers and not c.flags.get("nullified_stack"):
                    rep.violations.append(f"cell {list(c.index)} of dimension {c.dimension} below the layers")
    return rep


def check_cylindrical(sub: SubCAD) -> Report:
    """Cells over one base come in stack order, indices strictly sorted."""
    rep = Report("index order")
    prev = None
    for c in sub.cells:
        rep.checked += 1
        if prev is not None and not prev < c.index:
            rep.violations.append(f"{list(prev)} not before {list(c.index)}")
        if any(i < 1 for i in c.index):
            rep.violations.append(f"bad index {list(c.index)}")
        prev = c.index
    return rep


def parent_cad(run: ProjectionRun) -> SubCAD:
    """The complete CAD a sub-CAD built from ``run`` is a subset of."""
    n = run.n
    if run.operator in ("mccallum_ec", "tticad"):
        base = lift_levels(run, [root_cell()], 1, n - 1)
        cells, sup = _ec_lift(run, base, "include-stack", sections_only=False)
    else:
        cells, sup = lift_full(run, "include-stack", point_nullification=True), False
    return SubCAD(sorted(cells, key=lambda c: c.index), "complete", "sign", run, superset=sup)


def run_invariant_suite(sub: SubCAD, parent: Optional[SubCAD] = None, grid: bool = True) -> List[Report]:
    """All applicable checks.  ``parent`` defaults to a complete CAD built from ``sub``'s projection run."""
    reps = [check_cylindrical(sub), check_dimensions(sub)]
    if sub.kind in ("variety", "layered_variety", "v_tticad", "lv_tticad"):
        reps.append(check_variety_membership(sub))
    if parent is None and sub.kind != "complete":
        parent = parent_cad(sub.run)
    if parent is not None:
        reps.append(check_index_subset(sub, parent))
    if grid and sub.n == 2:
        reps.append(grid_check(sub))
    return reps
