"""Cells, stacks and lifting.

A cell of ``R^k`` carries its index (odd entries are sectors, even entries
sections), a sample point, and a link to the cell of ``R^(k-1)`` it was
lifted from.  Signs of projection polynomials are computed lazily: a
polynomial tagged as vanishing on a section is zero there, any other
polynomial of the lifting set is known to be nonzero and only needs
interval arithmetic.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .polynomial import Polynomial
from .projection import ProjectionRun
from .roots import (
    AlgebraicNumber,
    Coordinate,
    _exact,
    merge_roots,
    normalize,
    real_roots_over,
    sign_at_point,
    sign_nonzero,
    simplest_between,
    to_float,
)

__all__ = [
    "Cell",
    "Stack",
    "NotWellOriented",
    "NULLIFICATION_MODES",
    "root_cell",
    "generate_stack",
    "base_phase",
    "lift_full",
    "lift_levels",
    "check_nullified",
    "coordinate_to_json",
    "coordinate_from_json",
    "cell_from_dict",
]

NULLIFICATION_MODES = ("fail", "include-stack")


class NotWellOriented(ArithmeticError):
    """A projection polynomial vanishes identically on a positive-dimensional cell."""

    def __init__(self, poly: Polynomial, cell: "Cell"):
        self.poly = poly
        self.cell = cell
        super().__init__(
            f"FAIL: input is not well oriented: {poly} is nullified on cell "
            f"{list(cell.index)} of dimension {cell.dimension}"
        )


class Cell:
    """A cell of ``R^k``.

    ``lift_set`` is the list of polynomials the cell's stack was built
    from, ``zeros`` those vanishing on it (sections) and ``nullified``
    those vanishing on the whole stack.
    """

    __slots__ = ("index", "sample", "base", "lift_set", "zeros", "nullified", "_signs", "truth", "flags")

    def __init__(self, index, sample, base=None, lift_set=(), zeros=(), nullified=()):
        self.index = tuple(index)
        self.sample = tuple(sample)
        self.base = base
        self.lift_set = lift_set
        self.zeros = frozenset(zeros)
        self.nullified = frozenset(nullified)
        self._signs: Dict[Polynomial, int] = {}
        self.truth: Dict[str, bool] = {}
        self.flags: Dict[str, object] = {}

    @property
    def level(self) -> int:
        return len(self.index)

    @property
    def dimension(self) -> int:
        return sum(i % 2 for i in self.index)

    @property
    def is_section(self) -> bool:
        return bool(self.index) and self.index[-1] % 2 == 0

    def ancestor(self, level: int) -> "Cell":
        c = self
        while c is not None and c.level > level:
            c = c.base
        return c

    def sign(self, p: Polynomial) -> int:
        """Exact sign of ``p`` on this cell (constant on the cell for projection polynomials)."""
        s = self._signs.get(p)
        if s is not None:
            return s
        lvl = p.level
        if lvl == 0:
            v = p.constant_value()
            return (v > 0) - (v < 0)
        if lvl > self.level:
            raise ValueError(f"{p} involves variables above the cell's level")
        anc = self.ancestor(lvl)
        if anc is None:
            # deserialized cell without its base chain
            s = sign_at_point(p, self.sample[:lvl])
        elif anc is not self:
            s = anc.sign(p)
        elif p in self.zeros or p in self.nullified:
            s = 0
        elif p in self.lift_set:
            s = sign_nonzero(p, self.sample)
        else:
            s = sign_at_point(p, self.sample)
        self._signs[p] = s
        return s

    def to_dict(self, polys: Sequence[Polynomial] = (), names: Optional[Dict[Polynomial, str]] = None) -> dict:
        d = {
            "index": list(self.index),
            "dim": self.dimension,
            "sample": [coordinate_to_json(x) for x in self.sample],
        }
        if polys:
            d["signs"] = {(names or {}).get(p, str(p)): self.sign(p) for p in polys}
        if self.truth:
            d["truth"] = dict(self.truth)
        if self.flags:
            d["flags"] = {k: v for k, v in self.flags.items()}
        return d

    def __repr__(self) -> str:
        return f"Cell({list(self.index)}, dim={self.dimension})"


def cell_from_dict(d: dict, order) -> Cell:
    """Rebuild a cell from :meth:`Cell.to_dict` output (without its base chain)."""
    sample: List[Coordinate] = []
    for x in d["sample"]:
        sample.append(coordinate_from_json(x, order, sample))
    return Cell(d["index"], sample)


def coordinate_from_json(x, order, base: Sequence = ()) -> Coordinate:
    if isinstance(x, dict):
        return AlgebraicNumber.from_dict(x, order, base)
    return Fraction(x)


def coordinate_to_json(x: Coordinate):
    x = normalize(x)
    if isinstance(x, AlgebraicNumber):
        return x.to_dict()
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def root_cell() -> Cell:
    """The single cell of ``R^0``."""
    return Cell((), ())


class Stack:
    """The cells over one base cell, bottom to top."""

    __slots__ = ("base", "cells", "nullified")

    def __init__(self, base: Cell, cells: List[Cell], nullified=()):
        self.base = base
        self.cells = cells
        self.nullified = list(nullified)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, i):
        return self.cells[i]

    @property
    def sections(self) -> List[Cell]:
        return self.cells[1::2]

    @property
    def sectors(self) -> List[Cell]:
        return self.cells[0::2]


def check_nullified(p: Polynomial, c: Cell) -> bool:
    """True iff ``p`` vanishes identically over the sample of ``c``."""
    return real_roots_over(p, c.level, c.sample) is None


def _lower_end(r: Coordinate) -> Fraction:
    e = _exact(r)
    return e if e is not None else r.lo


def _upper_end(r: Coordinate) -> Fraction:
    e = _exact(r)
    return e if e is not None else r.hi


def _gap_sample(a: Coordinate, b: Coordinate) -> Fraction:
    """A simple rational strictly between two consecutive distinct roots."""
    while True:
        ea, eb = _exact(a), _exact(b)
        lo = ea if ea is not None else a.hi
        hi = eb if eb is not None else b.lo
        if lo < hi or (lo == hi and ea is None and eb is None):
            return simplest_between(lo, hi, open_lo=ea is not None, open_hi=eb is not None)
        # an exact root sits on the other's interval end; narrow the other
        if ea is None:
            a.tighten((a.hi - a.lo) / 4)
        if eb is None:
            b.tighten((b.hi - b.lo) / 4)


def generate_stack(
    P: Sequence[Polynomial],
    c: Cell,
    nullification: str = "fail",
    allow_point_nullification: bool = False,
) -> Stack:
    """Stack over ``c`` sign-invariant for the polynomials ``P`` (main variable one above ``c``).

    A polynomial vanishing identically over ``c`` raises
    :class:`NotWellOriented` when ``c`` has positive dimension, unless
    ``nullification`` is ``"include-stack"``.  On a point cell it is
    dropped if ``allow_point_nullification`` is set.  Dropped polynomials
    are zero on the whole stack.
    """
    k = c.level
    lift_set = tuple(P)
    entries = []
    nulls = []
    for idx, p in enumerate(lift_set):
        rs = real_roots_over(p, k, c.sample)
        if rs is None:
            if c.dimension > 0 and nullification == "fail":
                raise NotWellOriented(p, c)
            if c.dimension == 0 and not allow_point_nullification and nullification == "fail":
                raise NotWellOriented(p, c)
            nulls.append(p)
            continue
        for r in rs:
            entries.append((r, [idx]))
    merged = merge_roots(entries, c.sample)
    cells: List[Cell] = []
    base_sample = c.sample
    roots = [r for r, _ in merged]
    pos = 1
    if not roots:
        cells.append(Cell(c.index + (1,), base_sample + (Fraction(0),), c, lift_set, (), nulls))
        return Stack(c, cells, nulls)
    first = roots[0]
    below = Fraction(math.floor(_lower_end(first)) - 1)
    cells.append(Cell(c.index + (pos,), base_sample + (below,), c, lift_set, (), nulls))
    for j, (r, tags) in enumerate(merged):
        pos += 1
        zeros = [lift_set[t] for t in tags]
        cells.append(Cell(c.index + (pos,), base_sample + (r,), c, lift_set, zeros, nulls))
        pos += 1
        if j + 1 < len(merged):
            s = _gap_sample(r, merged[j + 1][0])
        else:
            s = Fraction(math.ceil(_upper_end(r)) + 1)
        cells.append(Cell(c.index + (pos,), base_sample + (s,), c, lift_set, (), nulls))
    return Stack(c, cells, nulls)


def base_phase(P1: Sequence[Polynomial]) -> List[Cell]:
    """CAD of ``R^1`` for univariate polynomials in ``x_1``."""
    return generate_stack(P1, root_cell()).cells


def jobs_from_env(jobs: Optional[int] = None) -> int:
    if jobs is not None:
        return max(1, int(jobs))
    try:
        return max(1, int(os.environ.get("SUBCAD_JOBS", "1")))
    except ValueError:
        return 1


def lift_levels(
    run: ProjectionRun,
    start: Sequence[Cell],
    first_level: int,
    last_level: int,
    lift_set: Optional[Callable[[int, Cell], Sequence[Polynomial]]] = None,
    keep_base: Optional[Callable[[int, Cell], bool]] = None,
    keep_cell: Optional[Callable[[int, Cell], bool]] = None,
    nullification: str = "fail",
    point_nullification_levels: Iterable[int] = (),
    on_stack: Optional[Callable[[int, Stack], None]] = None,
) -> List[Cell]:
    """Lift ``start`` cells (of ``R^(first_level-1)``) up to ``R^last_level``.

    At level ``i`` a base cell is lifted only if ``keep_base(i, cell)``;
    each produced cell is retained only if ``keep_cell(i, cell)``.
    ``lift_set(i, cell)`` chooses the polynomials (default: tier ``i``).
    """
    cells = list(start)
    pn = set(point_nullification_levels)
    for i in range(first_level, last_level + 1):
        nxt: List[Cell] = []
        for c in cells:
            if keep_base is not None and not keep_base(i, c):
                continue
            P = lift_set(i, c) if lift_set is not None else run.tier(i)
            st = generate_stack(P, c, nullification, allow_point_nullification=i in pn)
            if on_stack is not None:
                on_stack(i, st)
            for d in st.cells:
                if keep_cell is None or keep_cell(i, d):
                    nxt.append(d)
        cells = nxt
    return cells


def lift_full(run: ProjectionRun, nullification: str = "fail", point_nullification: bool = False) -> List[Cell]:
    """Complete CAD of ``R^n`` from a projection run, cells in index order."""
    n = run.n
    levels = range(1, n + 1) if point_nullification else (n,)
    return lift_levels(run, [root_cell()], 1, n, nullification=nullification, point_nullification_levels=levels)


def cell_float_sample(c: Cell) -> List[float]:
    return [to_float(x) for x in c.sample]
