"""Projection operators and the projection phase.

Three operators are implemented:

``mccallum``
    coefficients, discriminants and pairwise resultants of a squarefree
    basis;
``mccallum_ec``
    the equational-constraint operator ``P_E(A) = P(E) + {res(f, g) : f in
    E, g in A - E}``, applied once at the top level with ``mccallum`` below;
``tticad``
    the union of ``P_{E_i}(A_i)`` over a list of formulae, plus the
    resultants between constraints of different formulae.

Every stage is normalised to a finest squarefree basis: primitive integer
polynomials with positive leading coefficient, constants dropped, common
factors split off by gcds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .polynomial import Polynomial, VarOrder, discriminant, resultant, squarefree_basis
from .polynomial import _add_to_basis, squarefree_factors

__all__ = [
    "OPERATORS",
    "COEFFICIENT_RULES",
    "ProjectionError",
    "ProjectionTier",
    "ProjectionRun",
    "proj_mccallum",
    "proj_ec",
    "proj_tticad",
    "projection_phase",
]

OPERATORS = ("collins_hong", "mccallum", "mccallum_ec", "tticad")
COEFFICIENT_RULES = ("until_constant", "all", "leading")


class ProjectionError(ValueError):
    pass


def _coefficients(f: Polynomial, k: int, rule: str) -> List[Polynomial]:
    out = []
    for c in f.coefficients(k):
        if c.is_zero():
            continue
        if c.is_constant():
            if rule == "until_constant":
                break
            continue
        out.append(c)
        if rule == "leading":
            break
    return out


def _normalise(polys: Iterable[Polynomial]) -> List[Polynomial]:
    return squarefree_basis(p for p in polys if not p.is_constant())


def _raw_mccallum(A: Sequence[Polynomial], k: int, rule: str) -> List[Polynomial]:
    out: List[Polynomial] = []
    for f in A:
        out.extend(_coefficients(f, k, rule))
        if f.degree(k) >= 2:
            out.append(discriminant(f, k))
    for f, g in combinations(A, 2):
        out.append(resultant(f, g, k))
    return out


def _check_level(A: Sequence[Polynomial], k: int, what: str):
    for f in A:
        if f.mvar != k:
            raise ProjectionError(f"{what} element {f} does not have main variable {f.order.names[k]}")


def proj_mccallum(A: Sequence[Polynomial], v, rule: str = "all") -> List[Polynomial]:
    """McCallum's operator on a squarefree basis with main variable ``v``.

    >>> o = VarOrder.of("x, y")
    >>> sorted(str(p) for p in proj_mccallum([Polynomial.parse("x^2+y^2-1", o)], "y"))
    ['x + 1', 'x - 1']
    """
    if not A:
        return []
    k = A[0].order.index(v)
    _check_level(A, k, "basis")
    return _normalise(_raw_mccallum(A, k, rule))


def proj_ec(A: Sequence[Polynomial], E: Sequence[Polynomial], v, rule: str = "all") -> List[Polynomial]:
    """The equational-constraint operator ``P_E(A)``."""
    if not E:
        raise ProjectionError("equational constraint set is empty; use proj_mccallum")
    k = E[0].order.index(v)
    _check_level(E, k, "constraint")
    out = _raw_mccallum(E, k, rule)
    for f in E:
        for g in A:
            if g in E:
                continue
            if g.degree(k) <= 0:
                out.append(g ** f.degree(k))
            else:
                out.append(resultant(f, g, k))
    return _normalise(out)


def proj_tticad(phis: Sequence[Tuple[Sequence[Polynomial], Sequence[Polynomial]]], v, rule: str = "all") -> List[Polynomial]:
    """Truth-table invariance operator for formulae that all carry constraints."""
    if not phis:
        return []
    out: List[Polynomial] = []
    for i, (A, E) in enumerate(phis):
        if not E:
            raise ProjectionError(f"formula {i + 1} has no equational constraint")
    k = phis[0][1][0].order.index(v)
    for A, E in phis:
        out.extend(proj_ec(A, E, v, rule))
    for (_, Ei), (_, Ej) in combinations(phis, 2):
        for f in Ei:
            for g in Ej:
                if f != g:
                    out.append(resultant(f, g, k))
    return _normalise(out)


@dataclass
class ProjectionTier:
    level: int
    polys: List[Polynomial]


@dataclass
class ProjectionRun:
    """Projection polynomials split into tiers by main variable.

    ``tiers[i]`` (1-based) holds the polynomials with main variable ``x_i``.
    ``ec`` lists the constraint factors inside tier ``ec_level``; ``groups``
    holds the per-formula ``(A_i, E_i)`` split of the top tier for the
    truth-table operator.
    """

    order: VarOrder
    operator: str
    tiers: Dict[int, List[Polynomial]]
    ec: List[Polynomial] = field(default_factory=list)
    ec_level: Optional[int] = None
    groups: List[Tuple[List[Polynomial], List[Polynomial]]] = field(default_factory=list)
    rule: str = "all"
    notes: List[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.order)

    def tier(self, i: int) -> List[Polynomial]:
        return self.tiers.get(i, [])

    def tier_list(self) -> List[ProjectionTier]:
        return [ProjectionTier(i, list(self.tier(i))) for i in range(1, self.n + 1)]

    def sizes(self) -> Dict[int, int]:
        return {i: len(self.tier(i)) for i in range(1, self.n + 1)}

    def all_polys(self) -> List[Polynomial]:
        return [p for i in range(1, self.n + 1) for p in self.tier(i)]

    def to_dict(self) -> dict:
        return {
            "operator": self.operator,
            "order": list(self.order.names),
            "coefficient_rule": self.rule,
            "tiers": {str(i): [str(p) for p in self.tier(i)] for i in range(1, self.n + 1)},
            "ec": [str(p) for p in self.ec],
            "ec_level": self.ec_level,
            "notes": list(self.notes),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def diff(self, other: "ProjectionRun") -> Dict[int, Dict[str, List[str]]]:
        """Per-tier polynomials present in only one of two runs."""
        out = {}
        for i in range(1, self.n + 1):
            a = {str(p) for p in self.tier(i)}
            b = {str(p) for p in other.tier(i)}
            if a != b:
                out[i] = {"only_self": sorted(a - b), "only_other": sorted(b - a)}
        return out


def _divides_any(b: Polynomial, polys: Sequence[Polynomial]) -> bool:
    for p in polys:
        if p.mvar == b.mvar and b.divides(p):
            return True
    return False


def projection_phase(
    polys: Sequence[Polynomial],
    order: Optional[VarOrder] = None,
    operator: str = "mccallum",
    ec: Optional[Polynomial] = None,
    groups: Optional[Sequence[Tuple[Sequence[Polynomial], Optional[Polynomial]]]] = None,
    rule: str = "all",
    leading_coefficient_only: bool = False,
) -> ProjectionRun:
    """Full projection phase from ``x_n`` down to ``x_1``.

    ``polys`` are the input polynomials.  For ``mccallum_ec`` the
    constraint ``ec`` is required and all its factors must have main
    variable ``x_n``; the constraint operator is applied once at the top.
    For ``tticad`` pass ``groups`` as ``(polynomials, constraint)`` pairs.
    ``leading_coefficient_only`` keeps only leading coefficients, which is
    valid for 1-layered output only; callers must enforce that.
    """
    if operator not in OPERATORS:
        raise ProjectionError(f"unknown operator {operator!r}; expected one of {OPERATORS}")
    if operator == "collins_hong":
        raise NotImplementedError("the Collins-Hong operator is not available; use mccallum")
    if rule not in COEFFICIENT_RULES:
        raise ProjectionError(f"unknown coefficient rule {rule!r}")
    if leading_coefficient_only:
        rule = "leading"
    if order is None:
        src = list(polys) or [p for g in groups or [] for p in g[0]]
        if not src:
            raise ProjectionError("no polynomials and no variable order")
        order = src[0].order
    n = len(order)
    if operator == "tticad":
        if not groups:
            raise ProjectionError("tticad needs formula groups")
        polys = [p for g in groups for p in g[0]] + [g[1] for g in groups if g[1] is not None]
    if operator == "mccallum_ec" and ec is None:
        raise ProjectionError("mccallum_ec needs an equational constraint")
    inputs = list(polys)
    if ec is not None:
        inputs.append(ec)
    basis = _normalise(inputs)
    run = ProjectionRun(order, operator, {}, rule=rule)

    top = [b for b in basis if b.level == n]
    lower = [b for b in basis if b.level < n]

    if ec is not None:
        efac = [f for f in squarefree_factors(ec)]
        levels = {f.level for f in efac}
        if not efac:
            raise ProjectionError("equational constraint is constant")
        if len(levels) != 1:
            raise ProjectionError("all factors of the equational constraint must share one main variable")
        run.ec_level = levels.pop()
        if operator in ("mccallum_ec", "tticad") and run.ec_level != n:
            raise ProjectionError(
                f"constraint factors have main variable {order.names[run.ec_level - 1]}, not {order.names[n - 1]}"
            )
        tier_ec = [b for b in basis if b.level == run.ec_level]
        run.ec = [b for b in tier_ec if _divides_any(b, [ec])]

    if operator == "tticad":
        for A_i, e_i in groups:
            if e_i is None:
                raise ProjectionError("every formula needs an equational constraint for tticad")
            if any(f.level != n for f in squarefree_factors(e_i)):
                raise ProjectionError("tticad constraints must have main variable x_n")
            Ai = [b for b in top if _divides_any(b, list(A_i) + [e_i])]
            Ei = [b for b in top if _divides_any(b, [e_i])]
            run.groups.append((Ai, Ei))
        run.ec = []
        for _, Ei in run.groups:
            for f in Ei:
                if f not in run.ec:
                    run.ec.append(f)
        run.ec_level = n

    for k in range(n, 0, -1):
        tier = top if k == n else [b for b in lower if b.level == k]
        if k < n:
            lower = [b for b in lower if b.level < k]
        run.tiers[k] = _sorted(tier)
        if k == 1 or not tier:
            continue
        kv = k - 1
        if k == n and operator == "mccallum_ec":
            new = proj_ec(tier, run.ec, kv, rule)
        elif k == n and operator == "tticad":
            new = proj_tticad(run.groups, kv, rule)
        else:
            new = proj_mccallum(tier, kv, rule)
        for p in new:
            _add_to_basis(lower, p)
    return run


def _sorted(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Deterministic order: by degree in the main variable, then text."""
    return sorted(polys, key=lambda p: (p.degree(p.mvar), p.total_degree(), len(p.terms), str(p)))
