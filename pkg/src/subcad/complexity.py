"""Complexity bounds for CAD and sub-CAD construction.

Each bound is stored symbolically as a sum of monomials
``coef * prod(base ** exponent)`` with rational bases.  That gives the
exact integer value (the ceiling of the rational sum) on demand and a
cheap natural logarithm for the double-log comparison, whose exact
values can have millions of digits.

Notation: ``m``, ``d``, ``l`` of a plain CAD are taken to be ``m_A``,
``d_A``, ``l_A``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "BOUND_KINDS",
    "FIGURE7_CURVES",
    "ComplexityParams",
    "Bound",
    "bound",
    "bound_value",
    "bound_log",
    "pEA_degree_forms",
    "separation_delta",
    "refinement_bits",
    "figure7_table",
    "figure7_csv",
    "PAPER_FIGURE7_PARAMS",
]

BOUND_KINDS = (
    "root_sep_lower",
    "heindel",
    "isolate_all",
    "refine_all",
    "uk_ck",
    "collins_full",
    "mccallum_1layer",
    "pEA_size",
    "pEA_degree",
    "pEA_norm",
    "n1_collins",
    "n1_mccallum",
    "final_lift",
    "total_variety_collins",
    "total_lv_mccallum",
)

# top to bottom in the double-log plot
FIGURE7_CURVES = ("collins_full", "total_variety_collins", "mccallum_1layer", "total_lv_mccallum")

# rational upper bound for sqrt(e) = 1.6487212...
_SQRT_E_UP = Fraction(16488, 10000)
_SQRT_DEN = 10**6


@dataclass(frozen=True)
class ComplexityParams:
    """Sizes of the input set ``A`` and its equational-constraint part ``E``.

    ``d_AminusE`` defaults to ``d_A`` when not given.
    """

    n: int
    m_A: int
    m_E: int
    m_AminusE: int
    d_A: int
    d_E: int
    l_A: int
    l_E: int
    d_AminusE: Optional[int] = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                # m_AminusE may be 0 when every polynomial is a constraint
                if not (f.name == "m_AminusE" and v == 0):
                    raise ValueError(f"{f.name} must be a positive integer, got {v!r}")
        if self.m_E > self.m_A:
            raise ValueError("m_E must not exceed m_A")
        if self.m_AminusE != self.m_A - self.m_E:
            raise ValueError("m_AminusE must equal m_A - m_E")
        if self.d_E > self.d_A:
            raise ValueError("d_E must not exceed d_A")
        if self.d_AminusE is not None and self.d_AminusE > self.d_A:
            raise ValueError("d_AminusE must not exceed d_A")

    def replace(self, **kw) -> "ComplexityParams":
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d.update(kw)
        if ("m_A" in kw or "m_E" in kw) and "m_AminusE" not in kw:
            d["m_AminusE"] = d["m_A"] - d["m_E"]
        return ComplexityParams(**d)

    @classmethod
    def parse(cls, text: str) -> "ComplexityParams":
        """Parse ``"n=3,m_A=3,m_E=1,d_A=3,d_E=2,l_A=2,l_E=2"``; ``m_AminusE`` is derived if absent."""
        kw: Dict[str, int] = {}
        for part in text.replace(";", ",").split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise ValueError(f"expected key=value, got {part!r}")
            kw[key.strip()] = int(val)
        kw.setdefault("n", 2)
        if "m_A" in kw and "m_E" in kw:
            kw.setdefault("m_AminusE", kw["m_A"] - kw["m_E"])
        try:
            return cls(**kw)
        except TypeError as e:
            raise ValueError(str(e)) from None


PAPER_FIGURE7_PARAMS = ComplexityParams(n=2, m_A=3, m_E=1, m_AminusE=2, d_A=3, d_E=2, l_A=2, l_E=2)


Monomial = Tuple[Fraction, Tuple[Tuple[Fraction, int], ...]]


class Bound:
    """A sum of monomials ``coef * prod(b ** e)`` with positive rational data."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial]):
        self.terms: List[Monomial] = [
            (Fraction(c), tuple((Fraction(b), int(e)) for b, e in fs)) for c, fs in terms
        ]

    @classmethod
    def mono(cls, coef=1, *factors) -> "Bound":
        return cls([(coef, factors)])

    def __add__(self, other: "Bound") -> "Bound":
        return Bound(self.terms + other.terms)

    def exact(self) -> Fraction:
        total = Fraction(0)
        for c, fs in self.terms:
            t = c
            for b, e in fs:
                t *= b**e
            total += t
        return total

    def value(self) -> int:
        return math.ceil(self.exact())

    def log(self) -> float:
        """Natural logarithm of the (unrounded) sum."""
        logs = []
        for c, fs in self.terms:
            s = math.log(c)
            for b, e in fs:
                s += e * (math.log(b.numerator) - math.log(b.denominator))
            logs.append(s)
        top = max(logs)
        return top + math.log(sum(math.exp(x - top) for x in logs))


def _half_size(p: ComplexityParams) -> Fraction:
    # m_E (2 d_E + 2 m_A - 1) / 2
    return Fraction(p.m_E * (2 * p.d_E + 2 * p.m_A - 1), 2)


def _final_lift(p: ComplexityParams) -> Bound:
    n, dE, mE, lE = p.n, p.d_E, p.m_E, p.l_E
    u = ((2 * dE, 3 ** (n + 1)), (mE, 2**n))
    seventh = tuple((b, 7 * e) for b, e in u)
    return Bound([(1, u + ((dE, 8),)), (1, seventh + ((dE, 7), (lE, 3)))])


def bound(kind: str, p: ComplexityParams) -> Bound:
    """Symbolic form of the bound ``kind``."""
    n, m, d, l = p.n, p.m_A, p.d_A, p.l_A
    M = Bound.mono
    if kind == "root_sep_lower":
        raise ValueError("root_sep_lower is not a polynomial bound; use bound_value")
    if kind == "heindel":
        return M(1, (d, 8)) + M(1, (d, 7), (l, 3))
    if kind == "isolate_all":
        return M(m, (d, 8)) + M(m, (d, 7), (l, 3))
    if kind == "refine_all":
        return M(m, (d, 8)) + M(1, (m, 7), (d, 7), (l, 3))
    if kind == "uk_ck":
        return M(1, (2 * d, 3 ** (n + 1)), (m, 2**n))
    if kind == "collins_full":
        return M(1, (2 * d, 4 ** (n + 4)), (m, 2 ** (n + 6)), (l, 3))
    if kind == "mccallum_1layer":
        return M(1, (2 * d, 3 ** (n + 4)), (m, 2 ** (n + 4)), (l, 3))
    if kind == "pEA_size":
        return M(Fraction(p.m_E, 2) * (2 * p.d_E + p.m_AminusE + p.m_A - 1))
    if kind == "pEA_degree":
        return M(1, (d, 2))
    if kind == "pEA_norm":
        return M(16, (d, 4), (l, 1))
    s = _half_size(p)
    tail = ((l, 3), (d, 12))
    if kind == "n1_collins":
        return M(16**3, (4 * d * d, 2 ** (2 * n + 6)), (s, 2 ** (n + 5)), *tail)
    if kind == "n1_mccallum":
        return M(16**3, (4 * d * d, 3 ** (n + 3)), (s, 2 ** (n + 3)), *tail)
    if kind == "final_lift":
        return _final_lift(p)
    if kind == "total_variety_collins":
        return M(2**12, (4 * d * d, 4 ** (n + 3)), (s, 2 ** (n + 5)), *tail) + _final_lift(p)
    if kind == "total_lv_mccallum":
        return M(2**12, (4 * d * d, 3 ** (n + 3)), (s, 2 ** (n + 3)), *tail) + _final_lift(p)
    raise ValueError(f"unknown bound kind {kind!r}; expected one of {', '.join(BOUND_KINDS)}")


def _root_sep(d: int, l: int) -> Fraction:
    # 1/2 (sqrt(e) d^(3/2) l)^(-d), with sqrt(e) and sqrt(d) rounded up
    sqrt_d = Fraction(math.isqrt(d * _SQRT_DEN**2) + 1, _SQRT_DEN)
    base = _SQRT_E_UP * d * sqrt_d * l
    return Fraction(1, 2) / base**d


def bound_value(kind: str, p: ComplexityParams):
    """Exact value of a bound.

    Integers throughout, except ``root_sep_lower`` which is a rational
    lower bound on the root separation of a polynomial of degree ``d_A``
    and norm length ``l_A``.
    """
    if kind == "root_sep_lower":
        return _root_sep(p.d_A, p.l_A)
    return bound(kind, p).value()


def bound_log(kind: str, p: ComplexityParams) -> float:
    """Natural log of a bound, without forming the exact integer."""
    if kind == "root_sep_lower":
        v = _root_sep(p.d_A, p.l_A)
        return math.log(v.numerator) - math.log(v.denominator)
    return bound(kind, p).log()


def pEA_degree_forms(p: ComplexityParams) -> Dict[str, int]:
    """Both ends of the degree chain for ``P_E(A)``.

    ``max_form`` is ``max(2 d_E^2, 2 d_{A-E}^2)``, ``final_form`` the
    stated ``d_A^2``.  The first can exceed the second.
    """
    dAE = p.d_AminusE if p.d_AminusE is not None else p.d_A
    return {"max_form": max(2 * p.d_E**2, 2 * dAE**2), "final_form": p.d_A**2}


def separation_delta(p: ComplexityParams) -> Fraction:
    """Rational lower bound on the separation of all roots of ``A`` (product argument)."""
    md = p.m_A * p.d_A
    sqrt_md = Fraction(math.isqrt(md * _SQRT_DEN**2) + 1, _SQRT_DEN)
    base = _SQRT_E_UP * md * sqrt_md * Fraction(p.l_A) ** p.m_A
    return Fraction(1, 2) / base**md


def refinement_bits(p: ComplexityParams) -> int:
    """The precision ``h`` with ``2^-h <= delta``."""
    delta = separation_delta(p)
    h = delta.denominator.bit_length() - delta.numerator.bit_length()
    while Fraction(1, 2**h) > delta:
        h += 1
    return h


def figure7_table(
    p: ComplexityParams = PAPER_FIGURE7_PARAMS,
    n_range: Iterable[int] = range(2, 9),
    curves: Sequence[str] = FIGURE7_CURVES,
) -> Tuple[List[dict], List[str]]:
    """Rows ``{"n": n, curve: log(log(bound))}`` and a list of notes.

    A row is dropped (with a note) when some bound is below ``e``, since
    its double log is then undefined or negative.
    """
    rows, notes = [], []
    for n in n_range:
        q = p.replace(n=n)
        row = {"n": n}
        ok = True
        for kind in curves:
            lg = bound_log(kind, q)
            if lg <= 1.0:
                ok = False
                notes.append(f"n={n}: {kind} below e, row omitted")
                break
            row[kind] = math.log(lg)
        if ok:
            rows.append(row)
    return rows, notes


def figure7_csv(rows: Sequence[dict], curves: Sequence[str] = FIGURE7_CURVES) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", *curves])
    for r in rows:
        w.writerow([r["n"], *(f"{r[c]:.6f}" for c in curves)])
    return buf.getvalue()
