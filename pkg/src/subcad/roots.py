"""Real algebraic numbers, root isolation and exact sign determination.

Sample points are towers: coordinate ``k`` is either a rational or an
:class:`AlgebraicNumber` whose defining polynomial may involve the lower
coordinates.  No primitive elements are ever built.  Instead:

* nonzero signs come from interval arithmetic on scaled integers with
  adaptive refinement of the coordinates involved;
* zero signs come from a gcd over the tower: ``q(a) = 0`` iff
  ``gcd(q(a', y), p(a', y))`` has a root in the isolating interval of the
  top coordinate, which for a squarefree divisor is a sign change;
* roots of polynomials with algebraic coefficients are isolated with a
  Sturm chain computed over the tower, tracking the signs of the scaling
  factors introduced by pseudo-division.

Polynomials that become purely rational after substitution take the dense
Descartes path in :mod:`subcad._upoly`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import _upoly
from .polynomial import Polynomial, PolynomialError, VarOrder, primitive_part

__all__ = [
    "Interval",
    "AlgebraicNumber",
    "Coordinate",
    "isolate_roots",
    "isolate_roots_of_set",
    "refine",
    "sign_at",
    "sign_at_point",
    "sign_nonzero",
    "is_zero_at",
    "real_roots_over",
    "compare_roots",
    "simplest_between",
    "to_float",
]


class Interval(tuple):
    """Closed rational interval ``[lo, hi]``; ``lo == hi`` is an exact point."""

    def __new__(cls, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        return super().__new__(cls, (lo, hi))

    lo = property(lambda self: self[0])
    hi = property(lambda self: self[1])

    @property
    def width(self) -> Fraction:
        return self[1] - self[0]


class AlgebraicNumber:
    """A real root of ``poly`` in the variable ``var``, isolated by ``(lo, hi)``.

    ``poly`` is squarefree over the base point ``base`` (the lower sample
    coordinates, possibly empty), its leading coefficient does not vanish
    there, and it has exactly one root in the open interval, whose
    endpoints are not roots.  Refinement narrows the interval in place; the
    represented number never changes.  Once a bisection point hits the
    root exactly, ``lo == hi`` and the number behaves as a rational.
    """

    __slots__ = ("poly", "var", "lo", "hi", "base", "_dense", "_slo")

    def __init__(self, poly: Polynomial, var: int, lo: Fraction, hi: Fraction, base: Sequence = ()):
        self.poly = poly
        self.var = var
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.base = tuple(base)
        self._dense = None
        self._slo = None
        if poly.variables() == [var]:
            self._dense = _upoly.from_rational([c.constant_value() for c in reversed(poly.coefficients(var))])

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def defpoly(self) -> Polynomial:
        return self.poly

    def copy(self) -> "AlgebraicNumber":
        a = AlgebraicNumber.__new__(AlgebraicNumber)
        a.poly, a.var, a.lo, a.hi, a.base = self.poly, self.var, self.lo, self.hi, self.base
        a._dense, a._slo = self._dense, self._slo
        return a

    def _sign_poly_at(self, x: Fraction) -> int:
        if self._dense is not None:
            return _upoly.sign_at(self._dense, x)
        return sign_at_point(self.poly.subs(self.var, x), self.base)

    def tighten(self, width: Fraction) -> None:
        """Bisect until ``hi - lo <= width`` (in place)."""
        if self.lo == self.hi or self.hi - self.lo <= width:
            return
        if self._slo is None:
            self._slo = self._sign_poly_at(self.lo)
        if self._dense is not None:
            lo, hi = _upoly.refine(self._dense, self.lo, self.hi, width)
            self.lo, self.hi = lo, hi
            return
        while self.hi - self.lo > width:
            mid = (self.lo + self.hi) / 2
            s = self._sign_poly_at(mid)
            if s == 0:
                self.lo = self.hi = mid
                return
            if s == self._slo:
                self.lo = mid
            else:
                self.hi = mid

    def to_dict(self) -> dict:
        return {
            "defpoly": str(self.poly),
            "var": self.poly.order.names[self.var],
            "lo": _frac_text(self.lo),
            "hi": _frac_text(self.hi),
        }

    @classmethod
    def from_dict(cls, d: dict, order: VarOrder, base: Sequence = ()) -> "AlgebraicNumber":
        """Inverse of :meth:`to_dict`; ``base`` is the lower sample coordinates."""
        poly = Polynomial.parse(d["defpoly"], order)
        var = order.index(d["var"])
        return cls(poly, var, Fraction(d["lo"]), Fraction(d["hi"]), tuple(base)[:var])

    def __float__(self) -> float:
        return to_float(self)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.poly}, ({self.lo}, {self.hi}))"

    def __str__(self) -> str:
        return f"root of {self.poly} in ({self.lo}, {self.hi})"


Coordinate = Union[Fraction, int, AlgebraicNumber]


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_float(x: Coordinate) -> float:
    if isinstance(x, AlgebraicNumber):
        x.tighten(Fraction(1, 1 << 53) * max(1, abs(x.lo)))
        return float((x.lo + x.hi) / 2)
    return float(x)


def _exact(x: Coordinate) -> Optional[Fraction]:
    if isinstance(x, AlgebraicNumber):
        return x.lo if x.lo == x.hi else None
    return Fraction(x)


def normalize(x: Coordinate) -> Coordinate:
    """Collapse an exactly known algebraic number to a rational."""
    e = _exact(x)
    return x if e is None else e


# ---------------------------------------------------------------------------
# substitution and interval evaluation


def _subst_rationals(q: Polynomial, sample: Sequence[Coordinate]) -> Polynomial:
    for i in q.variables():
        if i >= len(sample):
            break
        e = _exact(sample[i])
        if e is not None:
            q = q.subs(i, e)
    return q


def _scaled(x: Fraction, prec: int, up: bool) -> int:
    n = x.numerator << prec
    return -((-n) // x.denominator) if up else n // x.denominator


def _interval_eval(q: Polynomial, sample: Sequence[Coordinate], prec: int) -> Tuple[int, int, int]:
    """Integer interval ``[L, H]`` and scale ``s`` with ``q(point) * 2^s`` in it.

    All variables of ``q`` must be algebraic coordinates.
    """
    vs = q.variables()
    box = {}
    for i in vs:
        a = sample[i]
        box[i] = (_scaled(a.lo, prec, False), _scaled(a.hi, prec, True))
    dmax = q.total_degree()
    den = 1
    for c in q.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    powers: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def power(i, e):
        key = (i, e)
        r = powers.get(key)
        if r is None:
            L, H = box[i]
            a, b = L ** e, H ** e
            if e % 2 == 0:
                if L <= 0 <= H:
                    r = (0, max(a, b))
                else:
                    r = (min(a, b), max(a, b))
            else:
                r = (a, b)
            powers[key] = r
        return r

    lo_sum = hi_sum = 0
    for m, c in q.terms.items():
        c = int(c * den)
        lo, hi = c, c
        d = 0
        for i in vs:
            e = m[i]
            if e:
                d += e
                pl, ph = power(i, e)
                cands = (lo * pl, lo * ph, hi * pl, hi * ph)
                lo, hi = min(cands), max(cands)
        shift = prec * (dmax - d)
        lo_sum += lo << shift
        hi_sum += hi << shift
    return lo_sum, hi_sum, prec * dmax


def _prec_for(q: Polynomial, sample) -> int:
    p = 16
    for i in q.variables():
        a = sample[i]
        w = a.hi - a.lo
        # bits to resolve the width, plus guard bits
        bits = (w.denominator.bit_length() - w.numerator.bit_length()) + 8
        p = max(p, bits)
    return p


def _interval_sign(q: Polynomial, sample) -> Optional[int]:
    lo, hi, _ = _interval_eval(q, sample, _prec_for(q, sample))
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if lo == 0 == hi:
        return 0
    return None


def _refine_vars(q: Polynomial, sample, bits: int) -> None:
    for i in q.variables():
        a = sample[i]
        scale = max(1, abs(a.lo), abs(a.hi))
        a.tighten(Fraction(1, 1 << bits) * scale)


def _resolve_nonzero(q: Polynomial, sample, start_bits: int = 24) -> int:
    bits = start_bits
    while True:
        q2 = _subst_rationals(q, sample)
        if q2.is_constant():
            return _sgn(q2.constant_value())
        s = _interval_sign(q2, sample)
        if s is not None:
            if s == 0:
                raise ArithmeticError("interval collapsed to zero for a nonzero value")
            return s
        _refine_vars(q2, sample, bits)
        bits *= 2


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_nonzero(q: Polynomial, sample: Sequence[Coordinate]) -> int:
    """Sign of ``q`` at ``sample`` when it is known not to vanish there."""
    q = _subst_rationals(q, sample)
    if q.is_constant():
        return _sgn(q.constant_value())
    s = _interval_sign(q, sample)
    if s is not None:
        return s
    return _resolve_nonzero(q, sample)


def sign_at_point(q: Polynomial, sample: Sequence[Coordinate]) -> int:
    """Exact sign of ``q`` at the tower point ``sample``."""
    q = _subst_rationals(q, sample)
    if q.is_constant():
        return _sgn(q.constant_value())
    s = _interval_sign(q, sample)
    if s is not None:
        return s
    for bits in (24, 64):
        _refine_vars(q, sample, bits)
        q = _subst_rationals(q, sample)
        if q.is_constant():
            return _sgn(q.constant_value())
        s = _interval_sign(q, sample)
        if s is not None:
            return s
    if _is_zero(q, sample):
        return 0
    return _resolve_nonzero(q, sample, 128)


def is_zero_at(q: Polynomial, sample: Sequence[Coordinate]) -> bool:
    return sign_at_point(q, sample) == 0


# ---------------------------------------------------------------------------
# tower arithmetic


def _trim(f: Polynomial, k: int, sample) -> Polynomial:
    """Drop leading coefficients in ``x_k`` that vanish at ``sample[:k]``."""
    while not f.is_zero():
        d = f.degree(k)
        lc = f.leading_coefficient(k)
        if sign_at_point(lc, sample) != 0:
            return f
        if d == 0:
            return Polynomial(f.order, {}, _clean=True)
        f = f - _lift(lc, k, d)
    return f


def _lift(c: Polynomial, k: int, d: int) -> Polynomial:
    """``c * x_k^d`` for ``c`` free of ``x_k``."""
    if d == 0:
        return c
    out = {}
    for m, a in c.terms.items():
        out[m[:k] + (d,) + m[k + 1:]] = a
    return Polynomial(c.order, out, _clean=True)


def _prem_signed(a: Polynomial, b: Polynomial, k: int, sample) -> Tuple[Polynomial, int]:
    """Pseudo-remainder and the sign of the factor ``lc(b)^e`` at the base."""
    from .polynomial import prem

    e = a.degree(k) - b.degree(k) + 1
    r = prem(a, b, k)
    s = 1
    if e % 2:
        s = sign_nonzero(b.leading_coefficient(k), sample)
    return r, s


def _int_primitive(f: Polynomial) -> Polynomial:
    """Divide by the positive integer content (sign preserving)."""
    if f.is_zero():
        return f
    c = f.integer_content()
    if c == 1:
        return f
    inv = 1 / c
    return Polynomial(f.order, {m: (a * inv) for m, a in f.terms.items()})


def tower_gcd(a: Polynomial, b: Polynomial, k: int, sample) -> Polynomial:
    """Gcd in ``x_k`` over the field generated by ``sample[:k]``.

    Both inputs must already have rational coordinates substituted.  The
    result has a leading coefficient that does not vanish at the base.
    """
    a = _trim(a, k, sample)
    b = _trim(b, k, sample)
    if a.degree(k) < b.degree(k):
        a, b = b, a
    while True:
        if b.is_zero():
            return a
        if b.degree(k) <= 0:
            return Polynomial.constant(a.order, 1)
        from .polynomial import prem

        r = _trim(_subst_rationals(prem(a, b, k), sample), k, sample)
        a, b = b, _int_primitive(r)


def _is_zero(q: Polynomial, sample) -> bool:
    """Exact zero test; ``q`` has rational coordinates substituted."""
    k = q.mvar
    alpha = sample[k]
    p = _subst_rationals(alpha.poly, sample)
    if q.degree(k) == 0:
        return sign_at_point(q, sample[:k]) == 0
    base = sample[:k]
    qt = _trim(q, k, base)
    if qt.degree(k) <= 0:
        return qt.is_zero() or sign_at_point(qt, base) == 0
    if qt.primitive() == p.primitive():
        return True
    g = tower_gcd(qt, p, k, base)
    if g.degree(k) <= 0:
        return False
    if alpha.lo == alpha.hi:
        return sign_at_point(g.subs(k, alpha.lo), base) == 0
    slo = sign_nonzero(g.subs(k, alpha.lo), base)
    shi = sign_nonzero(g.subs(k, alpha.hi), base)
    if slo * shi < 0:
        if g.degree(k) < p.degree(k):
            alpha.poly = g.primitive() if g.sign_of_leading() else g
            alpha._slo = None
            if alpha.poly.variables() == [k]:
                alpha._dense = _upoly.from_rational(
                    [c.constant_value() for c in reversed(alpha.poly.coefficients(k))]
                )
        return True
    return False


# ---------------------------------------------------------------------------
# Sturm chains over a tower


class _Sturm:
    def __init__(self, f: Polynomial, k: int, base):
        self.k = k
        self.base = base
        chain = [f, _trim(_subst_rationals(f.derivative(k), base), k, base)]
        while chain[-1].degree(k) > 0:
            a, b = chain[-2], chain[-1]
            r, s = _prem_signed(a, b, k, base)
            r = _trim(_subst_rationals(r, base), k, base)
            if r.is_zero():
                break
            chain.append(_int_primitive(r * (-s)))
        self.chain = chain
        self.lc_signs = [sign_nonzero(c.leading_coefficient(k), base) for c in chain]
        self.degs = [c.degree(k) for c in chain]

    def gcd_part(self) -> Polynomial:
        """Last chain element: ``gcd(f, f')`` up to a factor."""
        return self.chain[-1]

    def variations_at(self, t: Optional[Fraction], side: int = 1) -> Tuple[int, int]:
        """(variations, sign of f) at ``t``; ``t=None`` means ``side * infinity``."""
        signs = []
        if t is None:
            for s, d in zip(self.lc_signs, self.degs):
                signs.append(s if (side > 0 or d % 2 == 0) else -s)
        else:
            for c in self.chain:
                signs.append(sign_at_point(c.subs(self.k, t), self.base))
        nz = [s for s in signs if s]
        return sum(1 for u, v in zip(nz, nz[1:]) if u != v), signs[0]


def _cauchy_bound(f: Polynomial, k: int, base) -> Fraction:
    coeffs = f.coefficients(k)
    lc = coeffs[0]
    while True:
        lcq = _subst_rationals(lc, base)
        if lcq.is_constant():
            lo_lc = abs(Fraction(lcq.constant_value()))
            sc = 0
            break
        prec = _prec_for(lcq, base)
        lo, hi, sc = _interval_eval(lcq, base, prec)
        if lo > 0 or hi < 0:
            lo_lc = Fraction(min(abs(lo), abs(hi)), 1 << sc)
            break
        _refine_vars(lcq, base, 32)
    m = Fraction(0)
    for c in coeffs[1:]:
        cq = _subst_rationals(c, base)
        if cq.is_constant():
            m = max(m, abs(Fraction(cq.constant_value())))
        else:
            lo, hi, sc = _interval_eval(cq, base, _prec_for(cq, base))
            m = max(m, Fraction(max(abs(lo), abs(hi)), 1 << sc))
    b = 1 + m / lo_lc
    return Fraction(1 << max(0, math.ceil(b).bit_length()))


def _pquo(a: Polynomial, b: Polynomial, k: int) -> Polynomial:
    """Pseudo-quotient of ``a`` by ``b`` in ``x_k``."""
    ac = a.coefficients(k)
    bc = b.coefficients(k)
    da, db = len(ac) - 1, len(bc) - 1
    lcb = bc[0]
    zero = Polynomial(a.order, {}, _clean=True)
    q = [zero] * (da - db + 1)
    r = list(ac)
    for i in range(da - db + 1):
        lead = r[i]
        q = [c * lcb for c in q]
        q[i] = lead
        r = [c * lcb for c in r]
        for j in range(1, db + 1):
            r[i + j] = r[i + j] - lead * bc[j]
    return Polynomial.from_coefficients(q, k)


def _tower_isolate(f: Polynomial, k: int, base) -> List[Coordinate]:
    """Distinct real roots of ``f(base, x_k)``; ``f`` trimmed, degree >= 1."""
    st = _Sturm(f, k, base)
    g = st.gcd_part()
    sqf = f if g.degree(k) <= 0 else _trim(_subst_rationals(_pquo(f, g, k), base), k, base)
    sqf = _int_primitive(sqf)
    v_neg, _ = st.variations_at(None, -1)
    v_pos, _ = st.variations_at(None, 1)
    total = v_neg - v_pos
    if total == 0:
        return []
    B = _cauchy_bound(f, k, base)
    roots: List[Coordinate] = []
    vb_lo, s_lo = st.variations_at(-B)
    vb_hi, s_hi = st.variations_at(B)
    work = [(-B, B, vb_lo, vb_hi)]
    while work:
        lo, hi, vlo, vhi = work.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            roots.append(AlgebraicNumber(sqf, k, lo, hi, base))
            continue
        mid = (lo + hi) / 2
        vm, sm = st.variations_at(mid)
        if sm == 0:
            roots.append(mid)
            # step off the exact root until the counts account for it
            d = (hi - lo) / 8
            while True:
                a, b = mid - d, mid + d
                va, sa = st.variations_at(a)
                vb, sb = st.variations_at(b)
                if sa and sb and (vlo - va) + (vb - vhi) == n - 1 and va - vb == 1:
                    break
                d /= 2
            work.append((b, hi, vb, vhi))
            work.append((lo, a, vlo, va))
        else:
            work.append((mid, hi, vm, vhi))
            work.append((lo, mid, vlo, vm))
    out = []
    for r in roots:
        out.append(_detect_rational(r) if isinstance(r, AlgebraicNumber) else r)
    out.sort(key=lambda r: r.lo if isinstance(r, AlgebraicNumber) else r)
    return out


def _detect_rational(a: AlgebraicNumber) -> Coordinate:
    """Cheap check whether the simplest rational in the interval is the root."""
    c = simplest_between(a.lo, a.hi)
    if c.denominator > 1 << 16:
        return a
    q = _subst_rationals(a.poly.subs(a.var, c), a.base)
    if q.is_constant():
        return c if q.is_zero() else a
    if _interval_sign(q, a.base) not in (None, 0):
        return a
    if sign_at_point(q, a.base) == 0:
        return c
    return a


simplest_between = _upoly.simplest_between


# ---------------------------------------------------------------------------
# public univariate API


def _as_dense(f: Polynomial) -> Tuple[int, List[int]]:
    vs = f.variables()
    if len(vs) != 1:
        raise PolynomialError(f"{f} is not univariate")
    v = vs[0]
    return v, _upoly.from_rational([c.constant_value() for c in reversed(f.coefficients(v))])


def isolate_roots(f: Polynomial) -> List[Coordinate]:
    """Distinct real roots of a univariate polynomial, ascending.

    >>> o = VarOrder.of("x")
    >>> isolate_roots(Polynomial.parse("x^3 - x", o))
    [Fraction(-1, 1), Fraction(0, 1), Fraction(1, 1)]
    """
    if f.is_zero():
        raise PolynomialError("cannot isolate the roots of the zero polynomial")
    if f.is_constant():
        return []
    v, dense = _as_dense(f)
    return _dense_roots(dense, f.order, v)


def _dense_roots(dense: List[int], order: VarOrder, v: int, base: Sequence = ()) -> List[Coordinate]:
    out: List[Coordinate] = []
    ivs = _upoly.isolate(dense)
    if not ivs:
        return out
    sqf = _upoly.squarefree_part(dense)
    poly = None
    for lo, hi in ivs:
        if lo == hi:
            out.append(lo)
        else:
            if poly is None:
                terms = {}
                for i, c in enumerate(sqf):
                    if c:
                        m = [0] * len(order)
                        m[v] = i
                        terms[tuple(m)] = c
                poly = Polynomial(order, terms, _clean=True)
            a = AlgebraicNumber(poly, v, lo, hi, base)
            a._dense = sqf
            out.append(a)
    return out


def sign_at(f: Polynomial, p: Coordinate) -> int:
    """Sign of a univariate ``f`` at the rational or algebraic ``p``."""
    if f.is_constant():
        return _sgn(f.constant_value())
    vs = f.variables()
    if len(vs) != 1:
        raise PolynomialError(f"{f} is not univariate")
    v = vs[0]
    sample = [Fraction(0)] * v + [p]
    if isinstance(p, AlgebraicNumber) and p.var != v:
        raise PolynomialError("variable mismatch between polynomial and algebraic number")
    return sign_at_point(f, sample)


def refine(a: Coordinate, width) -> Coordinate:
    """A copy of ``a`` whose isolating interval is at most ``width`` wide."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if not isinstance(a, AlgebraicNumber):
        return a
    b = a.copy()
    b.tighten(width)
    return normalize(b)


_SEPARATION_ROUNDS = 12


def compare_roots(a: Coordinate, b: Coordinate, base: Sequence = (), gcd_cache: Optional[dict] = None) -> int:
    """Exact comparison of two roots over the same base point."""
    ea, eb = _exact(a), _exact(b)
    if ea is not None and eb is not None:
        return _sgn(ea - eb)
    if ea is not None:
        return -compare_roots(b, a, base, gcd_cache)
    # a algebraic
    if eb is not None:
        if eb <= a.lo:
            return 1
        if eb >= a.hi:
            return -1
        p = a.poly.subs(a.var, eb)
        if sign_at_point(p, a.base) == 0:
            a.lo = a.hi = eb
            return 0
        while a.lo < eb < a.hi:
            a.tighten((a.hi - a.lo) / 4)
        return compare_roots(a, b, base, gcd_cache)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    # distinct roots usually separate after a little bisection; the gcd is
    # only needed when they do not
    for _ in range(_SEPARATION_ROUNDS):
        a.tighten((a.hi - a.lo) / 8)
        b.tighten((b.hi - b.lo) / 8)
        if a.lo == a.hi or b.lo == b.hi:
            return compare_roots(normalize(a), normalize(b), base, gcd_cache)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
    key = (a.poly, b.poly)
    g = gcd_cache.get(key) if gcd_cache is not None else None
    if g is None:
        k = a.var
        bs = a.base
        g = tower_gcd(_subst_rationals(a.poly, bs), _subst_rationals(b.poly, bs), k, bs)
        if gcd_cache is not None:
            gcd_cache[key] = gcd_cache[(b.poly, a.poly)] = g
    if g.degree(a.var) > 0:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        k, bs = a.var, a.base
        slo = sign_nonzero(g.subs(k, lo), bs)
        shi = sign_nonzero(g.subs(k, hi), bs)
        if slo * shi < 0:
            return 0
    while not (a.hi <= b.lo or b.hi <= a.lo):
        a.tighten((a.hi - a.lo) / 4)
        b.tighten((b.hi - b.lo) / 4)
        ea, eb = _exact(a), _exact(b)
        if ea is not None or eb is not None:
            return compare_roots(normalize(a), normalize(b), base, gcd_cache)
    return -1 if a.hi <= b.lo else 1


def real_roots_over(f: Polynomial, k: int, sample: Sequence[Coordinate]) -> Optional[List[Coordinate]]:
    """Distinct real roots in ``x_k`` of ``f`` at the base ``sample[:k]``.

    Returns ``None`` if ``f`` vanishes identically over the base
    (nullification).
    """
    base = tuple(sample[:k])
    g = _subst_rationals(f, base)
    g = _trim(g, k, base)
    if g.is_zero():
        return None
    if g.degree(k) <= 0:
        return []
    if g.variables() == [k]:
        _, dense = _as_dense(g)
        return _dense_roots(dense, f.order, k, base)
    return _tower_isolate(g, k, base)


def isolate_roots_of_set(
    polys: Sequence[Polynomial], k: Optional[int] = None, sample: Sequence[Coordinate] = ()
) -> List[Tuple[Coordinate, List[int]]]:
    """Merged ascending roots of several polynomials with originating tags.

    Each entry is ``(root, tags)`` where ``tags`` lists the indices into
    ``polys`` of every polynomial vanishing there.  Polynomials that vanish
    identically over the base raise :class:`NullifiedError`.

    >>> o = VarOrder.of("x")
    >>> P = lambda s: Polynomial.parse(s, o)
    >>> [(r, t) for r, t in isolate_roots_of_set([P("x-1"), P("(x-1)*(x-2)")])]
    [(Fraction(1, 1), [0, 1]), (Fraction(2, 1), [1])]
    """
    if k is None:
        vs = sorted({v for p in polys for v in p.variables()})
        if len(vs) > 1:
            raise PolynomialError("polynomials are not univariate in one variable")
        k = vs[0] if vs else 0
    entries: List[Tuple[Coordinate, List[int]]] = []
    for idx, p in enumerate(polys):
        rs = real_roots_over(p, k, sample)
        if rs is None:
            raise NullifiedError(p, idx)
        for r in rs:
            entries.append((r, [idx]))
    return merge_roots(entries, tuple(sample[:k]))


class NullifiedError(ArithmeticError):
    def __init__(self, poly, index):
        super().__init__(f"{poly} vanishes identically over the base point")
        self.poly = poly
        self.index = index


def merge_roots(entries, base=(), gcd_cache=None) -> List[Tuple[Coordinate, List[int]]]:
    if gcd_cache is None:
        gcd_cache = {}
    # quick sort by interval lower ends, then resolve overlaps exactly
    keyed = sorted(entries, key=lambda e: (e[0].lo if isinstance(e[0], AlgebraicNumber) else e[0]))
    out: List[Tuple[Coordinate, List[int]]] = []

    def cmp(x, y):
        return compare_roots(x[0], y[0], base, gcd_cache)

    keyed.sort(key=cmp_to_key(cmp))
    for r, tags in keyed:
        if out and compare_roots(out[-1][0], r, base, gcd_cache) == 0:
            prev, ptags = out[-1]
            # keep whichever representation is exact or of lower degree
            best = prev
            if _exact(r) is not None and _exact(prev) is None:
                best = _exact(r)
            elif isinstance(prev, AlgebraicNumber) and isinstance(r, AlgebraicNumber):
                if r.poly.degree(r.var) < prev.poly.degree(prev.var):
                    best = r
            out[-1] = (normalize(best), sorted(set(ptags) | set(tags)))
        else:
            out.append((normalize(r), list(tags)))
    return out


def sturm_count_oracle(f: Polynomial) -> int:
    """Number of distinct real roots via a rational Sturm sequence."""
    _, dense = _as_dense(f)
    return _upoly.sturm_count(dense)
