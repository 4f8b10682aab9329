"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a map from exponent tuples to nonzero ``int`` or
:class:`fractions.Fraction` coefficients, tied to a :class:`VarOrder`.
Variables are referred to either by name or by their index in the order;
index ``0`` is the lowest variable ``x_1`` and the last index is the first
variable to be projected.

Besides ring arithmetic the module provides the eliminant machinery used
by the projection phase: pseudo-remainders, subresultant resultants (with
a Sylvester-determinant oracle), discriminants, multivariate gcds and
finest squarefree bases.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Var = Union[int, str]
Monomial = Tuple[int, ...]

__all__ = [
    "VarOrder",
    "Polynomial",
    "PolynomialError",
    "prem",
    "resultant",
    "sylvester_matrix",
    "sylvester_resultant",
    "discriminant",
    "gcd",
    "content",
    "primitive_part",
    "squarefree_factors",
    "squarefree_basis",
    "coefficients",
    "derivative",
]


class PolynomialError(ValueError):
    """Raised for malformed polynomial input or incompatible operands."""


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class VarOrder:
    """Ascending variable order ``x_1 < x_2 < ... < x_n``."""

    names: Tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise PolynomialError("variable order must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise PolynomialError(f"duplicate variables in order {self.names}")

    @classmethod
    def of(cls, names: Union[str, Iterable[str]]) -> "VarOrder":
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, v: Var) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.names):
                raise PolynomialError(f"variable index {v} out of range")
            return v
        try:
            return self.names.index(v)
        except ValueError:
            raise PolynomialError(f"unknown variable {v!r}; order is {self.names}") from None

    def __str__(self) -> str:
        return ", ".join(self.names)


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    >>> order = VarOrder.of("x, y")
    >>> f = Polynomial.parse("x^2 + y^2 - 1", order)
    >>> f.degree("y"), f.mvar
    (2, 1)
    >>> print(f.derivative("y"))
    2*y
    """

    __slots__ = ("order", "terms", "_hash")

    def __init__(self, order: VarOrder, terms: Optional[Dict[Monomial, Number]] = None, *, _clean: bool = False):
        self.order = order
        if terms is None:
            terms = {}
        elif not _clean:
            n = len(order)
            clean = {}
            for m, c in terms.items():
                if len(m) != n:
                    raise PolynomialError(f"exponent vector {m} does not match order of length {n}")
                if c:
                    clean[tuple(m)] = _norm(c)
            terms = clean
        self.terms = terms
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, order: VarOrder, c: Number) -> "Polynomial":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        if not c:
            return cls(order, {}, _clean=True)
        return cls(order, {(0,) * len(order): c}, _clean=True)

    @classmethod
    def variable(cls, order: VarOrder, v: Var) -> "Polynomial":
        i = order.index(v)
        m = [0] * len(order)
        m[i] = 1
        return cls(order, {tuple(m): 1}, _clean=True)

    @classmethod
    def parse(cls, text: str, order: VarOrder) -> "Polynomial":
        from .formula import parse_polynomial

        return parse_polynomial(text, order)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["Polynomial"], v: Var) -> "Polynomial":
        """Inverse of :meth:`coefficients`: ``coeffs`` is degree-descending."""
        if not coeffs:
            raise PolynomialError("empty coefficient list")
        order = coeffs[0].order
        i = order.index(v)
        d = len(coeffs) - 1
        out: Dict[Monomial, Number] = {}
        for k, c in enumerate(coeffs):
            e = d - k
            for m, a in c.terms.items():
                if m[i]:
                    raise PolynomialError("coefficient involves the main variable")
                mm = m[:i] + (e,) + m[i + 1:]
                out[mm] = a
        return cls(order, out, _clean=True)

    # -- basic properties ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        (m,) = self.terms
        return not any(m)

    def constant_value(self) -> Number:
        if not self.terms:
            return 0
        if not self.is_constant():
            raise PolynomialError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def variables(self) -> List[int]:
        seen = [False] * len(self.order)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen[i] = True
        return [i for i, s in enumerate(seen) if s]

    @property
    def mvar(self) -> Optional[int]:
        """Index of the greatest variable present, ``None`` for constants."""
        best = -1
        for m in self.terms:
            for i in range(len(m) - 1, best, -1):
                if m[i]:
                    best = i
                    break
        return None if best < 0 else best

    @property
    def level(self) -> int:
        """1-based level of the main variable, 0 for constants."""
        mv = self.mvar
        return 0 if mv is None else mv + 1

    def degree(self, v: Var) -> int:
        """Degree in ``v``; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.order.index(v)
        return max(m[i] for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def max_degree(self) -> int:
        """Largest degree in any single variable."""
        if not self.terms:
            return -1
        return max(max(m) for m in self.terms)

    def _lex_key(self, m: Monomial):
        return tuple(reversed(m))

    def leading_term(self) -> Tuple[Monomial, Number]:
        """Leading term in lex order with the highest variable most significant."""
        m = max(self.terms, key=self._lex_key)
        return m, self.terms[m]

    def sign_of_leading(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.leading_term()[1] > 0 else -1

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.order != self.order:
                raise PolynomialError(f"variable order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial(self.order, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.order, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial(self.order, out, _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial(self.order, {}, _clean=True)
            return Polynomial(self.order, {m: _norm(c * other) for m, c in self.terms.items()}, _clean=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.order, {}, _clean=True)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, Number] = {}
        get = out.get
        bi = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bi:
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        return Polynomial(self.order, {m: _norm(c) for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative exponent")
        result = Polynomial.constant(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ---------------------------------------

    def derivative(self, v: Var) -> "Polynomial":
        i = self.order.index(v)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial(self.order, out, _clean=True)

    def coefficients(self, v: Var) -> List["Polynomial"]:
        """Coefficients w.r.t. ``v``, degree-descending, leading first."""
        i = self.order.index(v)
        if not self.terms:
            return [self]
        d = self.degree(i)
        buckets: List[Dict[Monomial, Number]] = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            buckets[d - m[i]][m[:i] + (0,) + m[i + 1:]] = c
        return [Polynomial(self.order, b, _clean=True) for b in buckets]

    def leading_coefficient(self, v: Var) -> "Polynomial":
        return self.coefficients(v)[0]

    def subs(self, v: Var, value: Number) -> "Polynomial":
        """Substitute a rational value for ``v`` (the variable slot stays, unused)."""
        i = self.order.index(v)
        value = _norm(Fraction(value)) if not isinstance(value, int) else value
        powers = {0: 1}
        out: Dict[Monomial, Number] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e not in powers:
                powers[e] = value ** e
            mm = m[:i] + (0,) + m[i + 1:]
            out[mm] = out.get(mm, 0) + c * powers[e]
        return Polynomial(self.order, {m: _norm(c) for m, c in out.items() if c}, _clean=True)

    def evaluate(self, values: Union[Sequence[Number], Dict[Var, Number]]) -> Number:
        if isinstance(values, dict):
            vals = [None] * len(self.order)
            for k, x in values.items():
                vals[self.order.index(k)] = x
        else:
            vals = list(values)
        total: Number = 0
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    if vals[i] is None:
                        raise PolynomialError(f"no value for {self.order.names[i]}")
                    t = t * Fraction(vals[i]) ** e
            total += t
        return _norm(Fraction(total))

    # -- normalisation ---------------------------------------------------

    def integer_content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self.terms:
            return Fraction(0)
        nums = 0
        dens = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                nums = math.gcd(nums, c.numerator)
                dens = dens * c.denominator // math.gcd(dens, c.denominator)
            else:
                nums = math.gcd(nums, c)
        return Fraction(nums, dens)

    def primitive(self) -> "Polynomial":
        """Integer-coefficient primitive form with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.integer_content()
        if self.sign_of_leading() < 0:
            c = -c
        if c == 1:
            if all(isinstance(a, int) for a in self.terms.values()):
                return self
        inv = 1 / c
        return Polynomial(self.order, {m: _norm(a * inv) for m, a in self.terms.items()}, _clean=True)

    def clear_denominators(self) -> "Polynomial":
        """Multiply by a positive integer so that all coefficients are integers."""
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        if den == 1:
            return self
        return Polynomial(self.order, {m: _norm(c * den) for m, c in self.terms.items()}, _clean=True)

    def norm_length(self) -> int:
        """Sum of absolute values of the integer coefficients (denominators cleared)."""
        return sum(abs(c) for c in self.clear_denominators().terms.values())

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact division; raises :class:`PolynomialError` if not exact."""
        q, r = _divide(self, other)
        if r:
            raise PolynomialError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Polynomial") -> bool:
        if not self.terms:
            return not other.terms
        return not _divide(other, self)[1]

    # -- text ------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, Number]]:
        """Terms by descending total degree, ties broken lexicographically."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(reversed(t[0]))), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                (self.order.names[i] if e == 1 else f"{self.order.names[i]}^{e}")
                for i, e in reversed(list(enumerate(m)))
                if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                if a == 1:
                    body = mono
                elif isinstance(a, Fraction):
                    body = f"{a.numerator}/{a.denominator}*{mono}"
                else:
                    body = f"{a}*{mono}"
            else:
                body = str(a)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, order={self.order.names})"


# ---------------------------------------------------------------------------
# division helpers


def _divide(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Multivariate division by leading terms (lex, highest variable first).

    The remainder is zero exactly when ``b`` divides ``a`` over the rationals.
    """
    if not b.terms:
        raise ZeroDivisionError("polynomial division by zero")
    order = a.order
    key = lambda m: tuple(reversed(m))
    lm_b, lc_b = b.leading_term()
    b_rest = [(m, c) for m, c in b.terms.items() if m != lm_b]
    rem = dict(a.terms)
    quot: Dict[Monomial, Number] = {}
    out_rem: Dict[Monomial, Number] = {}
    while rem:
        m = max(rem, key=key)
        c = rem.pop(m)
        if all(x >= y for x, y in zip(m, lm_b)):
            qm = tuple(x - y for x, y in zip(m, lm_b))
            qc = _norm(Fraction(c) / lc_b) if not (isinstance(c, int) and isinstance(lc_b, int) and c % lc_b == 0) else c // lc_b
            quot[qm] = qc
            for mb, cb in b_rest:
                mm = tuple(x + y for x, y in zip(qm, mb))
                s = rem.get(mm, 0) - qc * cb
                if s:
                    rem[mm] = _norm(s)
                else:
                    rem.pop(mm, None)
        else:
            out_rem[m] = c
    return Polynomial(order, quot, _clean=True), Polynomial(order, out_rem, _clean=True)


def coefficients(f: Polynomial, v: Var) -> List[Polynomial]:
    return f.coefficients(v)


def derivative(f: Polynomial, v: Var) -> Polynomial:
    return f.derivative(v)


def _check_same(f: Polynomial, g: Polynomial):
    if f.order != g.order:
        raise PolynomialError(f"variable order mismatch: {f.order} vs {g.order}")


def prem(a: Polynomial, b: Polynomial, v: Var) -> Polynomial:
    """Pseudo-remainder: ``lc(b)^(deg a - deg b + 1) * a mod b`` w.r.t. ``v``."""
    _check_same(a, b)
    i = a.order.index(v)
    db = b.degree(i)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    da = a.degree(i)
    if da < db:
        return a
    bc = b.coefficients(i)
    lcb = bc[0]
    # b_tail[k] multiplies x^(db-1-k)
    b_tail = bc[1:]
    rc = a.coefficients(i)
    e = da - db + 1
    for _ in range(da - db + 1):
        if len(rc) - 1 < db:
            break
        lead = rc[0]
        rest = rc[1:]
        # r = lcb * r - lead * x^(deg r - db) * b
        new = [lcb * c for c in rest]
        if lead:
            for k, t in enumerate(b_tail):
                if t:
                    new[k] = new[k] - lead * t
        e -= 1
        rc = new
        while len(rc) > 1 and not rc[0]:
            rc = rc[1:]
            # dropping zero leading coefficients still counts a step
        if not rc:
            break
    if not rc:
        return Polynomial(a.order, {}, _clean=True)
    r = Polynomial.from_coefficients(rc, i)
    if e > 0:
        r = r * lcb ** e
    return r


def _univariate_degree_lists(f: Polynomial, i: int) -> List[Polynomial]:
    return f.coefficients(i)


# ---------------------------------------------------------------------------
# resultants


def resultant(f: Polynomial, g: Polynomial, v: Var) -> Polynomial:
    """Resultant of ``f`` and ``g`` w.r.t. ``v`` via the subresultant PRS.

    >>> o = VarOrder.of("x, y")
    >>> print(resultant(Polynomial.parse("x^2+y^2-1", o), Polynomial.parse("x", o), "x"))
    y^2 - 1
    """
    _check_same(f, g)
    i = f.order.index(v)
    df, dg = f.degree(i), g.degree(i)
    if df < 0 or dg < 0:
        return Polynomial(f.order, {}, _clean=True)
    if df == 0 and dg == 0:
        raise PolynomialError(f"both operands are constant in {f.order.names[i]}")
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    sign = 1
    a, b = f, g
    if df < dg:
        a, b = b, a
        if (df * dg) % 2:
            sign = -1
    one = Polynomial.constant(f.order, 1)
    gg = one
    h = one
    while True:
        da, db = a.degree(i), b.degree(i)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = prem(a, b, i)
        if r.is_zero():
            return r
        a = b
        b = r.exquo(gg * h ** delta)
        gg = a.leading_coefficient(i)
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = (gg ** delta).exquo(h ** (delta - 1))
        if b.degree(i) == 0:
            da = a.degree(i)
            lb = b
            if da == 1:
                res = lb
            else:
                res = (lb ** da).exquo(h ** (da - 1))
            return res * sign


def sylvester_matrix(f: Polynomial, g: Polynomial, v: Var) -> List[List[Polynomial]]:
    i = f.order.index(v)
    fc, gc = f.coefficients(i), g.coefficients(i)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = Polynomial(f.order, {}, _clean=True)
    rows = []
    for k in range(n):
        rows.append([zero] * k + fc + [zero] * (size - k - m - 1))
    for k in range(m):
        rows.append([zero] * k + gc + [zero] * (size - k - n - 1))
    return rows


def _det(mat: List[List[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(mat)
    if n == 0:
        raise PolynomialError("empty matrix")
    order = mat[0][0].order
    a = [row[:] for row in mat]
    sign = 1
    prev = Polynomial.constant(order, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial(order, {}, _clean=True)
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]).exquo(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sylvester_resultant(f: Polynomial, g: Polynomial, v: Var) -> Polynomial:
    """Resultant as the literal Sylvester determinant (test oracle)."""
    _check_same(f, g)
    i = f.order.index(v)
    if f.degree(i) == 0 and g.degree(i) == 0:
        raise PolynomialError("both operands are constant in the variable")
    if f.degree(i) == 0:
        return f ** g.degree(i)
    if g.degree(i) == 0:
        return g ** f.degree(i)
    return _det(sylvester_matrix(f, g, i))


def discriminant(f: Polynomial, v: Var) -> Polynomial:
    """``(-1)^(d(d-1)/2) res(f, f') / lc(f)`` w.r.t. ``v``."""
    i = f.order.index(v)
    d = f.degree(i)
    if d < 2:
        raise PolynomialError(f"discriminant needs degree >= 2 in {f.order.names[i]}, got {d}")
    r = resultant(f, f.derivative(i), i).exquo(f.leading_coefficient(i))
    return -r if (d * (d - 1) // 2) % 2 else r


# ---------------------------------------------------------------------------
# gcd, contents and squarefree bases

_PRIME = (1 << 61) - 1


def _image_mod_p(f: Polynomial, i: int, point: Sequence[int], p: int) -> List[int]:
    """Univariate image (low-degree first) of ``f`` in variable ``i`` mod ``p``."""
    d = f.degree(i)
    out = [0] * (d + 1)
    for m, c in f.terms.items():
        t = c.numerator * pow(c.denominator, -1, p) if isinstance(c, Fraction) else c
        for j, e in enumerate(m):
            if e and j != i:
                t = t * pow(point[j], e, p)
        out[m[i]] = (out[m[i]] + t) % p
    return out


def _gcd_degree_mod_p(a: List[int], b: List[int], p: int) -> int:
    def strip(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = strip(a[:]), strip(b[:])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            if a[-1]:
                q = a[-1] * inv % p
                s = len(a) - len(b)
                for k, c in enumerate(b):
                    a[s + k] = (a[s + k] - q * c) % p
            a.pop()
            strip(a)
        a, b = b, a
    return len(a) - 1


def _coprime_in(f: Polynomial, g: Polynomial, i: int, rng: random.Random) -> bool:
    """Cheap certificate that ``gcd(f, g)`` has degree 0 in variable ``i``."""
    n = len(f.order)
    point = [rng.randrange(1, _PRIME) for _ in range(n)]
    fa = _image_mod_p(f, i, point, _PRIME)
    ga = _image_mod_p(g, i, point, _PRIME)
    if fa[-1] == 0 or ga[-1] == 0:
        return False
    return _gcd_degree_mod_p(fa, ga, _PRIME) == 0


_RNG = random.Random(20140501)


def content(f: Polynomial, v: Var) -> Polynomial:
    """Gcd of the coefficients of ``f`` w.r.t. ``v`` (primitive, positive)."""
    i = f.order.index(v)
    cs = [c for c in f.coefficients(i) if c]
    if not cs:
        return f
    return reduce(gcd, cs[1:], cs[0].primitive())


def primitive_part(f: Polynomial, v: Var) -> Polynomial:
    if f.is_zero():
        return f
    return f.exquo(content(f, v)).primitive()


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Greatest common divisor over Q, normalised to a primitive integer polynomial.

    >>> o = VarOrder.of("x")
    >>> print(gcd(Polynomial.parse("x^2-1", o), Polynomial.parse("x^2+2x+1", o)))
    x + 1
    """
    _check_same(f, g)
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    one = Polynomial.constant(f.order, 1)
    if f.is_constant() or g.is_constant():
        return one
    f, g = f.primitive(), g.primitive()
    if f == g:
        return f
    vf, vg = set(f.variables()), set(g.variables())
    if not vf & vg:
        return one
    i = max(f.mvar, g.mvar)
    if f.degree(i) == 0:
        return gcd(f, content(g, i))
    if g.degree(i) == 0:
        return gcd(content(f, i), g)
    cf, cg = content(f, i), content(g, i)
    c = gcd(cf, cg)
    a, b = f.exquo(cf), g.exquo(cg)
    if _coprime_in(a, b, i, _RNG):
        return c.primitive()
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while True:
        r = prem(a, b, i)
        if r.is_zero():
            break
        if r.degree(i) == 0:
            return c.primitive()
        a, b = b, primitive_part(r, i)
    return (c * primitive_part(b, i)).primitive()


def squarefree_factors(f: Polynomial) -> List[Polynomial]:
    """Distinct squarefree primitive factors (one per multiplicity and content level)."""
    if f.is_constant():
        return []
    f = f.primitive()
    i = f.mvar
    out: List[Polynomial] = []
    c = content(f, i)
    if not c.is_constant():
        out.extend(squarefree_factors(c))
        f = f.exquo(c).primitive()
    # Yun's algorithm in the main variable
    df = f.derivative(i)
    a = gcd(f, df)
    if a.is_constant():
        out.append(f)
        return out
    b = f.exquo(a)
    cc = df.exquo(a)
    d = cc - b.derivative(i)
    while not b.is_constant():
        ai = gcd(b, d)
        b = b.exquo(ai)
        cc = d.exquo(ai)
        d = cc - b.derivative(i)
        if not ai.is_constant():
            out.append(ai.primitive())
    return out


def squarefree_basis(polys: Iterable[Polynomial]) -> List[Polynomial]:
    """Finest squarefree basis by iterated gcd splitting.

    The result is a list of pairwise coprime, squarefree, primitive integer
    polynomials with positive leading coefficient, such that every input is a
    constant times a product of powers of basis elements.  No irreducible
    factorisation is attempted.

    >>> o = VarOrder.of("x")
    >>> sorted(str(p) for p in squarefree_basis([Polynomial.parse("(x-1)^2*(x+2)", o), Polynomial.parse("x-1", o)]))
    ['x + 2', 'x - 1']
    """
    basis: List[Polynomial] = []
    for f in polys:
        for s in squarefree_factors(f):
            _add_to_basis(basis, s)
    return basis


def _add_to_basis(basis: List[Polynomial], p: Polynomial) -> None:
    queue = [p]
    while queue:
        p = queue.pop()
        if p.is_constant():
            continue
        p = p.primitive()
        for k, b in enumerate(basis):
            if b == p:
                break
            if not set(b.variables()) & set(p.variables()):
                continue
            g = gcd(p, b)
            if not g.is_constant():
                basis.pop(k)
                for piece in (g, b.exquo(g)):
                    if not piece.is_constant():
                        basis.append(piece.primitive())
                queue.append(p.exquo(g))
                break
        else:
            basis.append(p)
