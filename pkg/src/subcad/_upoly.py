"""Dense univariate integer polynomials as low-degree-first coefficient lists.

Fast paths for the common case where a lifting polynomial becomes a plain
rational univariate polynomial after substitution.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Root = Tuple[Fraction, Fraction]  # (lo, hi); lo == hi for an exact rational root


def trim(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def from_rational(coeffs: Sequence) -> List[int]:
    """Low-first rational coefficients to a primitive integer list."""
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    out = [int(c * den) for c in coeffs]
    return primitive(trim(out))


def primitive(p: List[int]) -> List[int]:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    if p and p[-1] < 0:
        p = [-c for c in p]
    return p


def derivative(p: Sequence[int]) -> List[int]:
    return [i * p[i] for i in range(1, len(p))]


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Sign of ``p(x)`` by homogeneous Horner evaluation in integers."""
    a, b = x.numerator, x.denominator
    acc = 0
    bp = 1
    for c in reversed(p):
        acc = acc * a + c * bp
        bp *= b
    # acc = b^d p(a/b), b > 0
    return (acc > 0) - (acc < 0)


def value_at(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def prem(a: List[int], b: List[int]) -> List[int]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        s = len(a) - 1 - db
        a = [c * lb for c in a]
        for k, c in enumerate(b):
            a[s + k] -= la * c
        a.pop()
        trim(a)
    return a


def divexact(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Exact quotient over Q, returned as a primitive integer list."""
    a = [Fraction(c) for c in a]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for k, bk in enumerate(b):
                a[i - db + k] -= c * bk
    return from_rational(q)


_P = (1 << 61) - 1


def _deg_gcd_mod(a: Sequence[int], b: Sequence[int], p: int) -> int:
    x = trim([c % p for c in a])
    y = trim([c % p for c in b])
    if len(x) != len(a) or len(y) != len(b):
        return -2  # unlucky prime
    while y:
        inv = pow(y[-1], -1, p)
        while len(x) >= len(y):
            if x[-1]:
                q = x[-1] * inv % p
                s = len(x) - len(y)
                for k, c in enumerate(y):
                    x[s + k] = (x[s + k] - q * c) % p
            x.pop()
            trim(x)
        x, y = y, x
    return len(x) - 1


def gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    a, b = primitive(trim(list(a))), primitive(trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 or len(b) == 1:
        return [1]
    if _deg_gcd_mod(a, b, _P) == 0:
        return [1]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree_part(p: List[int]) -> List[int]:
    g = gcd(p, derivative(p))
    if len(g) <= 1:
        return primitive(list(p))
    return divexact(p, g)


def taylor_shift(p: Sequence[int], c: int = 1) -> List[int]:
    """Coefficients of ``p(x + c)``."""
    q = list(p)
    n = len(q)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            q[k] += c * q[k + 1]
    return q


def _descartes(p: Sequence[int]) -> int:
    """Sign variations of ``(x+1)^d p(1/(x+1))``: roots of ``p`` in (0,1), bounded."""
    q = taylor_shift(list(reversed(p)), 1)
    v = 0
    last = 0
    for c in q:
        if c:
            if last and (c > 0) != (last > 0):
                v += 1
                if v > 1:
                    return v
            last = c
    return v


def _scale_half(p: Sequence[int]) -> List[int]:
    """``2^d p(x/2)``."""
    d = len(p) - 1
    return [c << (d - i) for i, c in enumerate(p)]


def _positive_roots(p: List[int]) -> List[Root]:
    """Isolate roots in (0, inf) of a squarefree integer poly with p(0) != 0."""
    d = len(p) - 1
    lc = abs(p[-1])
    m = max(abs(c) for c in p[:-1])
    # Cauchy bound 1 + max|a_i|/|a_d|, rounded up to a power of two
    k = max(0, (m // lc + 1).bit_length())
    B = 1 << k
    # q(x) = p(Bx) maps (0,B) to (0,1)
    q = [c << (k * i) for i, c in enumerate(p)]
    out: List[Root] = []
    # (poly for (c/2^j, (c+1)/2^j) of (0,1), c, j, lo is a root, hi is a root)
    stack = [(q, 0, 0, False, False)]
    while stack:
        q, c, j, rlo, rhi = stack.pop()
        v = _descartes(q)
        if v == 0:
            continue
        lo = Fraction(c * B, 1 << j)
        hi = Fraction((c + 1) * B, 1 << j)
        if v == 1 and not (rlo or rhi):
            out.append((lo, hi))
            continue
        # several roots, or an endpoint is an exact root found earlier:
        # keep splitting so reported endpoints are never roots
        left = _scale_half(q)
        right = taylor_shift(left, 1)
        mid = Fraction((2 * c + 1) * B, 1 << (j + 1))
        rmid = right[0] == 0
        if rmid:
            out.append((mid, mid))
            right = right[1:]
            # deflate x = 0 out of right, and its image x = 1 out of left
            left = divexact_linear_at_one(left)
        stack.append((right, 2 * c + 1, j + 1, rmid, rhi))
        stack.append((left, 2 * c, j + 1, rlo, rmid))
    out.sort()
    return out


def divexact_linear_at_one(p: Sequence[int]) -> List[int]:
    """Divide by ``x - 1`` (synthetic division); ``p(1)`` must be zero."""
    n = len(p) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = acc + p[i]
        q[i - 1] = acc
    return q


def isolate(p: Sequence[int]) -> List[Root]:
    """Isolating intervals for the distinct real roots of an integer polynomial.

    Intervals are open with nonroot endpoints, or degenerate ``(r, r)`` for an
    exact rational root.  Rational roots are always reported exactly.
    """
    p = trim(list(p))
    if len(p) <= 1:
        return []
    p = squarefree_part(p)
    out: List[Root] = []
    zero = False
    if p[0] == 0:
        zero = True
        p = p[1:]
    if len(p) > 1:
        neg = [c if i % 2 == 0 else -c for i, c in enumerate(p)]
        for lo, hi in _positive_roots(neg):
            out.append((-hi, -lo))
        out.extend(_positive_roots(p))
    if zero:
        # move interval ends off the root at 0; p here has p(0) != 0
        for k, (lo, hi) in enumerate(out):
            while lo == 0 or hi == 0:
                lo, hi = refine(p, lo, hi, (hi - lo) / 2)
            out[k] = (lo, hi)
        out.append((Fraction(0), Fraction(0)))
    out.sort()
    out = [_tighten_rational(p, r) for r in out]
    return out


def simplest_between(lo: Fraction, hi: Fraction, open_lo: bool = True, open_hi: bool = True) -> Fraction:
    """Rational with the smallest denominator in the interval (smallest magnitude on ties).

    >>> simplest_between(Fraction(1, 3), Fraction(1, 2))
    Fraction(2, 5)
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi or (lo == hi and (open_lo or open_hi)):
        raise ValueError("empty interval")
    if lo == hi:
        return lo
    if lo < 0 < hi or (lo == 0 and not open_lo) or (hi == 0 and not open_hi):
        return Fraction(0)
    if hi <= 0:
        return -_simplest_pos(-hi, -lo, open_hi, open_lo)
    return _simplest_pos(lo, hi, open_lo, open_hi)


def _simplest_pos(lo: Fraction, hi: Fraction, olo: bool, ohi: bool) -> Fraction:
    # 0 <= lo < hi
    a = lo if (lo.denominator == 1 and not olo) else Fraction(math.floor(lo) + 1)
    if a < hi or (a == hi and not ohi):
        return a
    n = math.floor(lo)
    x, y = lo - n, hi - n
    if x == 0:
        inv = 1 / y
        r = inv if (inv.denominator == 1 and not ohi) else Fraction(math.floor(inv) + 1)
    else:
        r = _simplest_pos(1 / y, 1 / x, ohi, olo)
    return n + 1 / r


def _tighten_rational(p: List[int], r: Root) -> Root:
    """Report a rational root exactly.

    A rational root ``a/b`` of a primitive integer polynomial has ``b | lc``;
    once the interval is narrower than ``1/lc^2`` at most one such fraction
    lies inside, so a single exact evaluation decides.
    """
    lo, hi = r
    if lo == hi:
        return r
    lc = abs(p[-1])
    target = Fraction(1, 2 * lc * lc)
    slo = sign_at(p, lo)
    while hi - lo > target:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return (mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    # two fractions with denominators dividing lc are at least 1/lc^2 apart,
    # so the only candidate is the simplest rational in the interval
    x = simplest_between(lo, hi)
    if x.denominator <= lc and lc % x.denominator == 0 and sign_at(p, x) == 0:
        return (x, x)
    return (lo, hi)


def refine(p: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Bisect the isolating interval of a simple root until narrower than ``width``."""
    slo = sign_at(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def sturm_count(p: Sequence[int], lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots in (lo, hi] by a Sturm sequence (oracle).

    ``None`` bounds stand for minus and plus infinity.
    """
    p = trim(list(p))
    if len(p) <= 1:
        return 0
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in derivative(p)]]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] / b[-1]
            s = len(r) - len(b)
            for k, bk in enumerate(b):
                r[s + k] -= c * bk
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        if not r:
            break
        chain.append([-c for c in r])

    def var(x):
        signs = []
        for q in chain:
            if x is None:
                s = 1 if q[-1] > 0 else -1
            elif x == "-":
                s = 1 if q[-1] > 0 else -1
                if (len(q) - 1) % 2:
                    s = -s
            else:
                v = Fraction(0)
                for c in reversed(q):
                    v = v * x + c
                s = (v > 0) - (v < 0)
            if s:
                signs.append(s)
        return sum(1 for u, w in zip(signs, signs[1:]) if u != w)

    return var("-" if lo is None else lo) - var(hi)
