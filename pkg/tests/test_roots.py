import random
from fractions import Fraction

import pytest
import sympy

from subcad.polynomial import Polynomial, VarOrder
from subcad.roots import (
    AlgebraicNumber,
    compare_roots,
    isolate_roots,
    isolate_roots_of_set,
    real_roots_over,
    refine,
    sign_at,
    sturm_count_oracle,
    to_float,
)

X = VarOrder.of("x")
XY = VarOrder.of("x, y")


def P(s, order=X):
    return Polynomial.parse(s, order)


def _contains(r, value: float) -> bool:
    if isinstance(r, AlgebraicNumber):
        return r.lo < value < r.hi or r.lo == r.hi == value
    return float(r) == value


def test_isolate_examples():
    assert isolate_roots(P("x^3-x")) == [-1, 0, 1]
    neg, pos = isolate_roots(P("x^2-2"))
    assert _contains(neg, -2**0.5) and _contains(pos, 2**0.5)
    assert isolate_roots(P("x^2+1")) == []


def test_isolate_set_examples():
    got = isolate_roots_of_set([P("x^2-1"), P("x")])
    assert [r for r, _ in got] == [-1, 0, 1]
    got = isolate_roots_of_set([P("x-1"), P("(x-1)*(x-2)")])
    assert got[0][0] == 1 and sorted(got[0][1]) == [0, 1]
    assert got[1][0] == 2 and got[1][1] == [1]
    assert isolate_roots_of_set([]) == []


def test_refine_examples():
    r = isolate_roots(P("x^2-2"))[1]
    lo, hi = r.lo, r.hi
    s = refine(r, Fraction(1, 4))
    assert lo <= s.lo < 2**0.5 < s.hi <= hi and s.hi - s.lo <= Fraction(1, 4)
    assert refine(Fraction(3, 2), Fraction(1, 100)) == Fraction(3, 2)
    h = refine(isolate_roots(P("4*x^2-3"))[1], Fraction(1, 10))
    assert h.lo < 3**0.5 / 2 < h.hi and h.hi - h.lo <= Fraction(1, 10)
    with pytest.raises(ValueError):
        refine(r, 0)


def test_sign_at_examples():
    r2 = isolate_roots(P("x^2-2"))[1]
    assert sign_at(P("x"), r2) == 1
    assert sign_at(P("x^2-2"), r2) == 0
    assert sign_at(P("x^2-3"), r2) == -1


def test_compare_same_number_different_polys():
    a = isolate_roots(P("x^2-2"))[1]
    b = [r for r in isolate_roots(P("x^4-4*x^2+4+x^3-2*x")) if to_float(r) > 1.3][0]
    assert compare_roots(a, b) == 0
    c = isolate_roots(P("x^2-3"))[1]
    assert compare_roots(a, c) == -1 and compare_roots(c, a) == 1


def test_roots_over_algebraic_base():
    s2 = isolate_roots(P("x^2-2", XY))[1]
    # y^2 - x has roots +-2^(1/4) over x = sqrt(2)
    rs = real_roots_over(Polynomial.parse("y^2 - x", XY), 1, (s2,))
    assert len(rs) == 2
    assert abs(to_float(rs[1]) - 2**0.25) < 1e-9
    # (y^2-2)*(x^2-2) vanishes identically over x = sqrt(2)
    assert real_roots_over(Polynomial.parse("(y^2-2)*(x^2-2)", XY), 1, (s2,)) is None


def _rand_poly(rng):
    deg = rng.randint(1, 7)
    cs = [rng.randint(-6, 6) for _ in range(deg + 1)]
    if cs[-1] == 0:
        cs[-1] = 1
    if rng.random() < 0.3:
        # force rational roots and multiplicities
        return " * ".join(f"({rng.randint(1, 4)}*x - {rng.randint(-5, 5)})^{rng.randint(1, 2)}" for _ in range(rng.randint(1, 3)))
    return " + ".join(f"({c})*x^{i}" for i, c in enumerate(cs))


def test_isolation_against_oracles():
    rng = random.Random(3)
    x = sympy.Symbol("x")
    for _ in range(150):
        text = _rand_poly(rng)
        p = P(text)
        if p.is_constant():
            continue
        rs = isolate_roots(p)
        assert len(rs) == sturm_count_oracle(p)
        ref = sorted(set(sympy.real_roots(sympy.sympify(text.replace("^", "**")), x)))
        assert len(rs) == len(ref)
        for r, e in zip(rs, ref):
            if isinstance(r, AlgebraicNumber):
                assert r.lo < float(e) < r.hi
                assert sign_at(p, r) == 0
            else:
                assert r == sympy.Rational(e)
        # ascending and disjoint
        for a, b in zip(rs, rs[1:]):
            assert compare_roots(a, b) == -1


def test_json_round_trip():
    r = isolate_roots(P("x^3-2"))[0]
    back = AlgebraicNumber.from_dict(r.to_dict(), X)
    assert compare_roots(r, back) == 0
