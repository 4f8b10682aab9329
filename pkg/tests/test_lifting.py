from fractions import Fraction

import pytest

from subcad.lifting import (
    Cell,
    NotWellOriented,
    base_phase,
    cell_from_dict,
    check_nullified,
    generate_stack,
    lift_full,
    root_cell,
)
from subcad.polynomial import Polynomial, VarOrder
from subcad.projection import projection_phase
from subcad.roots import AlgebraicNumber, compare_roots

XY = VarOrder.of("x, y")
YX = VarOrder.of("y, x")
X = VarOrder.of("x")


def P(s, order=XY):
    return Polynomial.parse(s, order)


def test_stack_over_sector():
    c = Cell((3,), (Fraction(0),))
    st = generate_stack([P("x^2+y^2-1")], c)
    assert len(st) == 5
    assert [d.sample[1] for d in st.sectors] == [-2, 0, 2]
    assert [d.sample[1] for d in st.sections] == [-1, 1]
    assert [d.index for d in st] == [(3, k) for k in range(1, 6)]


def test_stack_over_tangent_point():
    st = generate_stack([P("x^2+y^2-1")], Cell((4,), (Fraction(1),)))
    assert len(st) == 3 and st.sections[0].sample[1] == 0


def test_stack_without_roots():
    st = generate_stack([P("x^2+y^2-1")], Cell((5,), (Fraction(2),)))
    assert len(st) == 1 and st[0].index == (5, 1)


def test_base_phase_examples():
    assert len(base_phase([P("x-1", X), P("x+1", X), P("x", X)])) == 7
    assert len(base_phase([])) == 1
    cells = base_phase([P("x^2-2", X)])
    assert len(cells) == 5
    assert all(isinstance(c.sample[0], AlgebraicNumber) for c in cells[1::2])


def test_lift_full_counts():
    A = [P("x^2+y^2-1"), P("x")]
    assert len(lift_full(projection_phase(A, XY))) == 23
    B = [P("x^2+y^2-1", YX), P("x", YX)]
    assert len(lift_full(projection_phase(B, YX))) == 19
    assert len(lift_full(projection_phase([P("x", X)], X))) == 3


def test_cells_sorted_and_dimensions():
    cells = lift_full(projection_phase([P("x^2+y^2-1"), P("x")], XY))
    assert [c.index for c in cells] == sorted(c.index for c in cells)
    dims = {}
    for c in cells:
        dims[c.dimension] = dims.get(c.dimension, 0) + 1
    assert dims == {2: 8, 1: 11, 0: 4}


def test_signs_on_cells():
    cells = lift_full(projection_phase([P("x^2+y^2-1"), P("x")], XY))
    f = P("x^2+y^2-1")
    inside = [c for c in cells if c.dimension == 2 and c.sign(f) < 0]
    assert len(inside) == 2
    on = [c for c in cells if c.sign(f) == 0]
    assert len(on) == 8


def test_check_nullified_examples():
    c = Cell((2,), (Fraction(0),))
    assert check_nullified(P("x*y"), c)
    assert not check_nullified(P("x*y+1"), c)
    assert check_nullified(P("x*y+x"), c)


def test_nullification_fails_on_positive_dimension():
    xyz = VarOrder.of("x, y, z")
    c = Cell((3, 1), (Fraction(1), Fraction(0)))
    c.base = Cell((3,), (Fraction(1),))
    with pytest.raises(NotWellOriented) as e:
        generate_stack([Polynomial.parse("y*z", xyz)], c)
    assert "y*z" in str(e.value).replace(" ", "") or "z*y" in str(e.value).replace(" ", "")
    st = generate_stack([Polynomial.parse("y*z", xyz)], c, nullification="include-stack")
    assert len(st) == 1 and st.nullified


def test_cell_json_round_trip():
    cells = base_phase([P("x^2-2", X)])
    c = cells[1]
    d = c.to_dict([P("x^2-2", X)])
    assert d["dim"] == 0 and d["signs"] == {"x^2 - 2": 0}
    back = cell_from_dict(d, X)
    assert back.index == c.index
    assert compare_roots(back.sample[0], c.sample[0]) == 0


def test_root_cell():
    r = root_cell()
    assert r.level == 0 and r.dimension == 0 and r.index == ()
