import random

import pytest

from subcad.formula import (
    FormulaSyntaxError,
    evaluate_on_cell,
    parse,
    parse_problem,
)
from subcad.lifting import Cell
from subcad.polynomial import Polynomial, VarOrder
from subcad.subcad import complete_cad

XY = VarOrder.of("x, y")


def test_parse_explicit_constraint():
    f = parse("x^2+y^2-1=0 /\\ x<0", XY, ec="auto")
    assert len(f.atoms()) == 2
    assert f.ec == Polynomial.parse("x^2+y^2-1", XY)


def test_parse_implicit_product_constraint():
    f = parse("(x^2+y^2-1=0 /\\ x>0) \\/ (y-x=0 /\\ y<0)", XY, ec="auto")
    assert f.ec == Polynomial.parse("(x^2+y^2-1)*(y-x)", XY)


def test_syntax_error_column():
    with pytest.raises(FormulaSyntaxError) as e:
        parse("x^2+=1", XY)
    assert e.value.column == 5


def test_unknown_variable():
    with pytest.raises(FormulaSyntaxError):
        parse("z > 0", XY)


def test_ambiguous_auto_constraint():
    with pytest.raises(FormulaSyntaxError):
        parse("x = 0 /\\ y = 0", XY, ec="auto")


def _random_formula(rng, depth=0):
    if depth > 2 or rng.random() < 0.3:
        poly = " + ".join(f"{rng.randint(-3, 3)}*x^{rng.randint(0, 2)}*y^{rng.randint(0, 2)}" for _ in range(2))
        return f"{poly} {rng.choice(['=', '!=', '<', '<=', '>', '>='])} {rng.randint(-2, 2)}"
    op = rng.choice([" /\\ ", " \\/ ", "~"])
    if op == "~":
        return f"~({_random_formula(rng, depth + 1)})"
    return "(" + op.join(_random_formula(rng, depth + 1) for _ in range(rng.randint(2, 3))) + ")"


def test_round_trip_corpus():
    rng = random.Random(1)
    done = 0
    while done < 50:
        text = _random_formula(rng)
        try:
            f = parse(text, XY)
        except FormulaSyntaxError:
            continue  # constant atoms such as 0*x^0 = 1 may be rejected
        g = parse(str(f), XY)
        assert str(g) == str(f)
        assert " ".join(str(g).split()) == " ".join(str(f).split())
        done += 1


def test_de_morgan_on_cells():
    cad = complete_cad([Polynomial.parse("x^2+y^2-1", XY), Polynomial.parse("x", XY)])
    a = "x^2+y^2-1 < 0"
    b = "x > 0"
    lhs = parse(f"~({a} /\\ {b})", XY)
    rhs = parse(f"~({a}) \\/ ~({b})", XY)
    lhs2 = parse(f"~({a} \\/ {b})", XY)
    rhs2 = parse(f"~({a}) /\\ ~({b})", XY)
    for c in cad.cells:
        assert evaluate_on_cell(lhs, c) == evaluate_on_cell(rhs, c)
        assert evaluate_on_cell(lhs2, c) == evaluate_on_cell(rhs2, c)


def test_constraint_conjunct_false_off_variety():
    f = parse("x^2+y^2-1=0 /\\ x<0", XY, ec="auto")
    assert not evaluate_on_cell(f, Cell((1, 1), (-2, 0)))
    assert evaluate_on_cell(f, Cell((2, 2), (-1, 0)))
    with pytest.raises(ValueError):
        evaluate_on_cell(f, Cell((1,), (0,)))


def test_problem_file():
    pr = parse_problem("# comment\nvars: x, y\nec: auto\nphi: x^2 + y^2 - 1 = 0 /\\ x < 0\n")
    assert pr.order.names == ("x", "y") or list(pr.order.names) == ["x", "y"]
    assert pr.formula.ec == Polynomial.parse("x^2+y^2-1", XY)
    text = str(pr)
    assert parse_problem(text).formula.ec == pr.formula.ec
    multi = parse_problem("vars: x, y\nphi: x = 0 /\\ y > 0 ; ec= x\nphi: y = 0 ; ec= y\n")
    assert [f.ec for f in multi.formulas] == [Polynomial.parse("x", XY), Polynomial.parse("y", XY)]


@pytest.mark.parametrize(
    "text",
    ["phi: x > 0\n", "vars: x\nphi: x >\n", "vars: x\nfoo\nphi: x>0\n", "vars: x\n"],
)
def test_problem_file_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_problem(text)
