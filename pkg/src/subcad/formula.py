"""Quantifier-free Tarski formulae: parsing, printing and evaluation on cells.

Polynomial syntax uses integer or rational coefficients, ``^`` for powers
and optional ``*``.  Formulae combine atoms ``p REL q`` with ``/\\``,
``\\/`` and ``~``.  A problem file looks like::

    vars: x, y
    ec: x^2+y^2-1
    phi: x^2+y^2-1 = 0 /\\ x < 0

Variables are listed in ascending order, so the last one is projected
first.  Several ``phi:`` lines form a list for truth-table invariance; each
may carry its own constraint after a semicolon, ``phi: ... ; ec= f``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .polynomial import Polynomial, PolynomialError, VarOrder

__all__ = [
    "FormulaSyntaxError",
    "Atom",
    "And",
    "Or",
    "Not",
    "Formula",
    "Problem",
    "parse_polynomial",
    "parse_formula",
    "parse",
    "parse_problem",
    "load_problem",
    "evaluate",
    "evaluate_on_cell",
]

RELATIONS = ("=", "!=", "<", "<=", ">", ">=")


class FormulaSyntaxError(ValueError):
    """Syntax error with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>/\\|\\/|<=|>=|!=|==|[-+*/^()=<>~])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int = 1, col0: int = 1) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            t = m.group()
            toks.append(_Tok(kind, "=" if t == "==" else t, col0 + pos))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


def _segment(word: str, names: Sequence[str]) -> Optional[List[str]]:
    """Split juxtaposed variables such as ``xy`` into declared names."""
    if not word:
        return []
    for v in sorted(names, key=len, reverse=True):
        if word.startswith(v):
            rest = _segment(word[len(v):], names)
            if rest is not None:
                return [v] + rest
    return None


class _Parser:
    def __init__(self, text: str, order: VarOrder, line: int = 1, col0: int = 1):
        toks = []
        for t in _tokenize(text, line, col0):
            parts = None
            if t.kind == "name" and t.text not in order.names:
                parts = _segment(t.text, order.names)
            if parts:
                off = 0
                for v in parts:
                    toks.append(_Tok("name", v, t.col + off))
                    off += len(v)
            else:
                toks.append(t)
        self.toks = toks
        self.order = order
        self.line = line
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return FormulaSyntaxError(f"{msg}, found {found}", self.line, tok.col)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.eat(text):
            raise self.error(f"expected {text!r}")

    # polynomial grammar ------------------------------------------------

    def poly(self) -> Polynomial:
        if self.tok.text in ("+", "-") and self.tok.kind == "op":
            neg = self.tok.text == "-"
            self.i += 1
            p = self.term()
            if neg:
                p = -p
        else:
            p = self.term()
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            neg = self.tok.text == "-"
            self.i += 1
            q = self.term()
            p = p - q if neg else p + q
        return p

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> Polynomial:
        p = self.power()
        while True:
            if self.eat("*"):
                p = p * self.power()
            elif self.tok.kind == "op" and self.tok.text == "/":
                self.i += 1
                t = self.tok
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise self.error("division only by a nonzero number", t)
                p = p * (1 / Fraction(d.constant_value()))
            elif self._starts_factor():
                p = p * self.power()
            else:
                return p

    def power(self) -> Polynomial:
        base = self.factor()
        if self.eat("^"):
            t = self.tok
            if t.kind != "num" or "." in t.text:
                raise self.error("expected integer exponent")
            self.i += 1
            base = base ** int(t.text)
        return base

    def factor(self) -> Polynomial:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Polynomial.constant(self.order, Fraction(t.text))
        if t.kind == "name":
            self.i += 1
            if t.text in self.order.names:
                return Polynomial.variable(self.order, t.text)
            raise FormulaSyntaxError(
                f"unknown variable {t.text!r}; declared order is {', '.join(self.order.names)}",
                self.line,
                t.col,
            )
        if self.eat("("):
            p = self.poly()
            self.expect(")")
            return p
        if t.kind == "op" and t.text == "-":
            self.i += 1
            return -self.power()
        raise self.error("expected a term")

    # formula grammar ---------------------------------------------------

    def disj(self):
        args = [self.conj()]
        while self.eat("\\/"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self):
        args = [self.neg()]
        while self.eat("/\\"):
            args.append(self.neg())
        return args[0] if len(args) == 1 else And(tuple(args))

    def neg(self):
        if self.eat("~"):
            return Not(self.neg())
        if self.tok.kind == "op" and self.tok.text == "(":
            start = self.i
            try:
                return self.atom()
            except FormulaSyntaxError as e_atom:
                far_atom = self.i
                self.i = start + 1
                try:
                    f = self.disj()
                    self.expect(")")
                    return f
                except FormulaSyntaxError as e_sub:
                    raise (e_atom if far_atom > self.i else e_sub) from None
        return self.atom()

    def atom(self) -> "Atom":
        lhs = self.poly()
        t = self.tok
        if t.kind != "op" or t.text not in RELATIONS:
            raise self.error("expected a relation")
        self.i += 1
        rhs = self.poly()
        return Atom(lhs - rhs, t.text)


def parse_polynomial(text: str, order: VarOrder) -> Polynomial:
    """Parse polynomial text such as ``x^2+y^2-1`` or ``1/2 x y - 3``."""
    p = _Parser(text, order)
    out = p.poly()
    if p.tok.kind != "end":
        raise p.error("unexpected trailing input")
    return out


# ---------------------------------------------------------------------------
# formula trees


@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def __str__(self):
        return f"{self.poly} {self.rel} 0"


@dataclass(frozen=True)
class And:
    args: Tuple

    def __str__(self):
        return " /\\ ".join(_wrap(a, And) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: Tuple

    def __str__(self):
        return " \\/ ".join(_wrap(a, Or) for a in self.args)


@dataclass(frozen=True)
class Not:
    arg: object

    def __str__(self):
        return "~" + (f"({self.arg})" if not isinstance(self.arg, Not) else str(self.arg))


def _wrap(f, parent) -> str:
    if isinstance(f, (Atom, Not)) or isinstance(f, parent):
        s = str(f)
        return f"({s})" if isinstance(f, parent) else s
    return f"({f})"


@dataclass
class Formula:
    """A parsed formula plus its designated equational constraint, if any."""

    tree: object
    order: VarOrder
    ec: Optional[Polynomial] = None

    def atoms(self) -> List[Atom]:
        out: List[Atom] = []

        def walk(f):
            if isinstance(f, Atom):
                out.append(f)
            elif isinstance(f, Not):
                walk(f.arg)
            else:
                for a in f.args:
                    walk(a)

        walk(self.tree)
        return out

    def polynomials(self) -> List[Polynomial]:
        """Distinct nonconstant atom polynomials, up to a constant factor."""
        seen = []
        for a in self.atoms():
            if a.poly.is_constant():
                continue
            p = a.poly.primitive()
            if p not in seen:
                seen.append(p)
        return seen

    def __str__(self):
        return str(self.tree)


def _equational_atoms(f) -> List[Atom]:
    if isinstance(f, Atom):
        return [f] if f.rel == "=" and not f.poly.is_constant() else []
    if isinstance(f, And):
        out = []
        for a in f.args:
            out.extend(_equational_atoms(a))
        return out
    return []


def detect_ec(tree) -> Optional[Polynomial]:
    """Explicit EC of a conjunction, or the implicit product EC of a disjunction.

    Returns ``None`` unless every branch carries exactly one equation, so no
    choice between competing constraints is ever made here.
    """
    branches = tree.args if isinstance(tree, Or) else (tree,)
    factors = []
    for b in branches:
        eqs = _equational_atoms(b)
        if len(eqs) != 1:
            return None
        factors.append(eqs[0].poly.primitive())
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def parse_formula(text: str, order: VarOrder, line: int = 1, col0: int = 1):
    p = _Parser(text, order, line, col0)
    tree = p.disj()
    if p.tok.kind != "end":
        raise p.error("unexpected trailing input")
    return tree


def parse(text: str, order: Optional[VarOrder] = None, ec: Union[str, Polynomial, None] = None) -> Formula:
    """Parse a formula.  Without an explicit ``order`` the variables are
    taken in order of first appearance.

    >>> f = parse("x^2+y^2-1=0 /\\\\ x<0", VarOrder.of("x,y"), ec="auto")
    >>> print(f.ec)
    x^2 + y^2 - 1
    """
    if order is None:
        names = []
        for t in _tokenize(text):
            if t.kind == "name" and t.text not in names:
                names.append(t.text)
        order = VarOrder.of(names)
    tree = parse_formula(text, order)
    return Formula(tree, order, _resolve_ec(ec, tree, order))


def _resolve_ec(ec, tree, order, line=1, col0=1) -> Optional[Polynomial]:
    if ec is None or isinstance(ec, Polynomial):
        return ec
    ec = ec.strip()
    if ec == "auto":
        found = detect_ec(tree)
        if found is None:
            raise FormulaSyntaxError("ec: auto found no unambiguous equational constraint", line, col0)
        return found
    p = _Parser(ec, order, line, col0)
    out = p.poly()
    if p.tok.kind != "end":
        raise p.error("unexpected trailing input")
    return out


@dataclass
class Problem:
    """Contents of a problem file."""

    order: VarOrder
    formulas: List[Formula]
    ec: Optional[Polynomial] = None
    meta: Dict[str, str] = field(default_factory=dict)

    @property
    def formula(self) -> Formula:
        return self.formulas[0]

    def polynomials(self) -> List[Polynomial]:
        out: List[Polynomial] = []
        for f in self.formulas:
            for p in f.polynomials():
                if p not in out:
                    out.append(p)
        return out

    def __str__(self):
        lines = [f"vars: {', '.join(self.order.names)}"]
        if self.ec is not None:
            lines.append(f"ec: {self.ec}")
        for f in self.formulas:
            s = f"phi: {f}"
            if len(self.formulas) > 1 and f.ec is not None:
                s += f" ; ec= {f.ec}"
            lines.append(s)
        return "\n".join(lines) + "\n"


def parse_problem(text: str) -> Problem:
    order = None
    ec_text = None
    ec_pos = (1, 1)
    phis: List[Tuple[int, int, str, Optional[str], int]] = []
    meta = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0]
        if not s.strip():
            continue
        key, sep, rest = s.partition(":")
        if not sep:
            raise FormulaSyntaxError("expected 'key: value'", lineno, 1)
        key = key.strip()
        col = len(key) + 2 + (len(rest) - len(rest.lstrip()))
        if key == "vars":
            try:
                order = VarOrder.of(rest)
            except PolynomialError as e:
                raise FormulaSyntaxError(str(e), lineno, col) from None
        elif key == "ec":
            ec_text, ec_pos = rest, (lineno, col)
        elif key == "phi":
            body, semi, ann = rest.partition(";")
            phi_ec = None
            ec_col = 0
            if semi:
                a = ann.strip()
                if not a.startswith("ec="):
                    raise FormulaSyntaxError("expected 'ec=' annotation after ';'", lineno, col + len(body) + 1)
                phi_ec = a[3:]
                ec_col = col + len(body) + 1 + ann.index("ec=") + 3
            phis.append((lineno, col, body, phi_ec, ec_col))
        else:
            meta[key] = rest.strip()
    if order is None:
        raise FormulaSyntaxError("missing 'vars:' header", 1, 1)
    if not phis:
        raise FormulaSyntaxError("no 'phi:' line", 1, 1)
    formulas = []
    for lineno, col, body, phi_ec, ec_col in phis:
        lead = len(body) - len(body.lstrip())
        tree = parse_formula(body.strip(), order, lineno, col + lead)
        formulas.append(Formula(tree, order, _resolve_ec(phi_ec, tree, order, lineno, ec_col)))
    ec = None
    if ec_text is not None:
        if len(formulas) == 1:
            ec = _resolve_ec(ec_text, formulas[0].tree, order, *ec_pos)
            formulas[0].ec = ec
        else:
            if ec_text.strip() == "auto":
                for k, f in enumerate(formulas):
                    if f.ec is None:
                        f.ec = _resolve_ec("auto", f.tree, order, phis[k][0], phis[k][1])
            else:
                ec = _resolve_ec(ec_text, formulas[0].tree, order, *ec_pos)
    return Problem(order, formulas, ec, meta)


def load_problem(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------------------
# evaluation


def _holds(sign: int, rel: str) -> bool:
    return {
        "=": sign == 0,
        "!=": sign != 0,
        "<": sign < 0,
        "<=": sign <= 0,
        ">": sign > 0,
        ">=": sign >= 0,
    }[rel]


def evaluate(tree, sign_of) -> bool:
    """Evaluate ``tree`` given a callable mapping a polynomial to its sign."""
    if isinstance(tree, Atom):
        return _holds(sign_of(tree.poly), tree.rel)
    if isinstance(tree, Not):
        return not evaluate(tree.arg, sign_of)
    if isinstance(tree, And):
        return all(evaluate(a, sign_of) for a in tree.args)
    if isinstance(tree, Or):
        return any(evaluate(a, sign_of) for a in tree.args)
    raise TypeError(f"not a formula node: {tree!r}")


def evaluate_on_cell(phi: Formula, cell) -> bool:
    """Exact truth of ``phi`` at the sample point of ``cell``."""
    from .roots import sign_at_point

    if len(cell.sample) != len(phi.order):
        raise ValueError("cell dimension does not match the formula's variable order")
    cache: Dict[Polynomial, int] = {}

    def sign_of(p):
        if p not in cache:
            cache[p] = sign_at_point(p, cell.sample)
        return cache[p]

    return evaluate(phi.tree, sign_of)
