import math
from fractions import Fraction

import pytest

from subcad.complexity import (
    BOUND_KINDS,
    FIGURE7_CURVES,
    PAPER_FIGURE7_PARAMS,
    ComplexityParams,
    bound,
    bound_log,
    bound_value,
    figure7_csv,
    figure7_table,
    pEA_degree_forms,
    refinement_bits,
    separation_delta,
)

P = PAPER_FIGURE7_PARAMS


def test_examples():
    assert bound_value("pEA_size", P) == 4
    assert pEA_degree_forms(P) == {"max_form": 18, "final_form": 9}
    assert bound_value("heindel", P) == 3**8 + 3**7 * 8
    assert bound_value("uk_ck", P) == 6**27 * 3**4
    sep = bound_value("root_sep_lower", P)
    assert isinstance(sep, Fraction) and 0 < sep < Fraction(1, 2)


def test_root_sep_is_below_true_expression():
    for d, l in ((2, 1), (3, 2), (5, 7)):
        p = P.replace(d_A=d, l_A=l, d_E=1)
        true = 0.5 * (math.sqrt(math.e) * d**1.5 * l) ** (-d)
        v = bound_value("root_sep_lower", p)
        assert float(v) <= true and float(v) > 0.99 * true


def test_params_validation():
    with pytest.raises(ValueError):
        ComplexityParams.parse("n=2,m_A=1,m_E=2,d_A=1,d_E=1,l_A=1,l_E=1")
    with pytest.raises(ValueError):
        ComplexityParams.parse("n=0,m_A=1,m_E=1,d_A=1,d_E=1,l_A=1,l_E=1")
    with pytest.raises(ValueError):
        ComplexityParams.parse("n=2,m_A=3")
    q = ComplexityParams.parse("n=2, m_A=3, m_E=1, d_A=3, d_E=2, l_A=2, l_E=2")
    assert q == P
    with pytest.raises(ValueError):
        bound("nope", P)


def test_exact_and_analytic_logs_agree():
    for kind in BOUND_KINDS:
        if kind == "root_sep_lower":
            continue
        q = P.replace(n=1)
        v = bound_value(kind, q)
        assert math.log(v) == pytest.approx(bound_log(kind, q), rel=1e-9, abs=1e-9)


def test_chain_consistency():
    for n in range(1, 6):
        q = P.replace(n=n)
        assert bound("n1_collins", q).exact() + bound("final_lift", q).exact() == bound("total_variety_collins", q).exact()
        assert bound("n1_mccallum", q).exact() + bound("final_lift", q).exact() == bound("total_lv_mccallum", q).exact()


@pytest.mark.parametrize("n", range(2, 9))
def test_figure7_ordering(n):
    q = P.replace(n=n)
    logs = [bound_log(k, q) for k in FIGURE7_CURVES]
    assert logs == sorted(logs, reverse=True)


def test_monotone_in_every_parameter():
    kinds = [k for k in BOUND_KINDS if k not in ("root_sep_lower", "pEA_size", "pEA_degree", "pEA_norm")]
    for kind in kinds:
        base = bound_log(kind, P.replace(n=3))
        for field, step in (("n", 4), ("d_A", 4), ("l_A", 3), ("l_E", 3)):
            bigger = P.replace(**{"n": 3, field: step})
            assert bound_log(kind, bigger) >= base - 1e-9


def test_doubling_degree_grows_variety_bound():
    q = P.replace(n=4)
    assert bound_log("total_variety_collins", q.replace(d_A=6)) > bound_log("total_variety_collins", q)


def test_separation_and_bits():
    d = separation_delta(P)
    h = refinement_bits(P)
    assert Fraction(1, 2**h) <= d < Fraction(1, 2 ** (h - 1))


def test_figure7_table_and_csv():
    rows, notes = figure7_table(P, range(2, 9))
    assert [r["n"] for r in rows] == list(range(2, 9)) and not notes
    text = figure7_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "n," + ",".join(FIGURE7_CURVES)
    assert len(lines) == 8
    tiny = ComplexityParams(n=1, m_A=1, m_E=1, m_AminusE=0, d_A=1, d_E=1, l_A=1, l_E=1)
    rows, notes = figure7_table(tiny, [1])
    assert rows == [] or all(math.isfinite(v) for v in rows[0].values())
