"""Complexity bounds at the reference parameters, as double logarithms."""

from subcad.complexity import FIGURE7_CURVES, PAPER_FIGURE7_PARAMS, bound_value, figure7_table, pEA_degree_forms

p = PAPER_FIGURE7_PARAMS
print("P_E(A) size bound:", bound_value("pEA_size", p))
print("P_E(A) degree forms:", pEA_degree_forms(p))
rows, notes = figure7_table(p)
print("n   " + "  ".join(f"{c:>22}" for c in FIGURE7_CURVES))
for r in rows:
    print(f"{r['n']:<4}" + "  ".join(f"{r[c]:>22.3f}" for c in FIGURE7_CURVES))
for note in notes:
    print(note)
