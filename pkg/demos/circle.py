"""The unit circle and the line x = 0, under both variable orderings.

Run with ``python3 demos/circle.py``.  Writes ``circle_variety.svg``
next to this script.
"""

from pathlib import Path

from subcad import VarOrder, complete_cad, layered_subcad, layered_variety_subcad, parse, variety_subcad
from subcad.plot import plot2d
from subcad.verify import run_invariant_suite

for names in ("x, y", "y, x"):
    order = VarOrder.of(names)
    phi = parse("x^2+y^2-1=0 /\\ x<0", order, ec="auto")
    print(f"order {names}")
    full = complete_cad(phi)
    print(f"  complete CAD: {len(full)} cells")
    var = variety_subcad(phi)
    print(f"  variety sub-CAD: {len(var)} cells, {var.evaluate()[0]} satisfy phi")
    lv = layered_variety_subcad(phi, 1)
    print(f"  1-layered variety sub-CAD: {len(lv)} cells")
    open_ = layered_subcad(parse("x^2+y^2-1<0 /\\ x<0", order), 1)
    print(f"  1-layered sub-CAD of the open problem: {len(open_)} cells, dims {open_.dims()}")
    for rep in run_invariant_suite(var):
        print("   ", rep.line())

phi = parse("x^2+y^2-1=0 /\\ x<0", VarOrder.of("x, y"), ec="auto")
sub = variety_subcad(phi)
sub.evaluate()
out = Path(__file__).with_name("circle_variety.svg")
out.write_text(plot2d(sub, window=(-2, 2, -2, 2)), encoding="utf-8")
print(f"wrote {out}")
