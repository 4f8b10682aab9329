"""Building a CAD one layer at a time and saving the state between calls."""

from subcad import VarOrder, parse
from subcad.subcad import LayeredState, layered_recursive, layered_subcad

order = VarOrder.of("x, y, z")
phi = parse("x^2+y^2+z^2-1<0 /\\ x*y*z>0", order)

sub, state = layered_recursive(None, phi)
while True:
    print(f"{state.layers} layer(s): {len(sub)} cells, dims {sub.dims()}")
    assert sub.indices() == layered_subcad(phi, state.layers).indices()
    if state.layers == len(order) + 1:
        break
    # round trip through JSON as a separate process would
    state = LayeredState.from_json(state.to_json())
    sub, state = layered_recursive(state)
print("the last call gives the complete CAD")
