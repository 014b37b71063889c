from hypothesis import strategies as st

from ternary_betti.enumeration import edge_slots, graph_from_edge_mask


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    slots = edge_slots(n)
    mask = draw(st.integers(0, (1 << len(slots)) - 1))
    return graph_from_edge_mask(n, mask, slots)
