"""Finite presentations of infinite graphs.

A small expression language presents rays, combs, stars, branching
trees, topped trees, complete graphs and combinations thereof.  Every
presentation truncates to a concrete finite induced subgraph for
desk-scale verification, with symbolic index sets instantiated by a
handful of representative tokens.
"""

from graphrank.expressions import vertices_card
from graphrank.fixtures import FIXTURES
from graphrank.parser import parse
from graphrank.resolve import adjacency
from graphrank.addresses import parse_address
from graphrank.truncation import to_dot, truncate

print("the fixture catalog:")
for name, text in FIXTURES.items():
    e = parse(text)
    t = truncate(e, 3, 2)
    print(f"  {name:18s} |V|={vertices_card(e)!s:8s} "
          f"truncation(3,2): {len(t.vertices)} vertices, {len(t.edges)} edges")

# The uncountably branching tree with tops: every branch carries a top
# joined to its whole ray.  Truncations instantiate one top per retained
# branch.
w = parse("with_tops(tree(aleph1), all, whole_ray)")
t = truncate(w, 3, 2)
print("\ntopped tree at d=3, w=2:")
for v in t.vertices:
    print("  ", v.render())

# The adjacency oracle answers symbolically: a top's neighbourhood is the
# prefix ray of its branch.
nd = adjacency(w, parse_address("top.b1"))
print("\nneighbourhood of top.b1:", [f.render() for f in nd.families])

# Truncations export to DOT for a quick look.
print("\n" + to_dot(truncate(parse("comb(1)"), 4, 1)))
