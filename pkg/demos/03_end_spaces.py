"""Ends, closures, domination and the star-comb dichotomy.

An end is a class of rays no finite vertex set can split.  The catalog
expressions have exactly describable end spaces: the ray has one
undominated end, the countable complete graph one dominated end, a
topped branching tree uncountably many ends all dominated by their tops.
"""

import json

from graphrank.descriptors import LeavesOf, LevelSet, Progression, TopsOf
from graphrank.ends import (
    closure_ends, end_space, is_dispersed, star_comb_search,
    validate_star_comb,
)
from graphrank.fixtures import fixture
from graphrank.lazy import LazyExpansion
from graphrank.parser import parse
from graphrank.truncation import truncate

for name in ("ray", "k_aleph0", "withtops_all", "star_of_stars"):
    sp = end_space(fixture(name))
    print(f"{name:15s}", json.dumps(sp.to_json()))

# Closures: which ends stick to a vertex family?
print("\nclosures:")
print("  ray, every 2nd spine vertex ->",
      closure_ends(parse("ray"), Progression((), 0, 2)).to_json())
print("  comb(1), the teeth          ->",
      closure_ends(parse("comb(1)"), LeavesOf(())).to_json())
print("  tree(aleph1), level 3       ->",
      closure_ends(parse("tree(aleph1)"), LevelSet(3, ())).to_json())
print("  one tree level is dispersed:",
      is_dispersed(parse("tree(aleph1)"), LevelSet(3, ())))
print("  the tops never are:         ",
      is_dispersed(fixture("withtops_all"), TopsOf(())))

# The star-comb dichotomy, run with a budget on a finite piece: toward an
# infinite target set one always finds a comb prefix or a star prefix.
print("\nstar-comb search:")
t = truncate(parse("ray"), 20, 1)
got = star_comb_search(t, list(t.vertices), 5)
print(f"  ray      -> {got.kind} with {len(got.teeth)} teeth;"
      f" witness valid: {validate_star_comb(t, list(t.vertices), got) == []}")

t = truncate(parse("star(aleph0)"), 2, 10)
leaves = [v for v in t.vertices if v.render().startswith("leaf")]
got = star_comb_search(t, leaves, 8)
print(f"  star     -> {got.kind} at {got.center.render()}")

# The same search on a lazily grown piece of the complete graph.
g = LazyExpansion(parse("complete(aleph0)"), budget=14, w=12)
got = star_comb_search(g, list(g.vertices), 6)
print(f"  complete -> {got.kind} (lazy expansion, {len(g.vertices)} vertices)")
