"""Ranks and rayless tree-decompositions are two views of one thing.

A peeling witness unfolds into a star-shaped decomposition: the peeled
set becomes the central part, each component's decomposition hangs off
it with every part widened by the peeled set.  Conversely a rayless
decomposition into ideal parts bounds the rank by the finite-sets rank
of its decomposition tree, and the minimum over decompositions attains
the rank exactly.
"""

import json

from graphrank.decompositions import (
    decomposition_to_rank, rank_to_decomposition, verify_decomposition,
)
from graphrank.fixtures import fixture
from graphrank.ideals import finite_sets, normally_spanned
from graphrank.ranks import normal_rank, schmidt_rank
from graphrank.truncation import truncate

# The topped tree: rank 1, so a star decomposition with the branching
# tree as the central part and one part per top.
e = fixture("withtops_all")
r = normal_rank(e)
td = rank_to_decomposition(e, r.witness, normally_spanned(e))
print("topped tree decomposition, tree rank:", td.tree_rank())

inst = td.instantiate(truncate(e, 3, 2))
for node in inst.nodes:
    part = sorted(v.render() for v in inst.parts[node])
    print(f"  part {node}: {part if len(part) <= 4 else part[:4] + ['...']}")

rep = verify_decomposition(e, td)
print("axioms (T1)-(T3) over the sweep:", "pass" if rep.passed() else rep.failures)

# The round trip is exact.
bound, induced = decomposition_to_rank(e, td, normally_spanned(e))
print("rank from the decomposition:", bound, "== rank:", r.alpha == bound)

# The two-level star of stars does the same one level deeper.
sos = fixture("star_of_stars")
r2 = schmidt_rank(sos)
td2 = rank_to_decomposition(sos, r2.witness, finite_sets())
print("\nstar of stars: rank", r2.alpha, "tree rank", td2.tree_rank())
print(json.dumps(td2.to_json()["witness"], indent=1))
