"""The spanning-tree constructions.

Normal spanning trees where they exist; end-faithful spanning trees for
every graph with a normal rank, by induction on that rank; rayless
spanning trees exactly when every end is dominated.  Every output is a
finite rule system checked exactly on truncations.
"""

from graphrank.ends import RaySchema, all_ends, reflects_check
from graphrank.fixtures import fixture
from graphrank.parser import parse
from graphrank.spanning import (
    end_faithful_spanning_tree, is_rayless, normal_spanning_tree,
    rayless_spanning_tree, reroute_with_ray,
)
from graphrank.trees import instantiate
from graphrank.truncation import truncate
from graphrank.verify import verify_tree

# Normal spanning trees: the countable complete graph carries a spanning
# ray; a topped branching tree carries none at all.
print("complete(aleph0):", normal_spanning_tree(parse("complete(aleph0)")).tree.name)
print("withtops:        ", normal_spanning_tree(fixture("withtops_all")).reason)

# The end-faithful tree of the topped tree keeps the branching tree and
# pins every top at the root, its least ray vertex.
e = fixture("withtops_all")
efst = end_faithful_spanning_tree(e)
inst = instantiate(efst, truncate(e, 3, 2))
print("\nend-faithful tree of the topped tree:")
for v, p in sorted(inst.parent.items(), key=lambda vp: vp[0].sort_key()):
    print(f"  {v.render():14s} -> {p.render()}")
print("reflects all ends:", reflects_check(e, efst, all_ends(e)).verdict)

# The doubly nested fixture drives the recursion two levels deep.
g = fixture("nested_tops")
tree = end_faithful_spanning_tree(g)
print("\nnested fixture rules:", [r.kind for r in tree.rules])
print("sweep:", "pass" if verify_tree(g, tree, 4, 3, psi=all_ends(g)).passed()
      else "FAIL")

# Rayless spanning trees: the ray has an undominated end and gets none;
# the topped tree absorbs every branch into its top's fan.
print("\nrayless on the ray:      ", rayless_spanning_tree(parse("ray")).status)
got = rayless_spanning_tree(e)
print("rayless on the topped tree:", got.status, "| rayless:",
      is_rayless(got.tree))
inst = instantiate(got.tree, truncate(e, 3, 2))
deep = [v for v in inst.vertices if v.render() == "root/b1/b1"][0]
print("  a depth-2 node hangs at:", inst.parent[deep].render())

# Rerouting: the spanning ray of the complete graph rebuilt around the
# even-indexed ray, all other ends untouched.
k = parse("complete(aleph0)")
old = normal_spanning_tree(k).tree
rep = reroute_with_ray(k, old, all_ends(k), RaySchema("kray", stride=2))
print("\nreroute around the even ray; first difference edges:",
      rep.delta_edges_sample[:4])
