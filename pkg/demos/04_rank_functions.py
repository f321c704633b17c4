"""The three ordinal rank functions.

Peel a set from the ideal; every component left behind must already
carry a smaller rank.  With finite sets this ranks exactly the rayless
graphs; with sets below a cardinal it detects branching-tree minors;
with the normally spanned sets of the host it carves out the graphs
admitting the spanning-tree constructions of demo 06.
"""

import json

from graphrank.cardinality import ALEPH1
from graphrank.fixtures import fixture, fixture_names
from graphrank.parser import parse
from graphrank.ranks import (
    RaylessInputError, kappa_rank, normal_rank, schmidt_rank,
)

print(f"{'fixture':18s} {'normal':>10s} {'aleph0':>10s} {'aleph1':>10s}")
for name in fixture_names():
    e = fixture(name)
    cells = []
    for fn in (normal_rank, schmidt_rank, lambda x: kappa_rank(x, ALEPH1)):
        try:
            r = fn(e)
        except RaylessInputError:
            cells.append("(ray)")
            continue
        if r.is_ranked():
            cells.append(str(r.alpha))
        elif r.status == "NoRank":
            cells.append("none")
        else:
            cells.append("?")
    print(f"{name:18s} {cells[0]:>10s} {cells[1]:>10s} {cells[2]:>10s}")

# Witnesses are first-class: the topped tree peels its branching tree and
# leaves isolated tops.
r = normal_rank(fixture("withtops_all"))
print("\ntopped tree witness:", json.dumps(r.witness.to_json()))

# Negative verdicts carry certificates.
r = normal_rank(parse("complete(aleph1)"))
print("\nuncountable complete graph:", r.certificate.kind)
print("  ", r.certificate.detail)
r = kappa_rank(fixture("withtops_all"), ALEPH1)
print("topped tree vs aleph1:", r.certificate.kind)
print("  ", r.certificate.detail)

# The doubly nested fixture needs two peels.
r = normal_rank(fixture("nested_tops"))
print("\nnested fixture rank:", r.alpha)
print(json.dumps(r.witness.to_json(), indent=1))
