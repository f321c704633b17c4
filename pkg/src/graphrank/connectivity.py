"""Structural connectivity verdicts: Yes, No or Unknown.

The verdict is by structural recursion over the closed catalog; a
joined vertex connects its base when every base component concretely
meets the attach set on a representative truncation (sound by
exchangeability of the instantiated families).
"""

from __future__ import annotations

from .cardinality import finite
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, vertices_card,
)

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


def is_connected(e: GraphExpr) -> str:
    if isinstance(e, FiniteGraph):
        return YES if _finite_connected(e) else NO
    if isinstance(e, (Ray, Comb, Star, Tree, WithTops)):
        return YES
    if isinstance(e, Complete):
        return YES
    if isinstance(e, DisjointUnion):
        lc, rc = vertices_card(e.left), vertices_card(e.right)
        if lc == finite(0):
            return is_connected(e.right)
        if rc == finite(0):
            return is_connected(e.left)
        return NO
    if isinstance(e, Copies):
        if vertices_card(e.base) == finite(0):
            return YES
        if e.count.is_finite() and e.count.n == 1:
            return is_connected(e.base)
        return NO
    if isinstance(e, JoinVertex):
        return _join_connected(e)
    if isinstance(e, AddEdge):
        return _add_edge_connected(e)
    if isinstance(e, HangAtTops):
        return is_connected(e.child)
    return UNKNOWN


def _finite_connected(e: FiniteGraph) -> bool:
    if not e.vertices:
        return True
    adj = {v: set() for v in e.vertices}
    for a, b in e.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {e.vertices[0]}
    stack = [e.vertices[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(e.vertices)


def _join_connected(e: JoinVertex) -> str:
    base = is_connected(e.base)
    if base == YES:
        return YES
    if base == UNKNOWN:
        return UNKNOWN
    # the fresh vertex may stitch the base components together: check
    # concretely on a representative truncation
    from .truncation import truncate
    t = truncate(e.base, 3, 3)
    attach = set(t.instantiate(e.attach))
    if not attach:
        return UNKNOWN
    for comp in t.components():
        if not any(v in attach for v in comp):
            return UNKNOWN
    return YES


def _add_edge_connected(e: AddEdge) -> str:
    base = is_connected(e.base)
    if base == YES:
        return YES
    from .components import Unsupported, components_after_deletion
    from .descriptors import ExplicitSet
    regions = components_after_deletion(e.base, ExplicitSet(()))
    if isinstance(regions, Unsupported):
        return UNKNOWN
    singles = [r for r in regions if not r.is_family()]
    if len(regions) == 2 and len(singles) == 2:
        ra = [r for r in regions if r.contains(e.a)]
        rb = [r for r in regions if r.contains(e.b)]
        if ra and rb and ra[0] is not rb[0]:
            return YES
    return NO if base == NO else UNKNOWN
