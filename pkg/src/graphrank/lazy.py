"""Lazy bounded expansion of a presented graph.

Instead of a depth/width truncation, grow the graph vertex by vertex
from a root through the adjacency oracle, sampling each symbolic
neighbour family at a bounded width, until a vertex budget is spent.
The result quacks like a finite truncation, so the budgeted searches
(star-comb) run on it directly.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .addresses import (
    Address, CenterStep, CopyStep, KVertStep, LeafStep, NodeStep, RayStep,
    RootStep, TopStep, diagonal,
)
from .descriptors import (
    AllOf, BranchPrefix, CentersOf, ChildrenOf, CoVerticesOf, Descriptor,
    LeavesOf, Progression, SpineOf, TopsThrough,
)
from .expressions import GraphExpr
from .resolve import _EvenBranch, adjacency, adjacent, canonical_root, member


def sample_family(e: GraphExpr, desc: Descriptor, w: int) -> List[Address]:
    """Finitely many representative members of a symbolic family."""
    region = getattr(desc, "region", ())
    prefix = _region_prefix(region, w)
    if prefix is None:
        return []
    if isinstance(desc, ChildrenOf):
        base = (RootStep(),) + tuple(NodeStep(i) for i in desc.node_path)
        kids = [f"b{i}" for i in range(1, w + 1)]
        if desc.node_path and isinstance(desc.node_path[0], int):
            kids = list(range(w))
        return [Address(prefix + base + (NodeStep(k),)) for k in kids]
    if isinstance(desc, TopsThrough):
        path = diagonal(desc.node_path or ("b1",), max(1, len(desc.node_path) or 1))
        return [Address(prefix + (TopStep(path),))]
    if isinstance(desc, LeavesOf):
        return [Address(prefix + (LeafStep(i),)) for i in range(w)]
    if isinstance(desc, CentersOf):
        return [Address(prefix + (CopyStep(i), CenterStep())) for i in range(w)] \
            + [Address(prefix + (CenterStep(),))]
    if isinstance(desc, CoVerticesOf):
        if isinstance(desc.ix, int):
            return [Address(prefix + (KVertStep(i),))
                    for i in range(desc.ix + w + 1) if i != desc.ix]
        return [Address(prefix + (KVertStep(f"b{i}"),)) for i in range(1, w + 1)]
    if isinstance(desc, (BranchPrefix, _EvenBranch)):
        out = [Address(prefix + (RootStep(),))]
        for k in range(1, w + 2):
            path = diagonal(desc.path, k)
            out.append(Address(prefix + (RootStep(),)
                               + tuple(NodeStep(i) for i in path)))
        if isinstance(desc, _EvenBranch):
            out = [a for a in out if (len(a.steps) - len(prefix) - 1) % 2 == 0]
        return out
    if isinstance(desc, SpineOf):
        return [Address(prefix + (RayStep(i),)) for i in range(w)]
    if isinstance(desc, Progression):
        return [Address(prefix + (RayStep(desc.start + i * desc.step),))
                for i in range(w)]
    if isinstance(desc, AllOf):
        return [Address(prefix + (RayStep(i),)) for i in range(w)]
    return []


def _region_prefix(region, w: int):
    """Address prefix a region contributes; None when unsampled."""
    steps = []
    for sel in region:
        if sel in ("left", "right"):
            from .addresses import SideStep
            steps.append(SideStep(sel))
        elif sel == "base":
            continue
        else:
            return None
    return tuple(steps)


class LazyExpansion:
    """A connected finite piece of the presented graph grown from a root."""

    def __init__(self, e: GraphExpr, root: Optional[Address] = None,
                 budget: int = 50, w: int = 3):
        self.expr = e
        root = root or canonical_root(e)
        seen = [root]
        seen_set = {root}
        frontier = [root]
        while frontier and len(seen) < budget:
            v = frontier.pop(0)
            nd = adjacency(e, v)
            nbrs = list(nd.finite)
            for fam in nd.families:
                nbrs.extend(sample_family(e, fam, w))
            nbrs = [u for u in nbrs if u != v]
            nbrs.sort(key=lambda a: a.sort_key())
            for u in nbrs:
                if u not in seen_set and len(seen) < budget:
                    from .resolve import resolves
                    if not resolves(e, u):
                        continue
                    seen_set.add(u)
                    seen.append(u)
                    frontier.append(u)
        self.vertices = tuple(sorted(seen_set, key=lambda a: a.sort_key()))
        self.adj: Dict[Address, List[Address]] = {v: [] for v in self.vertices}
        vs = list(self.vertices)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if adjacent(e, vs[i], vs[j]):
                    self.adj[vs[i]].append(vs[j])
                    self.adj[vs[j]].append(vs[i])
        for v in self.adj:
            self.adj[v].sort(key=lambda a: a.sort_key())

    def has_vertex(self, v: Address) -> bool:
        return v in self.adj

    def components(self, removed=()):
        removed = set(removed)
        seen = set(removed)
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = []
            stack = [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            out.append(sorted(comp, key=lambda a: a.sort_key()))
        out.sort(key=lambda c: c[0].sort_key())
        return out
