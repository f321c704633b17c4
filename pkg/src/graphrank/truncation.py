"""Finite truncations of presented graphs.

truncate(e, d, w) keeps ray/spine vertices of index < d and tree nodes
of depth < d, instantiates every symbolic index set by exactly w fresh
representatives (naturals for countable sets, tokens b1..bw for
uncountable ones), keeps whole tooth paths of retained spine vertices,
adds one top per retained maximal branch path, limits complete graphs
to max(d, w) vertices and keeps finite graphs whole.  The result is an
induced subgraph: an edge is present exactly when the expression has
it between the two addressed vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .addresses import (
    Address, CenterStep, CopyStep, KVertStep, LabelStep, LeafStep, NodeStep,
    RayStep, RootStep, SideStep, Step, ToothStep, TopStep, UnderStep,
)
from .cardinality import ALEPH0
from .descriptors import Descriptor
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, ExprError, FiniteGraph,
    GraphExpr, HangAtTops, JoinVertex, Ray, Star, Tree, WithTops,
)
from .resolve import member


@dataclass
class FiniteTruncation:
    expr: GraphExpr
    d: int
    w: int
    vertices: Tuple[Address, ...]
    edges: Tuple[Tuple[Address, Address], ...]
    adj: Dict[Address, List[Address]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.adj:
            self.adj = {v: [] for v in self.vertices}
            for a, b in self.edges:
                self.adj[a].append(b)
                self.adj[b].append(a)
            for v in self.adj:
                self.adj[v].sort(key=lambda x: x.sort_key())

    def has_vertex(self, v: Address) -> bool:
        return v in self.adj

    def instantiate(self, desc: Descriptor) -> List[Address]:
        """Concrete members of a descriptor inside this truncation."""
        return [v for v in self.vertices if member(self.expr, desc, v)]

    def components(self, removed=()) -> List[List[Address]]:
        """Connected components after deleting `removed`, sorted."""
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


def truncate(e: GraphExpr, d: int, w: int) -> FiniteTruncation:
    if d < 1 or w < 1:
        raise ValueError("truncation wants d, w >= 1")
    vertices, edges = _build(e, d, w)
    vertices = sorted(vertices, key=lambda a: a.sort_key())
    edges = sorted(
        (tuple(sorted(pair, key=lambda a: a.sort_key())) for pair in edges),
        key=lambda p: (p[0].sort_key(), p[1].sort_key()),
    )
    return FiniteTruncation(e, d, w, tuple(vertices), tuple(edges))


def _tokens(w: int) -> List[str]:
    return [f"b{i}" for i in range(1, w + 1)]


def _indices(count, d: int, w: int) -> List:
    if count.is_finite():
        return list(range(count.n))
    if count == ALEPH0:
        return list(range(w))
    return _tokens(w)


def _prefix(vertices, edges, step: Step):
    pv = [v.prepend(step) for v in vertices]
    pe = [(a.prepend(step), b.prepend(step)) for a, b in edges]
    return pv, pe


def _build(e: GraphExpr, d: int, w: int):
    if isinstance(e, FiniteGraph):
        vs = [Address((LabelStep(n),)) for n in e.vertices]
        es = [
            (Address((LabelStep(a),)), Address((LabelStep(b),)))
            for a, b in e.edges
        ]
        return vs, es
    if isinstance(e, Ray):
        vs = [Address((RayStep(n),)) for n in range(d)]
        es = [(vs[n], vs[n + 1]) for n in range(d - 1)]
        return vs, es
    if isinstance(e, Comb):
        vs, es = _build(Ray(), d, w)
        for n in range(d):
            prev = Address((RayStep(n),))
            for j in range(1, e.tooth_len + 1):
                t = Address((RayStep(n), ToothStep(j)))
                vs.append(t)
                es.append((prev, t))
                prev = t
        return vs, es
    if isinstance(e, Star):
        center = Address((CenterStep(),))
        vs = [center]
        es = []
        for ix in _indices(e.count, d, w):
            leaf = Address((LeafStep(ix),))
            vs.append(leaf)
            es.append((center, leaf))
        return vs, es
    if isinstance(e, Tree):
        return _build_tree(e, d, w)
    if isinstance(e, WithTops):
        vs, es = _build_tree(e.base, d, w)
        for path in _maximal_paths(e.base, d, w):
            top = Address((TopStep(path),))
            vs.append(top)
            for k in range(d):
                if e.adjacency == "every_2nd" and k % 2 == 1:
                    continue
                node = Address((RootStep(),) + tuple(NodeStep(i) for i in path[:k]))
                es.append((top, node))
        return vs, es
    if isinstance(e, Complete):
        m = max(d, w)
        ixs = _indices(e.count, d, w) if e.count.is_finite() else (
            list(range(m)) if e.count == ALEPH0 else _tokens(m)
        )
        vs = [Address((KVertStep(ix),)) for ix in ixs]
        es = [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]
        return vs, es
    if isinstance(e, DisjointUnion):
        lv, le = _prefix(*_build(e.left, d, w), SideStep("left"))
        rv, re_ = _prefix(*_build(e.right, d, w), SideStep("right"))
        return lv + rv, le + re_
    if isinstance(e, Copies):
        vs, es = [], []
        for ix in _indices(e.count, d, w):
            cv, ce = _prefix(*_build(e.base, d, w), CopyStep(ix))
            vs.extend(cv)
            es.extend(ce)
        return vs, es
    if isinstance(e, JoinVertex):
        vs, es = _build(e.base, d, w)
        new = Address((LabelStep(e.label),))
        es = list(es)
        for v in vs:
            if member(e.base, e.attach, v):
                es.append((new, v))
        return list(vs) + [new], es
    if isinstance(e, AddEdge):
        vs, es = _build(e.base, d, w)
        have = set(vs)
        if e.a in have and e.b in have:
            es = list(es) + [(e.a, e.b)]
        return vs, es
    if isinstance(e, HangAtTops):
        vs, es = _build(e.base, d, w)
        vs, es = list(vs), list(es)
        from .resolve import canonical_root
        root = canonical_root(e.child)
        for v in list(vs):
            if isinstance(v.steps[0], TopStep) and len(v.steps) == 1:
                under = UnderStep(v.steps[0].path)
                cv, ce = _prefix(*_build(e.child, d, w), under)
                vs.extend(cv)
                es.extend(ce)
                es.append((v, root.prepend(under)))
        return vs, es
    raise ExprError(f"unknown expression {type(e).__name__}")


def _build_tree(tree: Tree, d: int, w: int):
    root = Address((RootStep(),))
    vs, es = [root], []
    frontier = [()]
    for _depth in range(1, d):
        nxt = []
        for path in frontier:
            parent = Address((RootStep(),) + tuple(NodeStep(i) for i in path))
            for ix in _indices(tree.count, d, w):
                child_path = path + (ix,)
                child = Address((RootStep(),) + tuple(NodeStep(i) for i in child_path))
                vs.append(child)
                es.append((parent, child))
                nxt.append(child_path)
        frontier = nxt
    return vs, es


def _maximal_paths(tree: Tree, d: int, w: int):
    """Index paths of the depth-(d-1) nodes; the retained branch family."""
    if d < 2:
        return []
    paths = [()]
    for _ in range(d - 1):
        paths = [p + (ix,) for p in paths for ix in _indices(tree.count, d, w)]
    return paths


# -- structure helpers ---------------------------------------------------------


def ball_rank(a: Address) -> Optional[int]:
    """Depth measure for separator balls; None for vertices that never
    enter a ball (tops and everything hung beyond them)."""
    steps = list(a.steps)
    while steps and isinstance(steps[0], (SideStep, CopyStep)):
        steps = steps[1:]
    if not steps:
        return None
    s0 = steps[0]
    if isinstance(s0, (TopStep, UnderStep)):
        return None
    if isinstance(s0, RayStep):
        return s0.n
    if isinstance(s0, RootStep):
        return len(steps) - 1
    if isinstance(s0, KVertStep):
        if isinstance(s0.ix, int):
            return s0.ix
        return int(s0.ix[1:])
    if isinstance(s0, LeafStep):
        return 1
    if isinstance(s0, (CenterStep, LabelStep)):
        return 0
    return None


def hub_vertices(t: FiniteTruncation) -> List[Address]:
    """Cut-style hub vertices: tops and join vertices, at any nesting."""
    out = []
    for v in t.vertices:
        last = v.steps[-1]
        if isinstance(last, TopStep):
            out.append(v)
        elif isinstance(last, LabelStep) and _is_join_label(t.expr, v):
            out.append(v)
    return out


def _is_join_label(e: GraphExpr, v: Address) -> bool:
    steps = list(v.steps)
    expr = e
    while True:
        if isinstance(expr, DisjointUnion) and steps and isinstance(steps[0], SideStep):
            expr = expr.left if steps[0].side == "left" else expr.right
            steps = steps[1:]
            continue
        if isinstance(expr, Copies) and steps and isinstance(steps[0], CopyStep):
            expr = expr.base
            steps = steps[1:]
            continue
        if isinstance(expr, HangAtTops) and steps and isinstance(steps[0], UnderStep):
            expr = expr.child
            steps = steps[1:]
            continue
        if isinstance(expr, JoinVertex):
            if len(steps) == 1 and isinstance(steps[0], LabelStep) and steps[0].name == expr.label:
                return True
            expr = expr.base
            continue
        if isinstance(expr, AddEdge):
            expr = expr.base
            continue
        return False


def separator_family(t: FiniteTruncation) -> List[Tuple[str, List[Address]]]:
    """The catalog separators for end checks: balls of growing radius,
    augmented by the hub vertices whenever the expression has any (hubs
    are the only way to separate the ends living beyond them)."""
    hubs = hub_vertices(t)
    out = []
    max_rank = max((r for v in t.vertices if (r := ball_rank(v)) is not None), default=0)
    for j in range(1, max(2, t.d - 1)):
        if j > max_rank + 1:
            break
        ball = [v for v in t.vertices if (r := ball_rank(v)) is not None and r <= j]
        if hubs:
            out.append((f"ball{j}+hubs",
                        sorted(set(ball + hubs), key=lambda a: a.sort_key())))
        else:
            out.append((f"ball{j}", ball))
    return out


# -- exports --------------------------------------------------------------------


def to_dot(t: FiniteTruncation, tree_edges=None, name: str = "truncation") -> str:
    tree_set = set()
    if tree_edges:
        for a, b in tree_edges:
            tree_set.add(frozenset((a, b)))
    lines = [f"graph {name} {{"]
    for v in t.vertices:
        lines.append(f'  "{v.render()}";')
    for a, b in t.edges:
        style = " [color=red, penwidth=2]" if frozenset((a, b)) in tree_set else ""
        lines.append(f'  "{a.render()}" -- "{b.render()}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_doc(t: FiniteTruncation) -> dict:
    return {
        "schema": 1,
        "kind": "truncation",
        "expr": t.expr.render(),
        "d": t.d,
        "w": t.w,
        "vertices": [v.render() for v in t.vertices],
        "edges": [[a.render(), b.render()] for a, b in t.edges],
    }


def align_address(a: Address, d_to: int) -> Address:
    """Token alignment between truncation depths: a top (and anything hung
    below it) named by a branch path at one depth corresponds to the
    diagonal extension of that path at a deeper truncation."""
    from .addresses import diagonal
    out = []
    for s in a.steps:
        if isinstance(s, TopStep):
            out.append(TopStep(diagonal(s.path, max(1, d_to - 1))))
        elif isinstance(s, UnderStep):
            out.append(UnderStep(diagonal(s.path, max(1, d_to - 1))))
        else:
            out.append(s)
    return Address(tuple(out))
