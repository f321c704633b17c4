"""The graph DSL: finite presentations of (possibly uncountable) graphs.

Each constructor is a closed-form building block: finite graphs, the
one-way infinite path, combs, stars, branching trees T_kappa, branching
trees with tops, complete graphs, disjoint unions, countable or
uncountable families of copies, a fresh vertex joined onto a described
set, a single extra edge, and copies of a graph hung below every top.

The `copies` and `hang_at_tops` constructors exist so that the shipped
fixture catalog (star-of-stars, the doubly nested tops graph) stays
expressible; everything else is one paper object per constructor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .addresses import Address, check_label
from .cardinality import ALEPH0, ALEPH1, Cardinality, finite
from .descriptors import Descriptor, Region


class ExprError(ValueError):
    pass


@dataclass(frozen=True)
class GraphExpr:
    def render(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class FiniteGraph(GraphExpr):
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            check_label(v)
            if v in seen:
                raise ExprError(f"duplicate vertex {v!r}")
            seen.add(v)
        for a, b in self.edges:
            if a not in seen or b not in seen:
                raise ExprError(f"edge ({a},{b}) uses unknown vertex")
            if a == b:
                raise ExprError(f"loop at {a!r}")

    def render(self) -> str:
        vs = ", ".join(self.vertices)
        es = ", ".join(f"{a}-{b}" for a, b in self.edges)
        return f"finite{{v:[{vs}], e:[{es}]}}"


@dataclass(frozen=True)
class Ray(GraphExpr):
    def render(self) -> str:
        return "ray"


@dataclass(frozen=True)
class Comb(GraphExpr):
    tooth_len: int

    def __post_init__(self):
        if self.tooth_len < 0:
            raise ExprError("tooth length must be >= 0")

    def render(self) -> str:
        return f"comb({self.tooth_len})"


@dataclass(frozen=True)
class Star(GraphExpr):
    count: Cardinality

    def render(self) -> str:
        return f"star({self.count})"


@dataclass(frozen=True)
class Tree(GraphExpr):
    count: Cardinality  # children per node, height omega

    def render(self) -> str:
        return f"tree({self.count})"


@dataclass(frozen=True)
class WithTops(GraphExpr):
    """Tree(aleph1) plus a top vertex over every branch of an uncountable,
    exchangeable branch family; each top is joined to its whole ray or to
    every second ray vertex."""

    base: GraphExpr
    adjacency: str = "whole_ray"  # 'whole_ray' | 'every_2nd'

    def __post_init__(self):
        if not (isinstance(self.base, Tree) and self.base.count == ALEPH1):
            raise ExprError("with_tops applies to tree(aleph1) only")
        if self.adjacency not in ("whole_ray", "every_2nd"):
            raise ExprError(f"bad tops adjacency {self.adjacency!r}")

    def render(self) -> str:
        return f"with_tops({self.base.render()}, all, {self.adjacency})"


@dataclass(frozen=True)
class Complete(GraphExpr):
    count: Cardinality

    def render(self) -> str:
        return f"complete({self.count})"


@dataclass(frozen=True)
class DisjointUnion(GraphExpr):
    left: GraphExpr
    right: GraphExpr

    def render(self) -> str:
        return f"union({self.left.render()}, {self.right.render()})"


@dataclass(frozen=True)
class Copies(GraphExpr):
    count: Cardinality
    base: GraphExpr

    def __post_init__(self):
        if self.count.is_finite() and self.count.n < 1:
            raise ExprError("copies wants a positive count")

    def render(self) -> str:
        return f"copies({self.count}, {self.base.render()})"


@dataclass(frozen=True)
class JoinVertex(GraphExpr):
    base: GraphExpr
    label: str
    attach: Descriptor

    def __post_init__(self):
        check_label(self.label)

    def render(self) -> str:
        return f"join_vertex({self.base.render()}, {self.label}, {self.attach.render()})"


@dataclass(frozen=True)
class AddEdge(GraphExpr):
    base: GraphExpr
    a: Address
    b: Address

    def __post_init__(self):
        if self.a == self.b:
            raise ExprError("add_edge endpoints coincide")

    def render(self) -> str:
        return f"add_edge({self.base.render()}, {self.a.render()}, {self.b.render()})"


@dataclass(frozen=True)
class HangAtTops(GraphExpr):
    """One disjoint copy of `child` per top of `base`, joined to that top
    by a single edge at the copy's canonical root vertex."""

    base: GraphExpr
    child: GraphExpr

    def __post_init__(self):
        if not isinstance(self.base, WithTops):
            raise ExprError("hang_at_tops applies to a with_tops expression")

    def render(self) -> str:
        return f"hang_at_tops({self.base.render()}, {self.child.render()})"


# -- region navigation --------------------------------------------------------


def subexpr_at(e: GraphExpr, region: Region) -> GraphExpr:
    """The sub-expression a region path points at."""
    if not region:
        return e
    sel, rest = region[0], region[1:]
    if isinstance(e, DisjointUnion) and sel in ("left", "right"):
        return subexpr_at(e.left if sel == "left" else e.right, rest)
    if isinstance(e, (JoinVertex, Copies)) and sel == "base":
        return subexpr_at(e.base, rest)
    if isinstance(e, AddEdge):
        # the extra edge is address- and region-transparent
        if sel == "base":
            return subexpr_at(e.base, rest)
        return subexpr_at(e.base, region)
    if isinstance(e, WithTops) and sel == "base":
        return subexpr_at(e.base, rest)
    if isinstance(e, HangAtTops):
        if sel == "base":
            return subexpr_at(e.base, rest)
        if sel == "child":
            return subexpr_at(e.child, rest)
    raise ExprError(f"region selector {sel!r} does not apply to {type(e).__name__}")


def subexpressions(e: GraphExpr):
    """All sub-expressions, self first."""
    yield e
    for child in _children(e):
        yield from subexpressions(child)


def _children(e: GraphExpr):
    if isinstance(e, DisjointUnion):
        return (e.left, e.right)
    if isinstance(e, (JoinVertex, AddEdge, Copies)):
        return (e.base,)
    if isinstance(e, WithTops):
        return (e.base,)
    if isinstance(e, HangAtTops):
        return (e.base, e.child)
    return ()


def contains_subexpr(e: GraphExpr, pred) -> bool:
    return any(pred(s) for s in subexpressions(e))


# -- structural size ------------------------------------------------------------


def vertices_card(e: GraphExpr) -> Cardinality:
    """Exact coarse vertex count by structural recursion."""
    if isinstance(e, FiniteGraph):
        return finite(len(e.vertices))
    if isinstance(e, (Ray,)):
        return ALEPH0
    if isinstance(e, Comb):
        return ALEPH0
    if isinstance(e, Star):
        return e.count.plus(finite(1))
    if isinstance(e, Tree):
        if e.count.is_finite():
            return finite(1) if e.count.n == 0 else ALEPH0
        return max(e.count, ALEPH0)
    if isinstance(e, WithTops):
        # aleph1 tree nodes plus the aleph1-sized exchangeable top family
        return ALEPH1
    if isinstance(e, Complete):
        return e.count
    if isinstance(e, DisjointUnion):
        return vertices_card(e.left).plus(vertices_card(e.right))
    if isinstance(e, Copies):
        return e.count.times(vertices_card(e.base))
    if isinstance(e, JoinVertex):
        return vertices_card(e.base).plus(finite(1))
    if isinstance(e, AddEdge):
        return vertices_card(e.base)
    if isinstance(e, HangAtTops):
        return ALEPH1.plus(ALEPH1.times(vertices_card(e.child)))
    raise ExprError(f"unknown expression {type(e).__name__}")


def is_rayless_expr(e: GraphExpr) -> bool:
    """Structural raylessness of the presented graph."""
    if isinstance(e, (FiniteGraph, Star)):
        return True
    if isinstance(e, Ray) or isinstance(e, Comb):
        return False
    if isinstance(e, Tree):
        return e.count.is_finite() and e.count.n == 0
    if isinstance(e, (WithTops, HangAtTops)):
        return False
    if isinstance(e, Complete):
        return e.count.is_finite()
    if isinstance(e, DisjointUnion):
        return is_rayless_expr(e.left) and is_rayless_expr(e.right)
    if isinstance(e, Copies):
        return is_rayless_expr(e.base)
    if isinstance(e, (JoinVertex, AddEdge)):
        # one fresh vertex or edge cannot complete a one-way infinite path
        return is_rayless_expr(e.base)
    raise ExprError(f"unknown expression {type(e).__name__}")
