"""Address resolution, adjacency and descriptor membership.

Everything here is exact for the closed constructor/descriptor catalog:
an address either resolves to one vertex or is rejected, adjacency of
two resolved addresses is decidable, and membership of an address in a
descriptor is decidable.  Symbolic branch tokens resolve via the
diagonal convention from ``addresses``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .addresses import (
    Address, CenterStep, CopyStep, Index, KVertStep, LabelStep, LeafStep,
    NodeStep, RayStep, RootStep, SideStep, Step, ToothStep, TopStep,
    UnderStep, diagonal, is_token,
)
from .cardinality import ALEPH0, ALEPH1, Cardinality, finite
from .descriptors import (
    AllOf, BranchPrefix, CentersOf, ChildrenOf, CoVerticesOf, Descriptor,
    ExplicitSet, LeavesOf, LevelSet, Progression, Region, SpineOf, TopsOf,
    TopsThrough, UnionSet,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, ExprError, FiniteGraph,
    GraphExpr, HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, subexpr_at,
    vertices_card,
)


class ResolutionError(ValueError):
    pass


def _index_ok(ix: Index, count: Cardinality) -> bool:
    if count.is_finite():
        return isinstance(ix, int) and 0 <= ix < count.n
    if count == ALEPH0:
        return isinstance(ix, int) and ix >= 0
    return is_token(ix)


def _node_path(a: Address) -> Optional[Tuple[Index, ...]]:
    """Tree-node path behind a root-led address, else None."""
    if not a.steps or not isinstance(a.steps[0], RootStep):
        return None
    path = []
    for s in a.steps[1:]:
        if not isinstance(s, NodeStep):
            return None
        path.append(s.ix)
    return tuple(path)


def on_branch(node_path: Tuple[Index, ...], branch: Tuple[Index, ...]) -> bool:
    """Does the node lie on the diagonally-read branch?"""
    if not branch:
        return False
    ext = diagonal(branch, max(len(node_path), 1))
    return all(node_path[i] == ext[i] for i in range(len(node_path)))


def resolves(e: GraphExpr, a: Address) -> bool:
    if not a.steps:
        return False
    s0 = a.steps[0]
    if isinstance(e, FiniteGraph):
        return len(a.steps) == 1 and isinstance(s0, LabelStep) and s0.name in e.vertices
    if isinstance(e, Ray):
        return len(a.steps) == 1 and isinstance(s0, RayStep)
    if isinstance(e, Comb):
        if isinstance(s0, RayStep):
            if len(a.steps) == 1:
                return True
            return (
                len(a.steps) == 2
                and isinstance(a.steps[1], ToothStep)
                and 1 <= a.steps[1].j <= e.tooth_len
            )
        return False
    if isinstance(e, Star):
        if len(a.steps) != 1:
            return False
        if isinstance(s0, CenterStep):
            return True
        return isinstance(s0, LeafStep) and _index_ok(s0.ix, e.count)
    if isinstance(e, Tree):
        path = _node_path(a)
        return path is not None and all(_index_ok(i, e.count) for i in path)
    if isinstance(e, WithTops):
        if isinstance(s0, TopStep):
            return len(a.steps) == 1 and len(s0.path) >= 1 and all(
                is_token(i) for i in s0.path
            )
        return resolves(e.base, a)
    if isinstance(e, Complete):
        return len(a.steps) == 1 and isinstance(s0, KVertStep) and _index_ok(
            s0.ix, e.count
        )
    if isinstance(e, DisjointUnion):
        if not isinstance(s0, SideStep):
            return False
        side = e.left if s0.side == "left" else e.right
        return resolves(side, a.tail())
    if isinstance(e, Copies):
        return (
            isinstance(s0, CopyStep)
            and _index_ok(s0.ix, e.count)
            and resolves(e.base, a.tail())
        )
    if isinstance(e, JoinVertex):
        if len(a.steps) == 1 and isinstance(s0, LabelStep) and s0.name == e.label:
            return True
        return resolves(e.base, a)
    if isinstance(e, AddEdge):
        return resolves(e.base, a)
    if isinstance(e, HangAtTops):
        if isinstance(s0, UnderStep):
            return len(s0.path) >= 1 and all(is_token(i) for i in s0.path) and resolves(
                e.child, a.tail()
            )
        return resolves(e.base, a)
    raise ExprError(f"unknown expression {type(e).__name__}")


def canonical_root(e: GraphExpr) -> Address:
    """The canonical first vertex (attachment point for hung copies)."""
    if isinstance(e, FiniteGraph):
        return Address((LabelStep(e.vertices[0]),))
    if isinstance(e, (Ray, Comb)):
        return Address((RayStep(0),))
    if isinstance(e, Star):
        return Address((CenterStep(),))
    if isinstance(e, (Tree,)):
        return Address((RootStep(),))
    if isinstance(e, WithTops):
        return Address((RootStep(),))
    if isinstance(e, Complete):
        ix: Index = 0 if e.count <= ALEPH0 else "b1"
        return Address((KVertStep(ix),))
    if isinstance(e, DisjointUnion):
        return canonical_root(e.left).prepend(SideStep("left"))
    if isinstance(e, Copies):
        ix = 0 if e.count <= ALEPH0 else "b1"
        return canonical_root(e.base).prepend(CopyStep(ix))
    if isinstance(e, JoinVertex):
        return Address((LabelStep(e.label),))
    if isinstance(e, AddEdge):
        return canonical_root(e.base)
    if isinstance(e, HangAtTops):
        return Address((RootStep(),))
    raise ExprError(f"unknown expression {type(e).__name__}")


# -- adjacency ---------------------------------------------------------------


def adjacent(e: GraphExpr, u: Address, v: Address) -> bool:
    """Is (u, v) an edge?  Both addresses must resolve in e."""
    if u == v:
        return False
    if isinstance(e, FiniteGraph):
        pair = {u.steps[0].name, v.steps[0].name}
        return any({a, b} == pair for a, b in e.edges)
    if isinstance(e, Ray):
        return abs(u.steps[0].n - v.steps[0].n) == 1
    if isinstance(e, Comb):
        return _comb_adjacent(u, v)
    if isinstance(e, Star):
        kinds = {type(u.steps[0]), type(v.steps[0])}
        return kinds == {CenterStep, LeafStep}
    if isinstance(e, Tree):
        return _tree_adjacent(u, v)
    if isinstance(e, WithTops):
        tu, tv = isinstance(u.steps[0], TopStep), isinstance(v.steps[0], TopStep)
        if tu and tv:
            return False
        if not tu and not tv:
            return _tree_adjacent(u, v)
        top, node = (u, v) if tu else (v, u)
        path = _node_path(node)
        if path is None or not on_branch(path, top.steps[0].path):
            return False
        if e.adjacency == "every_2nd":
            return len(path) % 2 == 0
        return True
    if isinstance(e, Complete):
        return True  # distinct resolved vertices
    if isinstance(e, DisjointUnion):
        su, sv = u.steps[0], v.steps[0]
        if su.side != sv.side:
            return False
        side = e.left if su.side == "left" else e.right
        return adjacent(side, u.tail(), v.tail())
    if isinstance(e, Copies):
        if u.steps[0] != v.steps[0]:
            return False
        return adjacent(e.base, u.tail(), v.tail())
    if isinstance(e, JoinVertex):
        ju = len(u.steps) == 1 and isinstance(u.steps[0], LabelStep) and u.steps[0].name == e.label
        jv = len(v.steps) == 1 and isinstance(v.steps[0], LabelStep) and v.steps[0].name == e.label
        if ju and jv:
            return False
        if ju or jv:
            other = v if ju else u
            return member(e.base, e.attach, other)
        return adjacent(e.base, u, v)
    if isinstance(e, AddEdge):
        if {u, v} == {e.a, e.b}:
            return True
        return adjacent(e.base, u, v)
    if isinstance(e, HangAtTops):
        uu, uv = isinstance(u.steps[0], UnderStep), isinstance(v.steps[0], UnderStep)
        if uu and uv:
            if u.steps[0] != v.steps[0]:
                return False
            return adjacent(e.child, u.tail(), v.tail())
        if not uu and not uv:
            return adjacent(e.base, u, v)
        under, other = (u, v) if uu else (v, u)
        return (
            isinstance(other.steps[0], TopStep)
            and other.steps[0].path == under.steps[0].path
            and under.tail() == canonical_root(e.child)
        )
    raise ExprError(f"unknown expression {type(e).__name__}")


def _comb_adjacent(u: Address, v: Address) -> bool:
    ru, rv = u.steps[0].n, v.steps[0].n
    if len(u.steps) == 1 and len(v.steps) == 1:
        return abs(ru - rv) == 1
    if ru != rv:
        return False
    ju = u.steps[1].j if len(u.steps) == 2 else 0
    jv = v.steps[1].j if len(v.steps) == 2 else 0
    return abs(ju - jv) == 1


def _tree_adjacent(u: Address, v: Address) -> bool:
    pu, pv = _node_path(u), _node_path(v)
    if pu is None or pv is None:
        return False
    if abs(len(pu) - len(pv)) != 1:
        return False
    parent, child = (pu, pv) if len(pu) < len(pv) else (pv, pu)
    return child[:-1] == parent


# -- descriptor membership -----------------------------------------------------


def _localize(e: GraphExpr, region: Region, a: Address):
    """Follow a region path, stripping matching address prefixes.

    Returns (sub_expr, local_address) or None when the address lies
    outside the region.
    """
    if not region:
        return e, a
    sel, rest = region[0], region[1:]
    if isinstance(e, DisjointUnion) and sel in ("left", "right"):
        s0 = a.steps[0]
        if not isinstance(s0, SideStep) or s0.side != sel:
            return None
        side = e.left if sel == "left" else e.right
        return _localize(side, rest, a.tail())
    if isinstance(e, JoinVertex) and sel == "base":
        if len(a.steps) == 1 and isinstance(a.steps[0], LabelStep) and a.steps[0].name == e.label:
            return None
        return _localize(e.base, rest, a)
    if isinstance(e, AddEdge):
        return _localize(e.base, rest if sel == "base" else region, a)
    if isinstance(e, Copies) and sel == "base":
        if not isinstance(a.steps[0], CopyStep):
            return None
        return _localize(e.base, rest, a.tail())
    if isinstance(e, WithTops) and sel == "base":
        if isinstance(a.steps[0], TopStep):
            return None
        return _localize(e.base, rest, a)
    if isinstance(e, HangAtTops) and sel == "base":
        if isinstance(a.steps[0], UnderStep):
            return None
        return _localize(e.base, rest, a)
    if isinstance(e, HangAtTops) and sel == "child":
        if not isinstance(a.steps[0], UnderStep):
            return None
        return _localize(e.child, rest, a.tail())
    raise ResolutionError(
        f"region selector {sel!r} does not apply to {type(e).__name__}"
    )


def member(e: GraphExpr, desc: Descriptor, a: Address) -> bool:
    """Decidable membership of a concrete address in a descriptor."""
    if isinstance(desc, ExplicitSet):
        return a in desc.addrs
    if isinstance(desc, UnionSet):
        return any(member(e, p, a) for p in desc.parts)
    local = _localize(e, desc.region, a)
    if local is None:
        return False
    sub, la = local
    return _member_local(sub, desc, la)


def _member_local(e: GraphExpr, desc: Descriptor, a: Address) -> bool:
    if not a.steps:
        return False
    s0 = a.steps[0]
    # push structural descriptors through wrappers
    if isinstance(e, DisjointUnion):
        if not isinstance(s0, SideStep):
            return False
        side = e.left if s0.side == "left" else e.right
        return _member_local(side, desc, a.tail())
    if isinstance(e, Copies):
        if not isinstance(s0, CopyStep):
            return False
        return _member_local(e.base, desc, a.tail())
    if isinstance(e, JoinVertex):
        if len(a.steps) == 1 and isinstance(s0, LabelStep) and s0.name == e.label:
            return False
        return _member_local(e.base, desc, a)
    if isinstance(e, AddEdge):
        return _member_local(e.base, desc, a)
    if isinstance(e, HangAtTops):
        if isinstance(s0, UnderStep):
            return False
        return _member_local(e.base, desc, a)

    if isinstance(desc, AllOf):
        return resolves(e, a)
    if isinstance(desc, SpineOf):
        return isinstance(e, (Ray, Comb)) and len(a.steps) == 1 and isinstance(s0, RayStep)
    if isinstance(desc, Progression):
        # ray/comb spine order, or the canonical enumeration of a
        # countable complete graph
        if isinstance(e, (Ray, Comb)) and len(a.steps) == 1 and isinstance(s0, RayStep):
            n = s0.n
        elif isinstance(e, Complete) and isinstance(s0, KVertStep) \
                and isinstance(s0.ix, int):
            n = s0.ix
        else:
            return False
        return n >= desc.start and (n - desc.start) % desc.step == 0
    if isinstance(desc, CentersOf):
        return isinstance(e, Star) and isinstance(s0, CenterStep)
    if isinstance(desc, LeavesOf):
        if isinstance(e, Star):
            return isinstance(s0, LeafStep)
        if isinstance(e, Comb):
            if e.tooth_len == 0:
                return len(a.steps) == 1 and isinstance(s0, RayStep)
            return (
                len(a.steps) == 2
                and isinstance(a.steps[1], ToothStep)
                and a.steps[1].j == e.tooth_len
            )
        return False
    if isinstance(desc, TopsOf):
        return isinstance(e, WithTops) and isinstance(s0, TopStep)
    if isinstance(desc, LevelSet):
        if isinstance(e, WithTops):
            return _member_local(e.base, desc, a)
        if not isinstance(e, Tree):
            return False
        path = _node_path(a)
        return path is not None and len(path) == desc.depth
    if isinstance(desc, BranchPrefix):
        if isinstance(e, WithTops):
            return _member_local(e.base, desc, a)
        if not isinstance(e, Tree):
            return False
        path = _node_path(a)
        return path is not None and on_branch(path, desc.path)
    if isinstance(desc, ChildrenOf):
        if isinstance(e, WithTops):
            return _member_local(e.base, desc, a)
        if not isinstance(e, Tree):
            return False
        path = _node_path(a)
        return (
            path is not None
            and len(path) == len(desc.node_path) + 1
            and path[:-1] == desc.node_path
        )
    if isinstance(desc, TopsThrough):
        return (
            isinstance(e, WithTops)
            and isinstance(s0, TopStep)
            and on_branch(desc.node_path, s0.path)
        )
    if isinstance(desc, CoVerticesOf):
        return isinstance(e, Complete) and isinstance(s0, KVertStep) and s0.ix != desc.ix
    if isinstance(desc, _EvenBranch):
        if isinstance(e, WithTops):
            return _member_local(e.base, desc, a)
        if not isinstance(e, Tree):
            return False
        path = _node_path(a)
        return path is not None and on_branch(path, desc.path) and len(path) % 2 == 0
    raise ResolutionError(f"unsupported descriptor {desc!r} on {type(e).__name__}")


# -- descriptor cardinality -----------------------------------------------------


def _region_factor(e: GraphExpr, region: Region) -> Tuple[Cardinality, GraphExpr]:
    """Multiplicity of a region (copies along the path) and its expression."""
    if not region:
        return finite(1), e
    sel, rest = region[0], region[1:]
    if isinstance(e, Copies) and sel == "base":
        f, sub = _region_factor(e.base, rest)
        return e.count.times(f), sub
    if isinstance(e, HangAtTops) and sel == "child":
        f, sub = _region_factor(e.child, rest)
        return ALEPH1.times(f), sub
    f, sub = _region_factor(subexpr_at(e, (sel,)), rest)
    return f, sub


def descriptor_card(e: GraphExpr, desc: Descriptor) -> Cardinality:
    """Coarse cardinality of a descriptor, by structural rules."""
    if isinstance(desc, ExplicitSet):
        return finite(len(desc.addrs))
    if isinstance(desc, UnionSet):
        total = finite(0)
        for p in desc.parts:
            total = total.plus(descriptor_card(e, p))
        return total
    factor, sub = _region_factor(e, desc.region)
    return factor.times(_local_card(sub, desc))


def _local_card(e: GraphExpr, desc: Descriptor) -> Cardinality:
    if isinstance(e, DisjointUnion):
        return _local_card(e.left, desc).plus(_local_card(e.right, desc))
    if isinstance(e, Copies):
        return e.count.times(_local_card(e.base, desc))
    if isinstance(e, (JoinVertex, AddEdge)):
        return _local_card(e.base, desc)
    if isinstance(e, HangAtTops):
        return _local_card(e.base, desc)

    if isinstance(desc, AllOf):
        return vertices_card(e)
    if isinstance(desc, SpineOf):
        return ALEPH0 if isinstance(e, (Ray, Comb)) else finite(0)
    if isinstance(desc, Progression):
        if isinstance(e, (Ray, Comb)):
            return ALEPH0
        if isinstance(e, Complete) and not e.count.is_finite():
            return ALEPH0
        return finite(0)
    if isinstance(desc, CentersOf):
        return finite(1) if isinstance(e, Star) else finite(0)
    if isinstance(desc, LeavesOf):
        if isinstance(e, Star):
            return e.count
        if isinstance(e, Comb):
            return ALEPH0
        return finite(0)
    if isinstance(desc, TopsOf):
        return ALEPH1 if isinstance(e, WithTops) else finite(0)
    if isinstance(desc, LevelSet):
        if isinstance(e, WithTops):
            return _local_card(e.base, desc)
        if not isinstance(e, Tree):
            return finite(0)
        if desc.depth == 0:
            return finite(1)
        if e.count.is_finite():
            return finite(e.count.n ** desc.depth)
        return e.count
    if isinstance(desc, BranchPrefix):
        if isinstance(e, (Tree, WithTops)):
            return ALEPH0
        return finite(0)
    if isinstance(desc, ChildrenOf):
        if isinstance(e, WithTops):
            return _local_card(e.base, desc)
        return e.count if isinstance(e, Tree) else finite(0)
    if isinstance(desc, TopsThrough):
        return ALEPH1 if isinstance(e, WithTops) else finite(0)
    if isinstance(desc, CoVerticesOf):
        if not isinstance(e, Complete):
            return finite(0)
        return finite(e.count.n - 1) if e.count.is_finite() else e.count
    if isinstance(desc, _EvenBranch):
        return ALEPH0 if isinstance(e, (Tree, WithTops)) else finite(0)
    raise ResolutionError(f"no cardinality rule for {desc!r}")


# -- the adjacency oracle --------------------------------------------------------


@dataclass(frozen=True)
class NeighborDescriptor:
    """A neighbourhood: finitely many named vertices plus symbolic families."""

    finite: Tuple[Address, ...]
    families: Tuple[Descriptor, ...]


def adjacency(e: GraphExpr, v: Address) -> NeighborDescriptor:
    if not resolves(e, v):
        raise ResolutionError(f"address {v} does not resolve")
    fin, fams = _adjacency(e, v, ())
    fin = tuple(sorted(fin, key=lambda a: a.sort_key()))
    return NeighborDescriptor(fin, tuple(fams))


def _wrap_addr(a: Address, prefix: Tuple[Step, ...]) -> Address:
    return Address(prefix + a.steps)


def _adjacency(e: GraphExpr, v: Address, region: Region, prefix: Tuple[Step, ...] = ()):
    """Finite neighbours (host addresses) and family descriptors (host regions)."""
    s0 = v.steps[0]
    if isinstance(e, FiniteGraph):
        name = s0.name
        nbrs = [b if a == name else a for a, b in e.edges if name in (a, b)]
        return [_wrap_addr(Address((LabelStep(n),)), prefix) for n in sorted(set(nbrs))], []
    if isinstance(e, Ray):
        out = []
        if s0.n > 0:
            out.append(Address((RayStep(s0.n - 1),)))
        out.append(Address((RayStep(s0.n + 1),)))
        return [_wrap_addr(a, prefix) for a in out], []
    if isinstance(e, Comb):
        out = []
        n = s0.n
        if len(v.steps) == 1:
            if n > 0:
                out.append(Address((RayStep(n - 1),)))
            out.append(Address((RayStep(n + 1),)))
            if e.tooth_len >= 1:
                out.append(Address((RayStep(n), ToothStep(1))))
        else:
            j = v.steps[1].j
            below = Address((RayStep(n),)) if j == 1 else Address((RayStep(n), ToothStep(j - 1)))
            out.append(below)
            if j < e.tooth_len:
                out.append(Address((RayStep(n), ToothStep(j + 1))))
        return [_wrap_addr(a, prefix) for a in out], []
    if isinstance(e, Star):
        if isinstance(s0, CenterStep):
            if e.count.is_finite():
                fin = [Address((LeafStep(i),)) for i in range(e.count.n)]
                return [_wrap_addr(a, prefix) for a in fin], []
            return [], [LeavesOf(region)]
        return [_wrap_addr(Address((CenterStep(),)), prefix)], []
    if isinstance(e, Tree):
        path = _node_path(v)
        out = []
        if path:
            out.append(Address((RootStep(),) + tuple(NodeStep(i) for i in path[:-1])))
        fams = []
        if e.count.is_finite():
            for i in range(e.count.n):
                out.append(Address(v.steps + (NodeStep(i),)))
        else:
            fams.append(ChildrenOf(path, region))
        return [_wrap_addr(a, prefix) for a in out], fams
    if isinstance(e, WithTops):
        if isinstance(s0, TopStep):
            if e.adjacency == "whole_ray":
                return [], [BranchPrefix(s0.path, region + ("base",))]
            return [], [_EvenBranch(s0.path, region + ("base",))]
        fin, fams = _adjacency(e.base, v, region + ("base",), prefix)
        path = _node_path(v)
        if e.adjacency == "whole_ray" or len(path) % 2 == 0:
            fams = list(fams) + [TopsThrough(path, region)]
        return fin, fams
    if isinstance(e, Complete):
        if e.count.is_finite():
            fin = [
                Address((KVertStep(i),)) for i in range(e.count.n) if i != s0.ix
            ]
            return [_wrap_addr(a, prefix) for a in fin], []
        return [], [CoVerticesOf(s0.ix, region)]
    if isinstance(e, DisjointUnion):
        side = e.left if s0.side == "left" else e.right
        return _adjacency(side, v.tail(), region + (s0.side,), prefix + (s0,))
    if isinstance(e, Copies):
        return _adjacency(e.base, v.tail(), region + ("base",), prefix + (s0,))
    if isinstance(e, JoinVertex):
        if len(v.steps) == 1 and isinstance(s0, LabelStep) and s0.name == e.label:
            return [], [e.attach]
        fin, fams = _adjacency(e.base, v, region + ("base",), prefix)
        if member(e.base, e.attach, v):
            fin = list(fin) + [_wrap_addr(Address((LabelStep(e.label),)), prefix)]
        return fin, fams
    if isinstance(e, AddEdge):
        fin, fams = _adjacency(e.base, v, region + ("base",), prefix)
        local = Address(v.steps)
        if local == e.a:
            fin = list(fin) + [_wrap_addr(e.b, prefix)]
        elif local == e.b:
            fin = list(fin) + [_wrap_addr(e.a, prefix)]
        return fin, fams
    if isinstance(e, HangAtTops):
        if isinstance(s0, UnderStep):
            fin, fams = _adjacency(
                e.child, v.tail(), region + ("child",), prefix + (s0,)
            )
            if v.tail() == canonical_root(e.child):
                fin = list(fin) + [_wrap_addr(Address((TopStep(s0.path),)), prefix)]
            return fin, fams
        fin, fams = _adjacency(e.base, v, region + ("base",), prefix)
        if isinstance(s0, TopStep):
            hung_root = canonical_root(e.child).prepend(UnderStep(s0.path))
            fin = list(fin) + [_wrap_addr(hung_root, prefix)]
        return fin, fams
    raise ExprError(f"unknown expression {type(e).__name__}")


@dataclass(frozen=True)
class _EvenBranch(Descriptor):
    """Even-depth prefix vertices of a branch (every-second-vertex tops)."""

    path: Tuple[Index, ...]
    region: Region = ()

    def render(self) -> str:
        from .addresses import render_index
        p = ".".join(render_index(i) for i in self.path)
        return f"even_prefix({p}, {_rr(self.region)})"


def _rr(region: Region) -> str:
    return "/".join(region) if region else "."
