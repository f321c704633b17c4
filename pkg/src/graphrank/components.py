"""Connectivity and components after deleting a described vertex set.

components_after_deletion returns a finite list of region descriptors,
each standing for a single component or for a symbolic family of
pairwise-isomorphic components with a coarse count.  The verdicts are
exact for the supported (constructor, descriptor) combinations and
Unsupported otherwise, never wrong; the truncation consistency suite
checks the partition concretely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple, Union

from .addresses import (
    Address, CopyStep, LabelStep, NodeStep, RayStep, RootStep, SideStep,
    Step, ToothStep, TopStep, UnderStep,
)
from .cardinality import ALEPH1, Cardinality, finite
from .descriptors import (
    AllOf, CentersOf, Descriptor, ExplicitSet, LeavesOf, LevelSet, SpineOf,
    TopsOf, UnionSet,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, vertices_card,
)
from .resolve import canonical_root, member


@dataclass(frozen=True)
class Unsupported:
    """Combination outside the closed catalog; a value, not an exception."""

    reason: str


class Embed:
    """Maps member-expression addresses into host addresses."""

    def __init__(self, fn: Callable[[Address, object], Address]):
        self.fn = fn

    def to_host(self, local: Address, param=None) -> Address:
        return self.fn(local, param)


@dataclass
class RegionDescriptor:
    rid: str
    count: Cardinality                      # number of components denoted
    expr: Optional[GraphExpr]               # iso type of one member
    contains: Callable[[Address], bool]     # host addresses of the region
    embed: Optional[Embed] = None
    canonical_param: object = None
    param_of: Optional[Callable[[Address], object]] = None
    note: str = ""

    def is_family(self) -> bool:
        return not (self.count.is_finite() and self.count.n == 1)


ComponentsResult = Union[List[RegionDescriptor], Unsupported]


def _identity_embed() -> Embed:
    return Embed(lambda a, _p: a)


def _whole_region(e: GraphExpr, rid: str = "whole") -> RegionDescriptor:
    return RegionDescriptor(
        rid=rid,
        count=finite(1),
        expr=e,
        contains=lambda a: True,
        embed=_identity_embed(),
    )


def _wrap_region(r: RegionDescriptor, step_of_param, rid_prefix: str,
                 strip: Callable[[Address], Optional[Address]],
                 count_factor: Cardinality) -> RegionDescriptor:
    """Lift a member-level region through a prefixing wrapper."""
    inner_embed = r.embed

    def contains(a: Address) -> bool:
        rest = strip(a)
        return rest is not None and r.contains(rest)

    def embed_fn(local: Address, param):
        outer, inner = param
        host_inner = inner_embed.to_host(local, inner) if inner_embed else local
        return host_inner.prepend(step_of_param(outer))

    def param_of(a: Address):
        rest = strip(a)
        outer = a.steps[0]
        inner = r.param_of(rest) if r.param_of else None
        return (_param_from_step(outer), inner)

    return RegionDescriptor(
        rid=f"{rid_prefix}.{r.rid}",
        count=count_factor.times(r.count),
        expr=r.expr,
        contains=contains,
        embed=Embed(embed_fn) if inner_embed else None,
        canonical_param=(_canonical_outer(step_of_param), r.canonical_param),
        param_of=param_of,
        note=r.note,
    )


def _param_from_step(step: Step):
    if isinstance(step, CopyStep):
        return step.ix
    if isinstance(step, SideStep):
        return step.side
    if isinstance(step, (TopStep, UnderStep)):
        return step.path
    return None


def _canonical_outer(step_of_param):
    probe = step_of_param("b1")
    if isinstance(probe, CopyStep):
        return "b1"
    return None


def _normalize(x: Descriptor) -> List[Descriptor]:
    if isinstance(x, UnionSet):
        out = []
        for p in x.parts:
            out.extend(_normalize(p))
        return out
    if isinstance(x, ExplicitSet) and not x.addrs:
        return []
    return [x]


def _is_empty_deletion(parts: List[Descriptor]) -> bool:
    return not parts


def components_after_deletion(e: GraphExpr, x: Descriptor) -> ComponentsResult:
    parts = _normalize(x)
    return _components(e, parts)


def _components(e: GraphExpr, parts: List[Descriptor]) -> ComponentsResult:
    if _is_empty_deletion(parts):
        return _components_whole(e)
    if any(isinstance(p, AllOf) and p.region == () for p in parts):
        return []  # deleting every vertex leaves nothing

    if isinstance(e, JoinVertex):
        label_addr = Address((LabelStep(e.label),))
        if any(member(e, p, label_addr) for p in parts):
            rest = []
            for p in parts:
                if _is_exactly(p, label_addr):
                    continue
                if isinstance(p, ExplicitSet):
                    kept = tuple(a for a in p.addrs if a != label_addr)
                    if kept:
                        rest.append(ExplicitSet(kept))
                    continue
                local = _strip_region_head(p, "base")
                if local is None:
                    return Unsupported("deletion not expressible over the base")
                rest.append(local)
            return _components(e.base, rest)
        return Unsupported("join vertex survives the deletion")

    if isinstance(e, AddEdge):
        deleted_a = any(member(e, p, e.a) for p in parts)
        deleted_b = any(member(e, p, e.b) for p in parts)
        inner = _components(e.base, parts)
        if isinstance(inner, Unsupported):
            return inner
        if deleted_a or deleted_b:
            return inner
        ra = [r for r in inner if r.contains(e.a)]
        rb = [r for r in inner if r.contains(e.b)]
        if ra and rb and ra[0] is rb[0] and not ra[0].is_family():
            return inner
        return Unsupported("extra edge joins distinct regions")

    if isinstance(e, Ray):
        return _ray_components(parts)

    if isinstance(e, Comb):
        if len(parts) == 1 and isinstance(parts[0], SpineOf) and parts[0].region == ():
            return _comb_teeth_regions(e)
        return Unsupported("comb supports spine deletion only")

    if isinstance(e, Star):
        if _deletes_exactly_center(e, parts):
            return [_leaf_family(e)]
        if len(parts) == 1 and isinstance(parts[0], LeavesOf) and parts[0].region == ():
            from .addresses import CenterStep
            return [RegionDescriptor(
                rid="center",
                count=finite(1),
                expr=FiniteGraph(("c",), ()),
                contains=lambda a: isinstance(a.steps[0], CenterStep),
                embed=Embed(lambda local, _p: Address((CenterStep(),))),
            )]
        return Unsupported("star supports center or leaves deletion")

    if isinstance(e, Tree):
        if len(parts) == 1 and isinstance(parts[0], LevelSet) and parts[0].depth == 0:
            return [_subtree_family(e)]
        if len(parts) == 1 and isinstance(parts[0], ExplicitSet) and \
                list(parts[0].addrs) == [Address((RootStep(),))]:
            return [_subtree_family(e)]
        return Unsupported("tree supports root deletion only")

    if isinstance(e, WithTops):
        if _covers_base_exactly(parts):
            return [_top_family(e)]
        if len(parts) == 1 and isinstance(parts[0], TopsOf) and parts[0].region == ():
            return [RegionDescriptor(
                rid="base-tree",
                count=finite(1),
                expr=e.base,
                contains=lambda a: not isinstance(a.steps[0], TopStep),
                embed=_identity_embed(),
            )]
        return Unsupported("with_tops supports base or tops deletion")

    if isinstance(e, Complete):
        if all(isinstance(p, ExplicitSet) for p in parts) and e.count.is_infinite():
            deleted = {a for p in parts for a in p.addrs}
            return [RegionDescriptor(
                rid="rest",
                count=finite(1),
                expr=e,
                contains=lambda a, dd=deleted: a not in dd,
                note="complete graph minus finitely many vertices",
            )]
        return Unsupported("complete supports finite explicit deletion only")

    if isinstance(e, DisjointUnion):
        return _union_components(e, parts)

    if isinstance(e, Copies):
        member_parts = []
        for p in parts:
            local = _strip_region_head(p, "base")
            if local is None:
                return Unsupported("deletion not expressible per copy")
            member_parts.append(local)
        inner = _components(e.base, member_parts)
        if isinstance(inner, Unsupported):
            return inner
        def strip(a: Address):
            return a.tail() if isinstance(a.steps[0], CopyStep) else None
        return [
            _wrap_region(r, lambda ix: CopyStep(ix), "copies", strip, e.count)
            for r in inner
        ]

    if isinstance(e, HangAtTops):
        if _covers_outer_tree_exactly(parts):
            return [_hung_top_family(e)]
        return Unsupported("hang_at_tops supports outer-tree deletion only")

    if isinstance(e, FiniteGraph):
        return _finite_components(e, parts)

    return Unsupported(f"no deletion rule for {type(e).__name__}")


def _is_exactly(p: Descriptor, a: Address) -> bool:
    return isinstance(p, ExplicitSet) and list(p.addrs) == [a]


def _strip_region_head(p: Descriptor, sel: str) -> Optional[Descriptor]:
    region = getattr(p, "region", None)
    if region is None:
        return None
    if region and region[0] == sel:
        import dataclasses
        return dataclasses.replace(p, region=region[1:])
    if not region:
        # structural descriptors distribute over copies unchanged
        return p
    return None


def _components_whole(e: GraphExpr) -> ComponentsResult:
    from .connectivity import is_connected
    verdict = is_connected(e)
    if verdict == "Yes":
        return [_whole_region(e)]
    if isinstance(e, DisjointUnion):
        return _union_components(e, [])
    if isinstance(e, Copies):
        inner = _components_whole(e.base)
        if isinstance(inner, Unsupported):
            return inner
        def strip(a: Address):
            return a.tail() if isinstance(a.steps[0], CopyStep) else None
        return [
            _wrap_region(r, lambda ix: CopyStep(ix), "copies", strip, e.count)
            for r in inner
        ]
    if isinstance(e, FiniteGraph):
        return _finite_components(e, [])
    return Unsupported("components of a possibly-disconnected expression")


def _union_components(e: DisjointUnion, parts: List[Descriptor]) -> ComponentsResult:
    left_parts, right_parts = [], []
    for p in parts:
        if isinstance(p, ExplicitSet):
            l = tuple(a.tail() for a in p.addrs if isinstance(a.steps[0], SideStep) and a.steps[0].side == "left")
            r = tuple(a.tail() for a in p.addrs if isinstance(a.steps[0], SideStep) and a.steps[0].side == "right")
            if len(l) + len(r) != len(p.addrs):
                return Unsupported("explicit deletion outside union sides")
            if l:
                left_parts.append(ExplicitSet(l))
            if r:
                right_parts.append(ExplicitSet(r))
            continue
        region = getattr(p, "region", None)
        if not region:
            return Unsupported("descriptor does not pick a union side")
        import dataclasses
        local = dataclasses.replace(p, region=region[1:])
        if region[0] == "left":
            left_parts.append(local)
        elif region[0] == "right":
            right_parts.append(local)
        else:
            return Unsupported("descriptor does not pick a union side")
    out: List[RegionDescriptor] = []
    for side, side_parts, sub in (
        ("left", left_parts, e.left), ("right", right_parts, e.right),
    ):
        inner = _components(sub, side_parts)
        if isinstance(inner, Unsupported):
            return inner
        def strip(a: Address, side=side):
            return a.tail() if isinstance(a.steps[0], SideStep) and a.steps[0].side == side else None
        for r in inner:
            out.append(_wrap_region(
                r, lambda _ix, side=side: SideStep(side), side, strip, finite(1)
            ))
    return out


def _ray_components(parts: List[Descriptor]) -> ComponentsResult:
    if not all(isinstance(p, ExplicitSet) for p in parts):
        return Unsupported("ray supports explicit finite deletion only")
    cut = sorted({a.steps[0].n for p in parts for a in p.addrs})
    regions: List[RegionDescriptor] = []
    prev = -1
    for ix, c in enumerate(cut):
        lo, hi = prev + 1, c - 1
        if lo <= hi:
            regions.append(_ray_segment(lo, hi, f"seg{ix}"))
        prev = c
    tail_start = cut[-1] + 1
    regions.append(RegionDescriptor(
        rid="tail",
        count=finite(1),
        expr=Ray(),
        contains=lambda a, s=tail_start: a.steps[0].n >= s,
        embed=Embed(lambda local, _p, s=tail_start: Address((RayStep(local.steps[0].n + s),))),
        note=f"ray tail from r{tail_start}",
    ))
    return regions


def _ray_segment(lo: int, hi: int, rid: str) -> RegionDescriptor:
    labels = tuple(f"p{i}" for i in range(hi - lo + 1))
    edges = tuple((labels[i], labels[i + 1]) for i in range(len(labels) - 1))
    expr = FiniteGraph(labels, edges)

    def embed_fn(local: Address, _p):
        ix = int(local.steps[0].name[1:])
        return Address((RayStep(lo + ix),))

    return RegionDescriptor(
        rid=rid,
        count=finite(1),
        expr=expr,
        contains=lambda a: lo <= a.steps[0].n <= hi,
        embed=Embed(embed_fn),
    )


def _comb_teeth_regions(e: Comb) -> ComponentsResult:
    if e.tooth_len == 0:
        return []
    labels = tuple(f"p{j}" for j in range(1, e.tooth_len + 1))
    edges = tuple((labels[i], labels[i + 1]) for i in range(len(labels) - 1))
    expr = FiniteGraph(labels, edges)

    def embed_fn(local: Address, param):
        j = int(local.steps[0].name[1:])
        return Address((RayStep(param), ToothStep(j)))

    return [RegionDescriptor(
        rid="teeth",
        count=Cardinality("aleph0"),
        expr=expr,
        contains=lambda a: len(a.steps) == 2,
        embed=Embed(embed_fn),
        canonical_param=0,
        param_of=lambda a: a.steps[0].n,
        note="one tooth path per spine vertex",
    )]


def _deletes_exactly_center(e: Star, parts: List[Descriptor]) -> bool:
    if len(parts) != 1:
        return False
    p = parts[0]
    if isinstance(p, CentersOf) and p.region == ():
        return True
    from .addresses import CenterStep
    return _is_exactly(p, Address((CenterStep(),)))


def _leaf_family(e: Star) -> RegionDescriptor:
    from .addresses import LeafStep

    def embed_fn(local: Address, param):
        return Address((LeafStep(param),))

    return RegionDescriptor(
        rid="leaves",
        count=e.count,
        expr=FiniteGraph(("x",), ()),
        contains=lambda a: isinstance(a.steps[0], LeafStep),
        embed=Embed(embed_fn),
        canonical_param=0 if e.count <= Cardinality("aleph0") else "b1",
        param_of=lambda a: a.steps[0].ix,
        note="isolated leaves",
    )


def _subtree_family(e: Tree) -> RegionDescriptor:
    def contains(a: Address) -> bool:
        return len(a.steps) >= 2

    def embed_fn(local: Address, param):
        return Address((RootStep(), NodeStep(param)) + local.steps[1:])

    return RegionDescriptor(
        rid="subtrees",
        count=e.count,
        expr=e,
        contains=contains,
        embed=Embed(embed_fn),
        canonical_param=0 if e.count <= Cardinality("aleph0") else "b1",
        param_of=lambda a: a.steps[1].ix,
        note="one subtree per child of the root",
    )


def _covers_base_exactly(parts: List[Descriptor]) -> bool:
    return (
        len(parts) == 1
        and isinstance(parts[0], AllOf)
        and parts[0].region == ("base",)
    )


def _top_family(e: WithTops) -> RegionDescriptor:
    def embed_fn(local: Address, param):
        return Address((TopStep(param),))

    return RegionDescriptor(
        rid="tops",
        count=ALEPH1,
        expr=FiniteGraph(("t",), ()),
        contains=lambda a: isinstance(a.steps[0], TopStep),
        embed=Embed(embed_fn),
        canonical_param=("b1",),
        param_of=lambda a: a.steps[0].path,
        note="isolated top vertices",
    )


def _covers_outer_tree_exactly(parts: List[Descriptor]) -> bool:
    return (
        len(parts) == 1
        and isinstance(parts[0], AllOf)
        and parts[0].region == ("base", "base")
    )


def _hung_top_family(e: HangAtTops) -> RegionDescriptor:
    child_root = canonical_root(e.child)
    member_expr = AddEdge(
        DisjointUnion(FiniteGraph(("t",), ()), e.child),
        Address((SideStep("left"), LabelStep("t"))),
        child_root.prepend(SideStep("right")),
    )

    def embed_fn(local: Address, param):
        s0 = local.steps[0]
        if s0 == SideStep("left"):
            return Address((TopStep(param),))
        return Address((UnderStep(param),) + local.steps[1:])

    def contains(a: Address) -> bool:
        return isinstance(a.steps[0], (TopStep, UnderStep))

    return RegionDescriptor(
        rid="topped-copies",
        count=ALEPH1,
        expr=member_expr,
        contains=contains,
        embed=Embed(embed_fn),
        canonical_param=("b1",),
        param_of=lambda a: a.steps[0].path,
        note="one top plus its hung copy, per branch",
    )


def _finite_components(e: FiniteGraph, parts: List[Descriptor]) -> ComponentsResult:
    removed = set()
    for v in e.vertices:
        a = Address((LabelStep(v),))
        if any(member(e, p, a) for p in parts):
            removed.add(v)
    adj = {v: set() for v in e.vertices if v not in removed}
    for a, b in e.edges:
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    seen = set()
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comp = tuple(sorted(comp))
        sub_edges = tuple((a, b) for a, b in e.edges if a in comp and b in comp)
        expr = FiniteGraph(comp, sub_edges)
        out.append(RegionDescriptor(
            rid=f"fin.{comp[0]}",
            count=finite(1),
            expr=expr,
            contains=lambda a, cc=set(comp): len(a.steps) == 1
            and isinstance(a.steps[0], LabelStep) and a.steps[0].name in cc,
            embed=_identity_embed(),
        ))
    return out
