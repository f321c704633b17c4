"""Spanning-tree constructions.

Normal spanning trees come from a per-constructor catalog (the
deterministic outcome of the enumeration construction under the address
order), joined vertices always serving as roots and bridged unions
hanging one side below the bridge.  On top of that sit the recursive
constructions: end-faithful spanning trees by induction on the normal
rank, and rayless spanning trees through the dominated-ends hub trees.

Every construction is deterministic: edge and path choices always take
the least address, so reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .addresses import (
    Address, CenterStep, CopyStep, KVertStep, LabelStep, LeafStep, NodeStep,
    RayStep, RootStep, SideStep, Step, ToothStep, TopStep, UnderStep,
    diagonal,
)
from .cardinality import ALEPH0, finite
from .connectivity import is_connected
from .descriptors import (
    AllOf, BranchPrefix, CentersOf, Descriptor, ExplicitSet, LeavesOf,
    LevelSet, Progression, SpineOf, TopsOf, UnionSet,
)
from .ends import (
    EndSubset, RaySchema, all_ends, all_ends_dominated, closure_ends,
    end_space, reflects_check,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, is_rayless_expr,
    subexpr_at, vertices_card,
)
from .ideals import normally_spanned
from .ordinals import ZERO, Ordinal
from .ranks import PeelingTree, RankInputError, normal_rank
from .resolve import adjacent, canonical_root, member, resolves
from . import rulekit as rk
from .trees import (
    NormalityCertificate, Rule, TreeDescriptor, prefixed_rule,
)
from .truncation import truncate

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


class ConstructionError(ValueError):
    pass


@dataclass
class NSTResult:
    status: str                       # 'Tree' | 'None' | 'Unknown'
    tree: Optional[TreeDescriptor] = None
    certificate: Optional[NormalityCertificate] = None
    reason: str = ""


def _all_summary(e: GraphExpr) -> Dict[str, str]:
    return {c.cid: "all" for c in end_space(e).classes}


def _nst(e: GraphExpr, root: Address, rules: List[Rule], name: str,
         min_d: int = 1) -> NSTResult:
    tree = TreeDescriptor(
        host=e, root=root, rules=tuple(rules), covers=None,
        ends_summary=_all_summary(e), min_d=min_d, name=name,
    )
    cert = NormalityCertificate(tree, tuple(r.note for r in rules if r.note))
    return NSTResult("Tree", tree, cert)


def _family_wrapped(rule: Rule, step_type, kind: str) -> Rule:
    """Scope a rule under every first step of a given type, preserving it."""

    def match(a: Address) -> bool:
        return len(a.steps) > 1 and isinstance(a.steps[0], step_type) \
            and rule.match(a.tail())

    def parent(a: Address, d: int) -> Address:
        inner = rule.parent(a.tail(), d)
        return inner.prepend(a.steps[0])

    return Rule(f"{kind}.{rule.kind}", rule.spec, match, parent,
                unbounded=rule.unbounded, note=rule.note)


def normal_spanning_tree(e: GraphExpr) -> NSTResult:
    """A normal spanning tree, the cited nonexistence verdict, or Unknown.

    Countable catalog expressions get the enumeration construction's
    outcome in closed form; branching trees are their own normal
    spanning trees; topped branching trees and uncountable complete
    graphs have none.
    """
    if is_connected(e) == NO:
        return NSTResult("Unknown", reason="input is disconnected")
    if isinstance(e, Ray):
        return _nst(e, Address((RayStep(0),)), [rk.ray_prev()], "ray")
    if isinstance(e, Comb):
        return _nst(e, Address((RayStep(0),)), [rk.tooth_step(), rk.ray_prev()],
                    "comb")
    if isinstance(e, Star):
        return _nst(e, Address((CenterStep(),)), [rk.leaf_to_center()], "star")
    if isinstance(e, FiniteGraph):
        return _nst(e, *_finite_dfs(e), "finite-dfs")
    if isinstance(e, Tree):
        return _nst(e, Address((RootStep(),)), [rk.tree_parent()], "tree-itself")
    if isinstance(e, WithTops):
        return NSTResult("None", reason=(
            "a branching tree with all branches topped has no normal "
            "spanning tree"))
    if isinstance(e, HangAtTops):
        return NSTResult("None", reason=(
            "the graph contains a topped branching tree, whose vertex set "
            "is not normally spanned"))
    if isinstance(e, Complete):
        if e.count.is_finite():
            pairs = {
                Address((KVertStep(i),)): Address((KVertStep(i - 1),))
                for i in range(1, e.count.n)
            }
            return _nst(e, Address((KVertStep(0),)),
                        [rk.table(pairs, "kvert_path")], "complete-path")
        if e.count == ALEPH0:
            return _nst(e, Address((KVertStep(0),)), [rk.kvert_prev()],
                        "complete-ray")
        return NSTResult("None", reason=(
            "an uncountable complete graph is normally spanned only when "
            "countable"))
    if isinstance(e, JoinVertex):
        return _join_nst(e)
    if isinstance(e, AddEdge):
        return _bridge_nst(e)
    if isinstance(e, (DisjointUnion, Copies)):
        return NSTResult("Unknown", reason="input is disconnected")
    return NSTResult("Unknown", reason=f"no rule for {type(e).__name__}")


def _finite_dfs(e: FiniteGraph) -> Tuple[Address, List[Rule]]:
    adj = {v: sorted(b if a == v else a for a, b in e.edges if v in (a, b))
           for v in e.vertices}
    root = sorted(e.vertices, key=lambda v: (len(v), v))[0]
    parent: Dict[str, str] = {}
    seen = {root}

    def dfs(v: str):
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                dfs(u)

    dfs(root)
    pairs = {
        Address((LabelStep(c),)): Address((LabelStep(p),))
        for c, p in parent.items()
    }
    return Address((LabelStep(root),)), [rk.table(pairs, "dfs")]


def _join_nst(e: JoinVertex) -> NSTResult:
    """The joined vertex is the root; each base component's normal tree
    hangs below it by the edge at the component's canonical root."""
    from .components import Unsupported, components_after_deletion
    base_nst_rules, ok = _component_nst_rules(e.base)
    if not ok:
        return _insert_join_nst(e)
    root_label = Address((LabelStep(e.label),))
    attach: List[Rule] = []
    for comp_root in _component_roots(e.base):
        if not member(e.base, e.attach, comp_root):
            return _insert_join_nst(e)
        if comp_root.steps and isinstance(comp_root.steps[0], CopyStep):
            # whole family of copies: every copy root hangs at the label
            def match(a: Address, local=comp_root.tail()) -> bool:
                return len(a.steps) >= 1 and isinstance(a.steps[0], CopyStep) \
                    and Address(a.steps[1:]) == local
            attach.append(Rule(
                "copy_root_to_join", (e.label, comp_root.tail().render()),
                match, lambda a, _d: root_label, unbounded=False,
                note="every copy hangs at the joined vertex"))
        else:
            attach.append(rk.specific(comp_root, root_label))
    return _nst(e, root_label, attach + base_nst_rules, "join-rooted")


def _insert_join_nst(e: JoinVertex) -> NSTResult:
    """join_vertex(ray, l, prog(a, s)): insert the joined vertex into the
    spine after r_a; the skipped segment hangs back off r_(a+s)."""
    if not isinstance(e.base, Ray):
        return NSTResult("Unknown", reason="join target outside the catalog")
    at = e.attach
    if isinstance(at, SpineOf):
        a, s = 0, 1
    elif isinstance(at, Progression):
        a, s = at.start, at.step
    else:
        return NSTResult("Unknown", reason="join target outside the catalog")
    label = Address((LabelStep(e.label),))
    rules: List[Rule] = [rk.specific(label, Address((RayStep(a),)))]
    rules.append(rk.specific(Address((RayStep(a + s),)), label))
    for j in range(a + 1, a + s):
        rules.append(rk.specific(Address((RayStep(j),)),
                                 Address((RayStep(j + 1),))))
    rules.append(rk.ray_prev())
    return _nst(e, Address((RayStep(0),)), rules, "join-inserted",
                min_d=a + s + 1)


def _component_roots(b: GraphExpr) -> List[Address]:
    if isinstance(b, Copies):
        return [canonical_root(b)]
    if isinstance(b, DisjointUnion):
        return [r.prepend(SideStep("left")) for r in _component_roots(b.left)] + \
               [r.prepend(SideStep("right")) for r in _component_roots(b.right)]
    return [canonical_root(b)]


def _component_nst_rules(b: GraphExpr) -> Tuple[List[Rule], bool]:
    """Parent rules for normal trees of every component of b, rooted at
    the components' canonical roots."""
    if isinstance(b, Copies):
        inner, ok = _component_nst_rules(b.base)
        return [_family_wrapped(r, CopyStep, "percopy") for r in inner], ok
    if isinstance(b, DisjointUnion):
        lrules, lok = _component_nst_rules(b.left)
        rrules, rok = _component_nst_rules(b.right)
        return (
            [prefixed_rule((SideStep("left"),), r) for r in lrules]
            + [prefixed_rule((SideStep("right"),), r) for r in rrules],
            lok and rok,
        )
    nst = normal_spanning_tree(b)
    if nst.status != "Tree" or nst.tree.root != canonical_root(b):
        return [], False
    return list(nst.tree.rules), True


def _bridge_nst(e: AddEdge) -> NSTResult:
    """add_edge(union(A, B), a, b): hang B's normal tree below a."""
    base = e.base
    if not isinstance(base, DisjointUnion):
        return NSTResult("Unknown", reason="extra edge on a connected base "
                                           "is outside the catalog")
    sides = {}
    for side, sub in (("left", base.left), ("right", base.right)):
        nst = normal_spanning_tree(sub)
        if nst.status != "Tree":
            return NSTResult(nst.status, reason=nst.reason)
        sides[side] = nst.tree
    a, b = e.a, e.b
    if not (a.steps and isinstance(a.steps[0], SideStep)):
        return NSTResult("Unknown", reason="bridge endpoints unresolvable")
    a_side = a.steps[0].side
    b_side = b.steps[0].side
    if a_side == b_side:
        return NSTResult("Unknown", reason="bridge endpoints on one side")
    hang, keep = (b, a) if a_side == "left" else (a, b)
    hang_side, keep_side = hang.steps[0].side, keep.steps[0].side
    if hang.tail() != sides[hang_side].root:
        return NSTResult("Unknown", reason="bridge misses the canonical root")
    rules = (
        [rk.specific(hang, keep)]
        + [prefixed_rule((SideStep(keep_side),), r) for r in sides[keep_side].rules]
        + [prefixed_rule((SideStep(hang_side),), r) for r in sides[hang_side].rules]
    )
    root = sides[keep_side].root.prepend(SideStep(keep_side))
    return _nst(e, root, rules, "bridged-union",
                min_d=max(sides["left"].min_d, sides["right"].min_d))


# -- normal trees over a described set ---------------------------------------------


def normal_tree_for_set(e: GraphExpr, x: Descriptor) -> TreeDescriptor:
    """A tree, normal in the host, whose vertex set realises x (the rank
    witness's peeled set); catalog cases only."""
    if isinstance(x, AllOf) and x.region == ():
        nst = normal_spanning_tree(e)
        if nst.status != "Tree":
            raise ConstructionError(f"no normal spanning tree: {nst.reason}")
        return nst.tree
    if isinstance(e, WithTops) and isinstance(x, AllOf) and x.region == ("base",):
        return TreeDescriptor(
            host=e, root=Address((RootStep(),)), rules=(rk.tree_parent(),),
            covers=x, ends_summary=_all_summary(e), name="base-tree",
        )
    if isinstance(e, HangAtTops) and isinstance(x, AllOf) \
            and x.region == ("base", "base"):
        return TreeDescriptor(
            host=e, root=Address((RootStep(),)), rules=(rk.tree_parent(),),
            covers=x, ends_summary={"branches": "all"}, name="outer-tree",
        )
    if isinstance(e, AddEdge) and isinstance(e.base, DisjointUnion) \
            and isinstance(x, UnionSet):
        return _bridged_set_tree(e, x)
    raise ConstructionError(
        f"no normal-tree construction for {x.render()} over {e.render()}")


def _bridged_set_tree(e: AddEdge, x: UnionSet) -> TreeDescriptor:
    """X inside all(left) + all(right/base) over add_edge(union(A, W), a, b):
    A's normal tree with the b-side base tree hanging below the bridge.
    The returned tree may cover more than X (a normal tree containing X)."""
    for p in x.parts:
        if isinstance(p, ExplicitSet):
            if all(isinstance(a.steps[0], SideStep) and a.steps[0].side == "left"
                   for a in p.addrs):
                continue
            raise ConstructionError(f"set {x.render()} outside the catalog")
        if isinstance(p, AllOf) and p.region in (("left",), ("right", "base")):
            continue
        raise ConstructionError(f"set {x.render()} outside the catalog")
    x = UnionSet((AllOf(("left",)), AllOf(("right", "base"))))
    left_nst = normal_spanning_tree(e.base.left)
    if left_nst.status != "Tree":
        raise ConstructionError(f"left part: {left_nst.reason}")
    right = e.base.right
    if not isinstance(right, WithTops):
        raise ConstructionError("right part is not a topped tree")
    summary = dict(left_nst.tree.ends_summary)
    summary = {("left." + k): v for k, v in summary.items()}
    summary["right.branches"] = "all"
    rules = (
        [rk.specific(e.b, e.a)]
        + [prefixed_rule((SideStep("left"),), r) for r in left_nst.tree.rules]
        + [prefixed_rule((SideStep("right"),), rk.tree_parent())]
    )
    return TreeDescriptor(
        host=e, root=left_nst.tree.root.prepend(SideStep("left")),
        rules=tuple(rules), covers=x, ends_summary=summary,
        min_d=left_nst.tree.min_d, name="bridged-set-tree",
    )


# -- forest merging (one edge per component) ----------------------------------------


def merge_forest(e: GraphExpr, forest: List[TreeDescriptor],
                 anchor: int) -> TreeDescriptor:
    """A spanning tree from a spanning forest: one least-address edge from
    every non-anchor member to the anchor's region."""
    if not 0 <= anchor < len(forest):
        raise ConstructionError("anchor index out of range")
    if len(forest) == 1:
        return forest[0]
    anchor_tree = forest[anchor]
    t = truncate(e, max(3, max(f.min_d for f in forest)), 2)
    anchor_cover = (set(t.instantiate(anchor_tree.covers))
                    if anchor_tree.covers else set(t.vertices))
    rules: List[Rule] = []
    summary = dict(anchor_tree.ends_summary)
    for ix, member_tree in enumerate(forest):
        if ix == anchor:
            continue
        attach = _least_attach_rule(e, t, member_tree, anchor_cover)
        rules.append(attach)
        rules.extend(member_tree.rules)
        summary.update(member_tree.ends_summary)
    rules.extend(anchor_tree.rules)
    covers = None
    if all(f.covers is not None for f in forest):
        covers = UnionSet(tuple(f.covers for f in forest))
    return TreeDescriptor(
        host=e, root=anchor_tree.root, rules=tuple(rules), covers=covers,
        ends_summary=summary, min_d=max(f.min_d for f in forest),
        name="merged",
    )


def _least_attach_rule(e: GraphExpr, t, member_tree: TreeDescriptor,
                       anchor_cover) -> Rule:
    from .truncation import align_address
    root = member_tree.root
    rep = root if t.has_vertex(root) else align_address(root, t.d)
    if not t.has_vertex(rep):
        raise ConstructionError(f"member root {root} invisible at desk scale")
    nbrs = [u for u in t.adj[rep] if u in anchor_cover]
    if not nbrs:
        raise ConstructionError(f"no edge from {root} into the anchor region")
    target = min(nbrs, key=lambda a: a.sort_key())
    if rep == root:
        return rk.specific(root, target)
    # a symbolic family (tops): the least edge must be the same for every
    # member, which exchangeability guarantees and the truncation confirms
    family = [v for v in t.vertices
              if isinstance(v.steps[-1], type(rep.steps[-1]))
              and len(v.steps) == len(rep.steps)]
    for v in family:
        if target not in t.adj[v]:
            raise ConstructionError(
                f"least edge target {target} is not shared by the family")
    return rk.tops_to(target)


# -- ray rerouting -----------------------------------------------------------------


@dataclass
class RerouteReport:
    tree: TreeDescriptor
    contained_already: bool
    delta_edges_sample: List[Tuple[str, str]] = field(default_factory=list)


def reroute_with_ray(e: GraphExpr, tree: TreeDescriptor, psi: EndSubset,
                     ray: RaySchema) -> RerouteReport:
    """A spanning tree that still reflects psi and now contains the ray.

    When the ray already sits in the tree (up to a tail) the tree comes
    back unchanged; otherwise the comb's down-closure is rebuilt around
    the ray and everything else reattaches by its unique old tree edge,
    realised here for the catalog hosts with least-address choices.
    """
    d_probe = max(8, tree.min_d + 2)
    t = truncate(e, d_probe, 2)
    from .trees import instantiate
    inst = instantiate(tree, t)
    if inst.problems:
        raise ConstructionError(f"tree does not instantiate: {inst.problems[0]}")
    tree_edges = {frozenset((v, p)) for v, p in inst.parent.items()}
    missing = []
    for n in range(d_probe - 2):
        u, v = ray.vertex(n), ray.vertex(n + 1)
        if not t.has_vertex(u) or not t.has_vertex(v):
            break
        if not adjacent(e, u, v):
            raise ConstructionError(f"{u} -- {v} is not an edge of the host")
        if frozenset((u, v)) not in tree_edges:
            missing.append(n)
    if not missing:
        return RerouteReport(tree, True)
    new_tree = _reroute_construct(e, tree, ray)
    report = reflects_check(e, new_tree, psi)
    if report.verdict == "Fail":
        raise ConstructionError(f"reroute lost psi: {report.witness}")
    delta = _delta_edges(e, tree, new_tree, d_probe)
    return RerouteReport(new_tree, False, delta)


def _reroute_construct(e: GraphExpr, tree: TreeDescriptor,
                       ray: RaySchema) -> TreeDescriptor:
    if isinstance(e, Complete) and ray.kind == "kray_even":
        raise ConstructionError("unreachable")
    if isinstance(e, Complete):
        # the even-indexed ray r0 r2 r4 ... of the countable complete graph
        v0, v1 = ray.vertex(0), ray.vertex(1)
        if v0 == Address((KVertStep(0),)) and v1 == Address((KVertStep(2),)):
            rules = (rk.even_ray_chain(), rk.odd_to_next_even())
            return TreeDescriptor(
                host=e, root=Address((KVertStep(0),)), rules=rules,
                covers=None, ends_summary=_all_summary(e), min_d=3,
                name="even-ray-tree",
            )
        raise ConstructionError("complete-graph reroute outside the catalog")
    if isinstance(e, JoinVertex) and isinstance(e.base, Ray) \
            and ray.kind == "spine":
        # spine plus the joined vertex as a pendant at its least spine edge
        a = 0
        if isinstance(e.attach, Progression):
            a = e.attach.start
        label = Address((LabelStep(e.label),))
        rules = (rk.specific(label, Address((RayStep(a),))), rk.ray_prev())
        return TreeDescriptor(
            host=e, root=Address((RayStep(0),)), rules=rules, covers=None,
            ends_summary=_all_summary(e), min_d=a + 1, name="spine-with-pendant",
        )
    raise ConstructionError(
        f"reroute outside the catalog for {type(e).__name__}")


def _delta_edges(e: GraphExpr, old: TreeDescriptor, new: TreeDescriptor,
                 d: int) -> List[Tuple[str, str]]:
    from .trees import instantiate
    t = truncate(e, d, 2)
    es = []
    for td in (old, new):
        inst = instantiate(td, t)
        es.append({frozenset((v, p)) for v, p in inst.parent.items()})
    delta = es[0] ^ es[1]
    out = []
    for pair in sorted(delta, key=lambda p: sorted(x.render() for x in p)):
        u, v = sorted(pair, key=lambda a: a.sort_key())
        out.append((u.render(), v.render()))
    return out


# -- end-faithful spanning trees ------------------------------------------------------


@dataclass
class EfstCase:
    """How one component family of a peel recurses: the induced
    component-plus-path expression, the path's ray schema inside it (when
    infinite), the attachment rule into the anchor tree, and the lifting
    of the recursive tree's rules into host coordinates."""

    cp_expr: GraphExpr
    ray: Optional[RaySchema]
    attach: Rule
    lift: Callable[[TreeDescriptor], List[Rule]]
    summary: Dict[str, str]


def end_faithful_spanning_tree(e: GraphExpr) -> TreeDescriptor:
    """An end-faithful spanning tree, by induction on the normal rank."""
    r = normal_rank(e)
    if not r.is_ranked():
        raise RankInputError(
            f"end-faithful construction needs a normal rank: {r.status}")
    return _efst(e, r.witness, r.alpha)


def _efst(e: GraphExpr, w: PeelingTree, alpha: Ordinal) -> TreeDescriptor:
    if w.is_base():
        nst = normal_spanning_tree(e)
        if nst.status != "Tree":
            raise ConstructionError(
                f"rank-0 graph without a normal spanning tree: {nst.reason}")
        return nst.tree
    # replace the peeled set by the vertex set of a normal tree containing
    # it; the components of the bigger deletion still have smaller rank
    anchor = normal_tree_for_set(e, w.x)
    x_eff = anchor.covers if anchor.covers is not None else AllOf(())
    from .components import Unsupported, components_after_deletion
    regions = components_after_deletion(e, x_eff)
    if isinstance(regions, Unsupported):
        raise ConstructionError(
            f"components after the normal-tree deletion: {regions.reason}")
    rules: List[Rule] = []
    summary = dict(anchor.ends_summary)
    min_d = anchor.min_d
    for region in regions:
        case = _efst_case(e, x_eff, region)
        sub = normal_rank(case.cp_expr)
        if not sub.is_ranked():
            raise ConstructionError(
                f"component-plus-path graph has no rank: {case.cp_expr.render()}")
        if not sub.alpha < alpha:
            raise ConstructionError(
                "component-plus-path rank did not drop; the peel is unusable")
        t_c = _efst(case.cp_expr, sub.witness, sub.alpha)
        if case.ray is not None:
            rep = reroute_with_ray(case.cp_expr, t_c, all_ends(case.cp_expr),
                                   case.ray)
            t_c = rep.tree
        rules.append(case.attach)
        rules.extend(case.lift(t_c))
        summary.update(case.summary)
    rules.extend(anchor.rules)
    return TreeDescriptor(
        host=e, root=anchor.root, rules=tuple(rules), covers=None,
        ends_summary=summary, min_d=min_d, name="end-faithful",
    )


def _efst_case(e: GraphExpr, x_eff: Descriptor, child) -> EfstCase:
    x_text = x_eff.render()
    if isinstance(e, WithTops) and x_text == "all(base)" and child.rid == "tops":
        attach_desc = (SpineOf(()) if e.adjacency == "whole_ray"
                       else Progression((), 0, 2))
        cp = JoinVertex(Ray(), "apex", attach_desc)
        return EfstCase(
            cp_expr=cp,
            ray=RaySchema("spine"),
            attach=rk.tops_to(Address((RootStep(),))),
            lift=lambda t_c: [],
            summary={},
        )
    if isinstance(e, HangAtTops) and x_text == "all(base/base)" \
            and child.rid == "topped-copies":
        child_root = canonical_root(e.child)
        cp = AddEdge(
            DisjointUnion(JoinVertex(Ray(), "t", SpineOf(())), e.child),
            Address((SideStep("left"), LabelStep("t"))),
            child_root.prepend(SideStep("right")),
        )

        def lift(t_c: TreeDescriptor) -> List[Rule]:
            return [_lifted_rule(r, _topcopy_inv, _topcopy_fwd)
                    for r in t_c.rules]

        summary = {
            "under." + cid[len("right."):]: "all"
            for cid in (c.cid for c in end_space(cp).classes)
            if cid.startswith("right.")
        }
        return EfstCase(
            cp_expr=cp,
            ray=RaySchema("spine", (SideStep("left"),)),
            attach=rk.tops_to(Address((RootStep(),))),
            lift=lift,
            summary=summary,
        )
    if isinstance(e, AddEdge) and child.rid == "right.tops":
        # the inner tops of a topped tree bridged behind a joined vertex:
        # the path down-closure runs joined-vertex, tree root, branch
        cp = JoinVertex(Ray(), "apex", Progression((), 1, 1))
        attach = prefixed_rule(
            (SideStep("right"),), rk.tops_to(Address((RootStep(),))))
        return EfstCase(
            cp_expr=cp,
            ray=RaySchema("spine"),
            attach=attach,
            lift=lambda t_c: [],
            summary={},
        )
    raise ConstructionError(
        f"no end-faithful recursion case for region {child.rid!r} "
        f"of {type(e).__name__} peeled at {x_text}")


def _topcopy_inv(a: Address):
    """Host address of a topped copy back to member coordinates: the top
    is the left-hand attachment vertex, the copy is the right side."""
    s0 = a.steps[0]
    if isinstance(s0, TopStep) and len(a.steps) == 1:
        return s0.path, Address((SideStep("left"), LabelStep("t")))
    if isinstance(s0, UnderStep):
        return s0.path, Address((SideStep("right"),) + a.steps[1:])
    return None


def _topcopy_fwd(local: Address, path):
    s0 = local.steps[0]
    if isinstance(s0, SideStep) and s0.side == "left":
        return Address((TopStep(path),))
    if isinstance(s0, SideStep) and s0.side == "right":
        return Address((UnderStep(path),) + local.steps[1:])
    raise ConstructionError(f"unliftable parent {local}")


def _lifted_rule(rule: Rule, inv, fwd) -> Rule:
    def match(a: Address) -> bool:
        got = inv(a)
        return got is not None and rule.match(got[1])

    def parent(a: Address, d: int) -> Address:
        path, local = inv(a)
        return fwd(rule.parent(local, d), path)

    return Rule(f"lifted.{rule.kind}", rule.spec, match, parent,
                unbounded=rule.unbounded, note=rule.note)


# -- rayless trees ---------------------------------------------------------------------


@dataclass
class RaylessResult:
    status: str                      # 'Tree' | 'NotAllDominated' | 'Unknown'
    tree: Optional[TreeDescriptor] = None
    undominated: Optional[str] = None   # end class id
    reason: str = ""


def rayless_tree_containing(e: GraphExpr, u: Descriptor) -> RaylessResult:
    """A rayless tree covering u, or the undominated end that forbids one.

    The covered set must be normally spanned; every end in its closure
    must be dominated, and then a catalog construction applies: fans
    through dominating vertices, finite-depth down-closures of dispersed
    sets, or hub trees through the tops.
    """
    ideal = normally_spanned(e)
    if ideal.contains(e, u) != YES:
        raise ConstructionError("the covered set must be normally spanned")
    closure = closure_ends(e, u)
    space = closure.space
    relevant = []
    for c in space.classes:
        verdict = closure.includes_class(c.cid)
        if verdict == "None":
            continue
        if verdict == "Unknown":
            return RaylessResult("Unknown", reason=f"closure of {c.cid} unknown")
        relevant.append(c)
        if c.dominated == NO:
            return RaylessResult("NotAllDominated", undominated=c.cid)
        if c.dominated == UNKNOWN:
            return RaylessResult("Unknown", reason=f"domination of {c.cid} unknown")
    tree = _rayless_construct(e, u, bool(relevant))
    if tree is None:
        return RaylessResult("Unknown", reason="outside the rayless catalog")
    return RaylessResult("Tree", tree)


def _down_closure_levels(depth: int, region=()) -> Descriptor:
    return UnionSet(tuple(LevelSet(j, region) for j in range(depth + 1)))


def _rayless_construct(e: GraphExpr, u: Descriptor,
                       has_ends: bool) -> Optional[TreeDescriptor]:
    # dispersed target: the down-closure of a tree level is a finite-depth
    # subtree
    if isinstance(u, LevelSet) and isinstance(e, (Tree, WithTops)) and not has_ends:
        k = u.depth
        return TreeDescriptor(
            host=e, root=Address((RootStep(),)),
            rules=(rk.tree_parent(max_depth=k),),
            covers=_down_closure_levels(k, u.region),
            ends_summary={}, min_d=k + 1, name="level-down-closure",
        )
    if is_rayless_expr(e):
        nst = normal_spanning_tree(e)
        if nst.status == "Tree":
            return nst.tree
        return None
    if isinstance(e, Complete) and e.count == ALEPH0:
        return TreeDescriptor(
            host=e, root=Address((KVertStep(0),)), rules=(rk.kvert_fan(0),),
            covers=None, ends_summary={}, min_d=1, name="complete-fan",
        )
    if isinstance(e, JoinVertex) and isinstance(e.base, (Ray, Comb)):
        return _join_fan(e, u)
    if isinstance(e, WithTops):
        return _tops_hub(e, prefix=(), covers=None)
    if isinstance(e, HangAtTops):
        outer = _hub_rules(e.base, prefix=())
        inner = [_family_wrapped(r, UnderStep, "inner")
                 for r in _hub_rules(e.child, prefix=())] \
            if isinstance(e.child, WithTops) else None
        if inner is None:
            return None
        attach = rk.under_root_to_top(canonical_root(e.child))
        return TreeDescriptor(
            host=e, root=Address((RootStep(),)),
            rules=tuple([attach] + inner + outer),
            covers=None, ends_summary={}, min_d=1, name="nested-hub",
        )
    if isinstance(e, AddEdge) and isinstance(e.base, DisjointUnion):
        return _bridged_rayless(e)
    return None


def _join_fan(e: JoinVertex, u: Descriptor) -> Optional[TreeDescriptor]:
    label = e.label
    at = e.attach
    rules: List[Rule] = []
    if isinstance(at, (SpineOf, AllOf)):
        rules.append(rk.spine_fan(label))
    elif isinstance(at, Progression):
        rules.append(_prog_fan(label, at.start, at.step))
        rules.append(_ray_next_chain(at.start, at.step))
    elif isinstance(at, LeavesOf) and isinstance(e.base, Comb):
        # teeth fan onto the joined vertex, spine hangs along the teeth
        return None
    else:
        return None
    if isinstance(e.base, Comb) and e.base.tooth_len > 0:
        rules.append(rk.tooth_step())
    return TreeDescriptor(
        host=e, root=Address((LabelStep(label),)), rules=tuple(rules),
        covers=None, ends_summary={}, min_d=1, name="dominating-fan",
    )


def _prog_fan(label: str, a: int, s: int) -> Rule:
    def match(x: Address) -> bool:
        return len(x.steps) == 1 and isinstance(x.steps[0], RayStep) \
            and x.steps[0].n >= a and (x.steps[0].n - a) % s == 0

    return Rule("prog_fan", (label, a, s), match,
                lambda x, _d: Address((LabelStep(label),)), unbounded=False,
                note="progression vertices fan onto the dominating vertex")


def _ray_next_chain(a: int, s: int) -> Rule:
    def match(x: Address) -> bool:
        if len(x.steps) != 1 or not isinstance(x.steps[0], RayStep):
            return False
        n = x.steps[0].n
        return n < a or (n - a) % s != 0

    def parent(x: Address, _d: int) -> Address:
        return Address((RayStep(x.steps[0].n + 1),))

    return Rule("ray_next_chain", (a, s), match, parent, unbounded=False,
                note="skipped spine vertices chain up to the next fan vertex")


def _hub_rules(w: WithTops, prefix) -> List[Rule]:
    """Root, then tops, then the tree nodes assigned to the tops of their
    diagonal branches; every-second adjacency sends odd depths through
    their tree parents first."""
    rules = [rk.tops_to(Address((RootStep(),)))]
    if w.adjacency == "whole_ray":
        rules.append(rk.node_to_top_diag(min_depth=1))
    else:
        rules.append(rk.node_to_top_diag(parity=0, min_depth=2))
        rules.append(rk.tree_parent(min_depth=1, parity=1))
    if prefix:
        rules = [prefixed_rule(prefix, r) for r in rules]
    return rules


def _tops_hub(e: WithTops, prefix, covers) -> TreeDescriptor:
    return TreeDescriptor(
        host=e, root=Address(tuple(prefix) + (RootStep(),)),
        rules=tuple(_hub_rules(e, prefix)), covers=covers,
        ends_summary={}, min_d=1, name="tops-hub",
    )


def _bridged_rayless(e: AddEdge) -> Optional[TreeDescriptor]:
    """The component-plus-path graphs: a dominated ray behind a joined
    vertex, bridged to a topped tree; fan the ray, hub the tree."""
    base = e.base
    left, right = base.left, base.right
    if not (isinstance(left, JoinVertex) and isinstance(left.base, Ray)
            and isinstance(right, WithTops)):
        return None
    left_fan = _join_fan(left, AllOf(()))
    if left_fan is None:
        return None
    rules = (
        [rk.specific(e.b, e.a)]
        + [prefixed_rule((SideStep("left"),), r) for r in left_fan.rules]
        + [prefixed_rule((SideStep("right"),), r) for r in _hub_rules(right, ())]
    )
    return TreeDescriptor(
        host=e, root=left_fan.root.prepend(SideStep("left")),
        rules=tuple(rules), covers=None, ends_summary={}, min_d=1,
        name="bridged-rayless",
    )


def rayless_spanning_tree(e: GraphExpr) -> RaylessResult:
    """A rayless spanning tree, or the undominated end forbidding one.

    For a graph with a normal rank the two are equivalent; positive
    answers go through the hub and fan constructions, which on the
    catalog already span the whole graph, so the merge step of the
    general recursion degenerates."""
    r = normal_rank(e)
    if not r.is_ranked():
        raise RankInputError(
            f"rayless construction needs a normal rank: {r.status}")
    verdict, cid = all_ends_dominated(e)
    if verdict == NO:
        return RaylessResult("NotAllDominated", undominated=cid)
    if verdict == UNKNOWN:
        return RaylessResult("Unknown", reason=f"domination of {cid} unknown")
    target = AllOf(()) if r.alpha == ZERO else r.witness.x
    got = rayless_tree_containing(e, AllOf(())) if r.alpha == ZERO else \
        rayless_tree_containing(e, target)
    if got.status != "Tree":
        return got
    if got.tree.covers is not None:
        return RaylessResult("Unknown",
                             reason="construction does not span the host")
    if got.tree.is_rayless() != "Yes":
        return RaylessResult("Unknown", reason="construction is not rayless")
    return got


def is_rayless(t: TreeDescriptor) -> str:
    """Structural raylessness of a presented tree: no rule family admits
    unbounded descent."""
    return t.is_rayless()


def check_delta_closure(e: GraphExpr, old: TreeDescriptor,
                        new: TreeDescriptor, ray: RaySchema,
                        d: int = 8) -> List[str]:
    """Concrete evidence that no end other than the ray's lies in the
    closure of the edge symmetric difference: at every catalog separator,
    a component meeting the difference either hosts the ray's end or no
    end at all."""
    from .ends import end_space, frontier_map
    from .trees import instantiate
    from .truncation import separator_family
    t = truncate(e, d, 2)
    edge_sets = []
    for td in (old, new):
        inst = instantiate(td, t)
        if inst.problems:
            return [f"tree does not instantiate: {inst.problems[0]}"]
        edge_sets.append({frozenset((v, p)) for v, p in inst.parent.items()})
    delta_vertices = {v for pair in edge_sets[0] ^ edge_sets[1] for v in pair}
    space = end_space(e)
    fmap = frontier_map(t, space)
    ray_classes = set()
    for n in range(d):
        v = ray.vertex(n)
        if v in fmap:
            ray_classes.update(fmap[v])
    problems = []
    for name, sep in separator_family(t):
        sep_set = set(sep)
        for comp in t.components(removed=sep_set):
            comp_set = set(comp)
            if not comp_set & delta_vertices:
                continue
            tags = {cid for v in comp_set for cid in fmap.get(v, ())}
            if tags and not (tags & ray_classes):
                problems.append(
                    f"{name}: a component meeting the difference hosts only "
                    f"{sorted(tags)}")
    return problems
