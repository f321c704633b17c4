"""End spaces of presented graphs.

An end is an equivalence class of rays: two rays are equivalent when no
finite vertex set separates their tails.  For catalog expressions the
end space is described exactly by finitely many classes, each with a
coarse count, a representative ray schema and a domination verdict
carrying a witness or a certificate.

Closures, dispersedness, the star-comb dichotomy (as budgeted finite
prefixes) and the reflects check against a subgraph tree all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple, Union

from .addresses import (
    Address, CopyStep, KVertStep, LabelStep, NodeStep, RayStep, RootStep,
    SideStep, Step, TopStep, UnderStep, diagonal,
)
from .cardinality import ALEPH0, ALEPH1, UNCOUNTABLE, Cardinality, finite
from .descriptors import (
    AllOf, BranchPrefix, CentersOf, ChildrenOf, Descriptor, ExplicitSet,
    LeavesOf, LevelSet, Progression, SpineOf, TopsOf, TopsThrough, UnionSet,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops,
)
from .resolve import _EvenBranch, descriptor_card, member, on_branch
from .truncation import FiniteTruncation, separator_family, truncate

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


@dataclass(frozen=True)
class RaySchema:
    """A concrete representative ray: vertex(n) is its n-th vertex."""

    kind: str                    # 'spine' | 'branch' | 'kray'
    prefix: Tuple[Step, ...] = ()
    path: Tuple = ()             # branch path for 'branch'
    start: int = 0
    stride: int = 1

    def vertex(self, n: int) -> Address:
        if self.kind == "spine":
            return Address(self.prefix + (RayStep(self.start + self.stride * n),))
        if self.kind == "kray":
            return Address(self.prefix + (KVertStep(self.start + self.stride * n),))
        if self.kind == "branch":
            if n == 0:
                return Address(self.prefix + (RootStep(),))
            path = diagonal(self.path, n)
            return Address(
                self.prefix + (RootStep(),) + tuple(NodeStep(i) for i in path)
            )
        raise ValueError(self.kind)

    def render(self) -> str:
        return f"{self.kind}@{self.vertex(0).render()}"


@dataclass(frozen=True)
class EndClass:
    cid: str
    count: Cardinality
    rep: RaySchema
    dominated: str                                   # Yes / No / Unknown
    hosts: Callable[[Address], bool]                 # ray-carrying vertices
    dominator: Optional[Address] = None              # witness when Yes
    certificate: str = ""                            # reason when No
    branch_region: Tuple[Step, ...] = ()             # for branch verdicts


@dataclass(frozen=True)
class EndSpaceDescriptor:
    expr: GraphExpr
    classes: Tuple[EndClass, ...]

    def get(self, cid: str) -> EndClass:
        for c in self.classes:
            if c.cid == cid:
                return c
        raise KeyError(cid)

    def count(self) -> Cardinality:
        total = finite(0)
        for c in self.classes:
            total = total.plus(c.count)
        return total

    def to_json(self) -> dict:
        return {
            "classes": [
                {
                    "id": c.cid,
                    "count": str(c.count),
                    "representative": c.rep.render(),
                    "dominated": c.dominated,
                    "dominator": c.dominator.render() if c.dominator else None,
                    "certificate": c.certificate,
                }
                for c in self.classes
            ]
        }


# verdict: 'All' | 'None' | 'Unknown' | ('branches', tuple-of-paths)
Verdict = Union[str, Tuple]


@dataclass(frozen=True)
class EndSubset:
    space: EndSpaceDescriptor
    verdicts: Dict[str, Verdict]

    def is_empty(self) -> Optional[bool]:
        vs = [self.verdicts.get(c.cid, "None") for c in self.space.classes]
        if any(v == "Unknown" for v in vs):
            return None
        return all(v == "None" for v in vs)

    def includes_class(self, cid: str) -> Verdict:
        return self.verdicts.get(cid, "None")

    def to_json(self) -> dict:
        out = {}
        for cid, v in sorted(self.verdicts.items()):
            if isinstance(v, tuple):
                out[cid] = {"branches": [".".join(map(str, p)) for p in v[1]]}
            else:
                out[cid] = v
        return out


def all_ends(e: GraphExpr) -> EndSubset:
    space = end_space(e)
    return EndSubset(space, {c.cid: "All" for c in space.classes})


def no_ends(e: GraphExpr) -> EndSubset:
    space = end_space(e)
    return EndSubset(space, {c.cid: "None" for c in space.classes})


# -- end space ------------------------------------------------------------------


def end_space(e: GraphExpr) -> EndSpaceDescriptor:
    return EndSpaceDescriptor(e, tuple(_classes(e, (), "")))


def _wrap_hosts(fn, prefix_step) -> Callable[[Address], bool]:
    def hosts(a: Address) -> bool:
        return len(a.steps) > 1 and a.steps[0] == prefix_step and fn(a.tail())

    return hosts


def _classes(e: GraphExpr, prefix: Tuple[Step, ...], idp: str) -> List[EndClass]:
    if isinstance(e, (FiniteGraph, Star)):
        return []
    if isinstance(e, (Ray, Comb)):
        return [EndClass(
            cid=idp + "end",
            count=finite(1),
            rep=RaySchema("spine", prefix),
            dominated=NO,
            hosts=lambda a: len(a.steps) == 1 and isinstance(a.steps[0], RayStep),
            certificate="locally finite: every vertex has degree at most 3",
        )]
    if isinstance(e, Tree):
        if e.count.is_finite() and e.count.n == 0:
            return []
        count = finite(1) if e.count == finite(1) else UNCOUNTABLE  # kappa^omega
        rep_path = (0,) if e.count.is_countable() else ("b1",)
        return [EndClass(
            cid=idp + "branches",
            count=count,
            rep=RaySchema("branch", prefix, rep_path),
            dominated=NO,
            hosts=lambda a: isinstance(a.steps[0], RootStep),
            certificate="tree: unique paths admit no infinite fan",
        )]
    if isinstance(e, WithTops):
        return [EndClass(
            cid=idp + "branches",
            count=UNCOUNTABLE,
            rep=RaySchema("branch", prefix, ("b1",)),
            dominated=YES,
            hosts=lambda a: isinstance(a.steps[0], RootStep),
            dominator=Address(prefix + (TopStep(("b1",)),)),
        )]
    if isinstance(e, Complete):
        if e.count.is_finite():
            return []
        dom_ix = 0 if e.count == ALEPH0 else "b1"
        return [EndClass(
            cid=idp + "end",
            count=finite(1),
            rep=RaySchema("kray", prefix),
            dominated=YES,
            hosts=lambda a: isinstance(a.steps[0], KVertStep),
            dominator=Address(prefix + (KVertStep(dom_ix),)),
        )]
    if isinstance(e, DisjointUnion):
        out = []
        for side, sub in (("left", e.left), ("right", e.right)):
            step = SideStep(side)
            for c in _classes(sub, prefix + (step,), idp + side + "."):
                out.append(replace(c, hosts=_wrap_hosts(c.hosts, step)))
        return out
    if isinstance(e, Copies):
        ix = 0 if e.count <= ALEPH0 else "b1"
        step = CopyStep(ix)
        out = []
        for c in _classes(e.base, prefix + (step,), idp + "copy."):
            def hosts(a: Address, inner=c.hosts) -> bool:
                return isinstance(a.steps[0], CopyStep) and inner(a.tail())
            out.append(replace(
                c, count=e.count.times(c.count), hosts=hosts,
            ))
        return out
    if isinstance(e, JoinVertex):
        return _join_classes(e, prefix, idp)
    if isinstance(e, AddEdge):
        return _classes(e.base, prefix, idp)
    if isinstance(e, HangAtTops):
        out = list(_classes(e.base, prefix, idp))
        step = UnderStep(("b1",))
        for c in _classes(e.child, prefix + (step,), idp + "under."):
            def hosts(a: Address, inner=c.hosts) -> bool:
                return isinstance(a.steps[0], UnderStep) and inner(a.tail())
            out.append(replace(c, count=ALEPH1.times(c.count), hosts=hosts))
        return out
    raise ValueError(f"unknown expression {type(e).__name__}")


def _join_classes(e: JoinVertex, prefix: Tuple[Step, ...], idp: str) -> List[EndClass]:
    base_classes = _classes(e.base, prefix, idp)
    join_addr = Address(prefix + (LabelStep(e.label),))
    out = []
    for c in base_classes:
        verdict = _attach_meets_class(e.base, e.attach, c)
        if verdict == "all":
            out.append(replace(c, dominated=YES, dominator=join_addr,
                               certificate=""))
        elif isinstance(verdict, tuple) and verdict[0] == "branch":
            path = verdict[1]
            def on_path(a: Address, p=path) -> bool:
                if not isinstance(a.steps[0], RootStep):
                    return False
                node = tuple(s.ix for s in a.steps[1:])
                return on_branch(node, p)
            out.append(EndClass(
                cid=c.cid + ".split:" + ".".join(map(str, path)),
                count=finite(1),
                rep=RaySchema("branch", prefix, path),
                dominated=YES,
                hosts=lambda a, f=c.hosts, g=on_path: f(a) and g(a),
                dominator=join_addr,
                branch_region=prefix,
            ))
            out.append(replace(
                c, hosts=lambda a, f=c.hosts, g=on_path: f(a) and not g(a),
            ))
        else:
            out.append(c)
    return out


def _attach_meets_class(base: GraphExpr, attach: Descriptor, c: EndClass):
    """Does the attach set meet the class's rays cofinally?

    'all' upgrades the whole class, ('branch', path) splits off one
    branch, None leaves the verdict alone.
    """
    if isinstance(attach, UnionSet):
        for p in attach.parts:
            v = _attach_meets_class(base, p, c)
            if v is not None:
                return v
        return None
    if isinstance(attach, ExplicitSet):
        return None
    card = descriptor_card(base, attach)
    if card.is_finite():
        return None
    if isinstance(attach, AllOf):
        # the whole vertex set of a region hosting the class's rays
        if attach.region == () or c.hosts(_probe(attach, c)):
            return "all"
        return None
    if isinstance(attach, (SpineOf, Progression)):
        return "all" if c.rep.kind == "spine" else None
    if isinstance(attach, LeavesOf):
        # a comb's teeth meet its spine cofinally through the tooth paths
        return "all" if c.rep.kind == "spine" and isinstance(base, Comb) else None
    if isinstance(attach, (BranchPrefix, _EvenBranch)):
        return ("branch", attach.path) if c.rep.kind == "branch" else None
    if isinstance(attach, (LevelSet, ChildrenOf, CentersOf, TopsOf)):
        return None
    return None


def _probe(attach: AllOf, c: EndClass) -> Address:
    return c.rep.vertex(2)


# -- closures -------------------------------------------------------------------


def closure_ends(e: GraphExpr, m: Descriptor) -> EndSubset:
    """The ends lying in the closure of the described vertex set."""
    space = end_space(e)
    verdicts = {c.cid: _closure_verdict(e, m, c) for c in space.classes}
    return EndSubset(space, verdicts)


def _closure_verdict(e: GraphExpr, m: Descriptor, c: EndClass) -> Verdict:
    if isinstance(m, UnionSet):
        best = "None"
        paths = []
        for p in m.parts:
            v = _closure_verdict(e, p, c)
            if v == "All":
                return "All"
            if v == "Unknown":
                best = "Unknown"
            if isinstance(v, tuple):
                paths.extend(v[1])
        if paths and best != "Unknown":
            return ("branches", tuple(paths))
        return best
    if descriptor_card(e, m).is_finite():
        return "None"
    return _closure_infinite(e, m, c)


def _closure_infinite(e: GraphExpr, m: Descriptor, c: EndClass) -> Verdict:
    if isinstance(e, (Ray, Comb)):
        return "All"  # locally finite and one-ended: every infinite set
    if isinstance(e, Tree) or isinstance(e, WithTops):
        if isinstance(m, AllOf):
            return "All"
        if isinstance(m, TopsOf) and isinstance(e, WithTops):
            return "All"  # a comb onto the tops exists along every branch
        if isinstance(m, TopsThrough):
            return ("branches", (m.node_path,)) if m.node_path else "All"
        if isinstance(m, (LevelSet, ChildrenOf)):
            return "None"
        if isinstance(m, (BranchPrefix, _EvenBranch)):
            return ("branches", (m.path,))
        return "Unknown"
    if isinstance(e, Complete):
        return "All"
    if isinstance(e, JoinVertex):
        return _closure_infinite(e.base, m, c)
    if isinstance(e, AddEdge):
        return _closure_infinite(e.base, m, c)
    if isinstance(e, DisjointUnion):
        side = "left" if c.cid.startswith("left.") else "right"
        sub = e.left if side == "left" else e.right
        local = _descend_class(c, side + ".")
        lm = _restrict_to_side(m, side)
        if lm is None:
            return "None"
        return _closure_verdict(sub, lm, local)
    if isinstance(e, Copies):
        if c.cid.startswith("copy."):
            local = _descend_class(c, "copy.")
            lm = _strip_region_selector(m, "base")
            if lm is None:
                return "None"
            return _closure_verdict(e.base, lm, local)
        return "Unknown"
    if isinstance(e, HangAtTops):
        inner = c.cid.startswith("under.")
        if isinstance(m, AllOf):
            if m.region == ():
                return "All"
            if m.region[0] == "base":
                if len(m.region) >= 2 and m.region[1] == "base":
                    return "None" if inner else "All"
                return "None" if inner else "All"
            if m.region[0] == "child":
                # outer branches reach the copies through their tops
                return "All"
        if isinstance(m, TopsOf) and m.region == ("base",):
            return "None" if inner else "All"
        if inner:
            local = _descend_class(c, "under.")
            lm = _strip_region_selector(m, "child")
            if lm is None:
                return "None"
            return _closure_verdict(e.child, lm, local)
        lm = _strip_region_selector(m, "base")
        if lm is not None:
            return _closure_verdict(e.base, lm, _descend_class(c, ""))
        return "Unknown"
    return "Unknown"


def _descend_class(c: EndClass, idp: str) -> EndClass:
    cid = c.cid[len(idp):] if idp and c.cid.startswith(idp) else c.cid
    return replace(c, cid=cid, rep=RaySchema(c.rep.kind, (), c.rep.path))


def _restrict_to_side(m: Descriptor, side: str) -> Optional[Descriptor]:
    if isinstance(m, ExplicitSet):
        kept = tuple(
            a.tail() for a in m.addrs
            if isinstance(a.steps[0], SideStep) and a.steps[0].side == side
        )
        return ExplicitSet(kept) if kept else None
    region = getattr(m, "region", None)
    if region and region[0] == side:
        return replace(m, region=region[1:])
    return None


def _strip_region_selector(m: Descriptor, sel: str) -> Optional[Descriptor]:
    if isinstance(m, ExplicitSet):
        kept = tuple(
            a.tail() for a in m.addrs
            if isinstance(a.steps[0], (CopyStep, UnderStep))
        )
        return ExplicitSet(kept) if kept else None
    region = getattr(m, "region", None)
    if region is None:
        return None
    if region and region[0] == sel:
        return replace(m, region=region[1:])
    if not region:
        return m  # structural descriptors distribute over the members
    return None


def is_dispersed(e: GraphExpr, u: Descriptor) -> str:
    empty = closure_ends(e, u).is_empty()
    if empty is None:
        return UNKNOWN
    return YES if empty else NO


def is_dominated(e: GraphExpr, cid: str) -> Tuple[str, Optional[Address], str]:
    """Verdict, witness address (when Yes), certificate text (when No)."""
    c = end_space(e).get(cid)
    return c.dominated, c.dominator, c.certificate


def all_ends_dominated(e: GraphExpr) -> Tuple[str, Optional[str]]:
    """(verdict, undominated class id)."""
    space = end_space(e)
    for c in space.classes:
        if c.dominated == NO:
            return NO, c.cid
        if c.dominated == UNKNOWN:
            return UNKNOWN, c.cid
    return YES, None


# -- star-comb search -------------------------------------------------------------


@dataclass(frozen=True)
class CombWitness:
    spine: Tuple[Address, ...]            # path prefix
    teeth: Tuple[Tuple[Address, ...], ...]  # disjoint paths, first vertex on spine

    kind = "comb"


@dataclass(frozen=True)
class StarWitness:
    center: Address
    paths: Tuple[Tuple[Address, ...], ...]  # internally disjoint, ends in U

    kind = "star"


@dataclass(frozen=True)
class Exhausted:
    reason: str
    teeth_found: int = 0

    kind = "exhausted"


def star_comb_search(t: FiniteTruncation, u: List[Address], budget: int):
    """A comb prefix or a star prefix with `budget` branches into u.

    Deterministic tree-growing on the breadth-first spanning tree from
    the least vertex, with an exact flow-based star sweep as fallback.
    Exhausted only reports failure; on the catalog instances it occurs
    exactly when too little of u is within reach.
    """
    u_set = {v for v in u if t.has_vertex(v)}
    if budget < 1:
        raise ValueError("budget must be >= 1")
    comps = t.components()
    if len(comps) != 1:
        raise ValueError("star_comb_search wants a connected input")
    if len(u_set) < budget:
        return Exhausted("target set smaller than budget", 0)
    root = t.vertices[0]
    parent, order = _bfs_tree(t, root)
    children: Dict[Address, List[Address]] = {v: [] for v in t.vertices}
    for v, p in parent.items():
        children[p].append(v)
    for v in children:
        children[v].sort(key=lambda a: a.sort_key())
    # subtree u-counts
    ucount = {v: (1 if v in u_set else 0) for v in t.vertices}
    for v in reversed(order):
        if v in parent:
            ucount[parent[v]] += ucount[v]

    def descend_to_u(start: Address) -> Tuple[Address, ...]:
        path = [start]
        v = start
        while v not in u_set:
            nxt = [c for c in children[v] if ucount[c] > 0]
            v = nxt[0]
            path.append(v)
        return tuple(path)

    # walk from the root toward the u-heaviest subtree, harvesting at most
    # one tooth per spine vertex (teeth are disjoint paths whose first
    # vertex lies on the spine)
    spine: List[Address] = []
    teeth: List[Tuple[Address, ...]] = []
    v = root
    while True:
        spine.append(v)
        active = [c for c in children[v] if ucount[c] > 0]
        fan = len(active) + (1 if v in u_set else 0)
        if fan >= budget:
            paths = []
            if v in u_set:
                paths.append((v,))
            for c in active:
                paths.append((v,) + descend_to_u(c))
                if len(paths) == budget:
                    break
            return StarWitness(v, tuple(paths))
        active.sort(key=lambda c: (-ucount[c], c.sort_key()))
        follow = active[0] if active else None
        if v in u_set:
            teeth.append((v,))
        elif len(active) > 1:
            teeth.append((v,) + descend_to_u(active[1]))
        if len(teeth) >= budget:
            return CombWitness(tuple(spine), tuple(teeth[:budget]))
        if follow is None:
            break
        v = follow
    star = _exact_star(t, u_set, budget)
    if star is not None:
        return star
    return Exhausted("no comb prefix and no star prefix at this budget",
                     len(teeth))


def _bfs_tree(t: FiniteTruncation, root: Address):
    parent: Dict[Address, Address] = {}
    order = [root]
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for w in t.adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
                queue.append(w)
    return parent, order


def _exact_star(t: FiniteTruncation, u_set, budget: int):
    """Exact search for a vertex with `budget` internally disjoint paths
    into u, by unit-capacity flow with split vertices."""
    for center in t.vertices:
        if len(t.adj[center]) < budget:
            continue
        paths = _vertex_disjoint_paths(t, center, u_set, budget)
        if paths is not None:
            return StarWitness(center, tuple(paths))
    return None


def _vertex_disjoint_paths(t: FiniteTruncation, source: Address, targets,
                           budget: int):
    """Up to `budget` internally vertex-disjoint source->targets paths
    (Ford-Fulkerson with split vertices); None when fewer exist."""
    if source in targets:
        return None
    cap: Dict[Tuple, Dict[Tuple, int]] = {}

    def add_edge(a, b, c):
        cap.setdefault(a, {}).setdefault(b, 0)
        cap.setdefault(b, {}).setdefault(a, 0)
        cap[a][b] += c

    for v in t.vertices:
        if v == source:
            continue
        add_edge((v, "in"), (v, "out"), 1)
    for a, b in t.edges:
        au = ("S", "out") if a == source else (a, "out")
        bu = ("S", "out") if b == source else (b, "out")
        av = (a, "in")
        bv = (b, "in")
        if a == source:
            add_edge(au, bv, 1)
        elif b == source:
            add_edge(bu, av, 1)
        else:
            add_edge(au, bv, 1)
            add_edge(bu, av, 1)
    sink = ("T", "in")
    for v in targets:
        add_edge((v, "out"), sink, 1)
    src = ("S", "out")
    flow = 0
    while flow < budget:
        # BFS augmenting path
        prev = {src: None}
        queue = [src]
        found = False
        while queue and not found:
            x = queue.pop(0)
            for y, c in sorted(cap.get(x, {}).items(), key=lambda kv: str(kv[0])):
                if c > 0 and y not in prev:
                    prev[y] = x
                    if y == sink:
                        found = True
                        break
                    queue.append(y)
        if not found:
            return None
        y = sink
        while prev[y] is not None:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    # decompose the flow into paths
    paths = []
    for _ in range(budget):
        path = [source]
        x = src
        while True:
            nxts = [y for y, c in cap.get(x, {}).items()
                    if cap.get(y, {}).get(x, 0) > 0 and _forward(x, y)]
            nxts.sort(key=str)
            y = nxts[0]
            cap[y][x] -= 1
            cap[x][y] += 1
            if y == sink:
                break
            if y[1] == "in":
                path.append(y[0])
            x = y
        paths.append(tuple(path))
    return paths


def _forward(x, y) -> bool:
    # genuine flow edges go out->in or out->sink
    return x[1] == "out" and (y[1] == "in")


def validate_star_comb(t: FiniteTruncation, u: List[Address], witness) -> List[str]:
    """Direct inspection: paths pairwise (internally) disjoint, ending in u."""
    problems = []
    u_set = set(u)
    if isinstance(witness, CombWitness):
        for i in range(len(witness.spine) - 1):
            if not adjacent_in(t, witness.spine[i], witness.spine[i + 1]):
                problems.append("spine is not a path")
        spine_set = set(witness.spine)
        if len(spine_set) != len(witness.spine):
            problems.append("spine repeats a vertex")
        seen = set()
        for tooth in witness.teeth:
            if tooth[-1] not in u_set:
                problems.append(f"tooth misses the target set: {tooth[-1]}")
            if tooth[0] not in spine_set:
                problems.append("tooth does not start on the spine")
            for i in range(len(tooth) - 1):
                if not adjacent_in(t, tooth[i], tooth[i + 1]):
                    problems.append("tooth is not a path")
            for v in tooth:
                if v in seen or (v in spine_set and v != tooth[0]):
                    problems.append(f"teeth overlap at {v}")
                seen.add(v)
        return problems
    if isinstance(witness, StarWitness):
        interior = set()
        for path in witness.paths:
            if path[0] != witness.center and path[-1] != witness.center:
                if witness.center not in path:
                    problems.append("path misses the centre")
            if path[-1] not in u_set and path[0] not in u_set:
                problems.append("path misses the target set")
            for i in range(len(path) - 1):
                if not adjacent_in(t, path[i], path[i + 1]):
                    problems.append("star path is not a path")
            for v in path:
                if v == witness.center:
                    continue
                if v in interior:
                    problems.append(f"star paths overlap at {v}")
                interior.add(v)
        return problems
    problems.append("witness is Exhausted")
    return problems


def adjacent_in(t: FiniteTruncation, a: Address, b: Address) -> bool:
    return b in t.adj.get(a, ())


# -- boundary / frontier -----------------------------------------------------------


def is_boundary(e: GraphExpr, a: Address, d: int) -> bool:
    """Does this truncation vertex extend along a ray of the full graph?"""
    s0 = a.steps[0]
    if isinstance(e, (Ray, Comb)):
        return isinstance(s0, RayStep) and len(a.steps) == 1 and s0.n == d - 1
    if isinstance(e, (FiniteGraph, Star)):
        return False
    if isinstance(e, Tree):
        if e.count.is_finite() and e.count.n == 0:
            return False
        return isinstance(s0, RootStep) and len(a.steps) == d
    if isinstance(e, WithTops):
        if isinstance(s0, TopStep):
            return False
        return is_boundary(e.base, a, d)
    if isinstance(e, Complete):
        return e.count.is_infinite()
    if isinstance(e, DisjointUnion):
        if not isinstance(s0, SideStep):
            return False
        side = e.left if s0.side == "left" else e.right
        return is_boundary(side, a.tail(), d)
    if isinstance(e, Copies):
        return isinstance(s0, CopyStep) and is_boundary(e.base, a.tail(), d)
    if isinstance(e, JoinVertex):
        if len(a.steps) == 1 and isinstance(s0, LabelStep) and s0.name == e.label:
            return False
        return is_boundary(e.base, a, d)
    if isinstance(e, AddEdge):
        return is_boundary(e.base, a, d)
    if isinstance(e, HangAtTops):
        if isinstance(s0, UnderStep):
            return is_boundary(e.child, a.tail(), d)
        return is_boundary(e.base, a, d)
    raise ValueError(f"unknown expression {type(e).__name__}")


def frontier_map(t: FiniteTruncation, space: EndSpaceDescriptor) -> Dict[Address, List[str]]:
    """Boundary vertices tagged with the end classes whose rays they carry."""
    out: Dict[Address, List[str]] = {}
    for v in t.vertices:
        if not is_boundary(t.expr, v, t.d):
            continue
        tags = [c.cid for c in space.classes if c.hosts(v)]
        if tags:
            out[v] = tags
    return out


def _verdict_admits(verdict: Verdict, v: Address, cls: EndClass) -> bool:
    if verdict == "All":
        return True
    if verdict in ("None", "Unknown"):
        return False
    # branch subset: the vertex must sit on one of the listed branches
    kind, paths = verdict
    node = tuple(s.ix for s in v.steps[1:]) if v.steps and isinstance(v.steps[0], RootStep) else None
    if node is None:
        return False
    return any(on_branch(node, p) for p in paths)


# -- reflects check -----------------------------------------------------------------


@dataclass
class ReflectsReport:
    verdict: str                    # Pass / Fail / Unknown
    witness: str = ""
    cells: List[str] = field(default_factory=list)


def reflects_check(e: GraphExpr, tree, psi: EndSubset,
                   sweep: Optional[List[Tuple[int, int]]] = None) -> ReflectsReport:
    """Does the tree reflect the end subset psi?

    Symbolic side: the tree's ends summary must realise exactly the
    classes of psi.  Truncation side: for every catalog separator, each
    component hosting psi-rays contains exactly one tail of the tree.
    """
    from .trees import instantiate

    space = psi.space
    for c in space.classes:
        want = psi.includes_class(c.cid)
        have = tree.ends_summary.get(c.cid, "none")
        if want == "All" and have != "all":
            return ReflectsReport("Fail", f"class {c.cid} not realised by the tree")
        if want == "None" and have == "all":
            return ReflectsReport("Fail", f"class {c.cid} realised but outside psi")
        if want == "Unknown":
            return ReflectsReport("Unknown", f"class {c.cid} closure unknown")

    if sweep is None:
        sweep = [(d, w) for d in (3, 4) for w in (2, 3)]
    cells = []
    for d, w in sweep:
        if d < tree.min_d or w < tree.min_w:
            continue
        t = truncate(e, d, w)
        inst = instantiate(tree, t)
        if inst.problems:
            return ReflectsReport(
                "Fail", f"tree does not instantiate at d={d}, w={w}: "
                        f"{inst.problems[0]}")
        fmap = frontier_map(t, space)
        psi_frontier = {
            v for v, tags in fmap.items()
            if any(_verdict_admits(psi.includes_class(cid), v, space.get(cid))
                   for cid in tags)
        }
        tree_edges = [(v, p) for v, p in inst.parent.items()]
        covered = set(inst.vertices)
        virtual = set(inst.virtual)
        for name, sep in separator_family(t):
            sep_set = set(sep)
            for comp in t.components(removed=sep_set):
                comp_set = set(comp)
                hosted = psi_frontier & comp_set
                if not hosted:
                    continue
                # ancestor-closure vertices just beyond the truncation act
                # as connectors for the component of their children
                ext = comp_set | {
                    p for v, p in inst.parent.items()
                    if p in virtual and v in comp_set
                }
                pieces = _tree_pieces(ext, tree_edges, covered | virtual)
                tails = sum(1 for piece in pieces if piece & hosted)
                if tails != 1:
                    return ReflectsReport(
                        "Fail",
                        f"component at {name} (d={d}, w={w}) holds {tails} "
                        f"tree tails", cells)
            cells.append(f"d={d} w={w} {name}: ok")
    return ReflectsReport("Pass", "", cells)


def _tree_pieces(comp_set, tree_edges, covered):
    """Connected pieces of the tree restricted to a vertex set."""
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    members = comp_set & covered
    for v in members:
        parent.setdefault(v, v)
    for a, b in tree_edges:
        if a in members and b in members:
            union(a, b)
    groups: Dict[Address, set] = {}
    for v in members:
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())
