"""Computable presentations of (possibly infinite) trees inside a host.

A TreeDescriptor gives a root and a finite list of parent rules; each
rule is total on a catalog vertex family and yields the parent address.
On every truncation the rules instantiate to a concrete parent map,
which the checkers test for spanning/coverage, acyclicity, connectivity
and (for normal trees) the chain property of component neighbourhoods.

Rules are (d, w)-independent as statements about the infinite graph;
only the finite *name* of a symbolic parent (the top over a diagonal
branch) depends on the truncation depth, so parent callbacks receive d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .addresses import Address, diagonal
from .descriptors import Descriptor
from .expressions import GraphExpr
from .resolve import adjacent
from .truncation import FiniteTruncation


@dataclass(frozen=True)
class Rule:
    kind: str
    spec: tuple                               # serializable parameters
    match: Callable[[Address], bool]
    parent: Callable[[Address, int], Address]  # (vertex, truncation depth)
    unbounded: bool                            # admits unbounded descent chains
    note: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.spec), "note": self.note}


@dataclass
class TreeDescriptor:
    host: GraphExpr
    root: Address
    rules: Tuple[Rule, ...]
    covers: Optional[Descriptor] = None   # None: spans every host vertex
    ends_summary: Dict[str, str] = field(default_factory=dict)
    min_d: int = 1
    min_w: int = 1
    name: str = ""

    def is_rayless(self) -> str:
        return "No" if any(r.unbounded for r in self.rules) else "Yes"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "tree",
            "host": self.host.render(),
            "name": self.name,
            "root": self.root.render(),
            "rules": [r.to_json() for r in self.rules],
            "covers": self.covers.render() if self.covers else None,
            "rayless": self.is_rayless(),
            "ends": dict(sorted(self.ends_summary.items())),
            "min_d": self.min_d,
            "min_w": self.min_w,
        }


@dataclass
class TreeInstance:
    tree: TreeDescriptor
    trunc: FiniteTruncation
    vertices: List[Address]
    parent: Dict[Address, Address]
    problems: List[str]
    virtual: List[Address] = field(default_factory=list)  # finite ancestor closure

    def edges(self) -> List[Tuple[Address, Address]]:
        return sorted(
            ((min(v, p, key=lambda a: a.sort_key()),
              max(v, p, key=lambda a: a.sort_key()))
             for v, p in self.parent.items()),
            key=lambda e: (e[0].sort_key(), e[1].sort_key()),
        )

    def depth_of(self, v: Address) -> Optional[int]:
        d = 0
        seen = set()
        while v != self.tree.root:
            if v in seen or v not in self.parent:
                return None
            seen.add(v)
            v = self.parent[v]
            d += 1
        return d

    def comparable(self, u: Address, v: Address) -> bool:
        return self._ancestor(u, v) or self._ancestor(v, u)

    def _ancestor(self, anc: Address, v: Address) -> bool:
        seen = set()
        while True:
            if v == anc:
                return True
            if v == self.tree.root or v in seen or v not in self.parent:
                return False
            seen.add(v)
            v = self.parent[v]


def instantiate(tree: TreeDescriptor, trunc: FiniteTruncation) -> TreeInstance:
    """Concrete parent map on a truncation, with every defect recorded."""
    problems: List[str] = []
    if tree.covers is None:
        covered = list(trunc.vertices)
    else:
        covered = trunc.instantiate(tree.covers)
        root_in = tree.root in set(covered)
        if not root_in and trunc.has_vertex(tree.root):
            covered.append(tree.root)
    covered_set = set(covered)
    if tree.root not in covered_set:
        problems.append(f"root {tree.root} missing from the truncation")
    parent: Dict[Address, Address] = {}
    virtual: List[Address] = []
    virtual_budget = 4 * max(1, trunc.d)
    queue = [v for v in covered if v != tree.root]
    from .resolve import resolves
    while queue:
        v = queue.pop(0)
        # rules apply in order; the first match owns the vertex, so the
        # ordered list acts as one piecewise rule that is total on the
        # non-root vertices
        hit = next((r for r in tree.rules if r.match(v)), None)
        if hit is None:
            problems.append(f"no rule matches {v}")
            continue
        p = hit.parent(v, trunc.d)
        if not adjacent(trunc.expr, v, p):
            problems.append(f"parent edge {v} -- {p} not a host edge")
            continue
        parent[v] = p
        if trunc.has_vertex(p):
            if tree.covers is not None and p not in covered_set \
                    and p != tree.root:
                problems.append(f"parent {p} of {v} outside the covered set")
            continue
        if p in covered_set or any(p == u for u in virtual):
            continue
        # finite ancestor closure: the parent sits just beyond the
        # truncation but resolves in the host
        if not resolves(trunc.expr, p):
            problems.append(f"parent {p} of {v} unresolvable in the host")
            continue
        if len(virtual) >= virtual_budget:
            problems.append(f"ancestor closure of {v} does not stay finite")
            continue
        virtual.append(p)
        covered_set.add(p)
        if p != tree.root:
            queue.append(p)
    return TreeInstance(tree, trunc,
                        sorted(covered_set - set(virtual),
                               key=lambda a: a.sort_key()),
                        parent, problems, virtual)


@dataclass
class CheckReport:
    checks: Dict[str, bool]
    details: List[str]

    def passed(self) -> bool:
        return all(self.checks.values())


def check_tree_on(tree: TreeDescriptor, trunc: FiniteTruncation) -> CheckReport:
    """Spanning/coverage, acyclicity and connectivity, exactly."""
    inst = instantiate(tree, trunc)
    checks: Dict[str, bool] = {}
    details = list(inst.problems)
    checks["rules_total"] = not inst.problems
    # acyclic + connected: every covered vertex reaches the root
    ok = True
    for v in inst.vertices:
        if inst.depth_of(v) is None:
            ok = False
            details.append(f"{v} does not reach the root")
            break
    checks["reaches_root"] = ok
    total = len(inst.vertices) + len(inst.virtual)
    checks["edge_count"] = len(inst.parent) == max(0, total - 1)
    if not checks["edge_count"]:
        details.append(
            f"{len(inst.parent)} parent edges for {total} vertices"
        )
    return CheckReport(checks, details)


def check_normality_on(tree: TreeDescriptor, trunc: FiniteTruncation) -> CheckReport:
    """Normality, exactly, on one truncation.

    A tree T is normal iff every host edge between T-vertices has
    tree-comparable ends and the T-neighbourhood of every component of
    (host - T) is a chain in the tree order.
    """
    inst = instantiate(tree, trunc)
    checks: Dict[str, bool] = {"instance": not inst.problems}
    details = list(inst.problems)
    inside = set(inst.vertices)
    ok_edges = True
    for a, b in trunc.edges:
        if a in inside and b in inside and not inst.comparable(a, b):
            ok_edges = False
            details.append(f"edge {a} -- {b} has incomparable ends")
    checks["edges_comparable"] = ok_edges
    ok_chains = True
    for comp in trunc.components(removed=inside):
        nbhd = sorted(
            {u for v in comp for u in trunc.adj[v] if u in inside},
            key=lambda a: a.sort_key(),
        )
        for i in range(len(nbhd)):
            for j in range(i + 1, len(nbhd)):
                if not inst.comparable(nbhd[i], nbhd[j]):
                    ok_chains = False
                    details.append(
                        f"neighbourhood of a component is not a chain: "
                        f"{nbhd[i]} vs {nbhd[j]}"
                    )
    checks["neighbourhoods_chains"] = ok_chains
    return CheckReport(checks, details)


@dataclass
class NormalityCertificate:
    """Evidence that a tree is normal in its host: per host edge family a
    comparability note, checked exactly on every truncation."""

    tree: TreeDescriptor
    notes: Tuple[str, ...]

    def check_on(self, trunc: FiniteTruncation) -> CheckReport:
        return check_normality_on(self.tree, trunc)

    def to_json(self) -> dict:
        return {"schema": 1, "kind": "normality", "notes": list(self.notes)}


# -- rule factories -------------------------------------------------------------


def _match_prefixed(prefix: Tuple, fn: Callable[[Address], bool]):
    n = len(prefix)

    def match(a: Address) -> bool:
        if len(a.steps) <= n or tuple(a.steps[:n]) != prefix:
            return False
        return fn(Address(a.steps[n:]))

    return match


def prefixed_rule(prefix: Tuple, rule: Rule) -> Rule:
    """Scope a rule under an address prefix (copy / side / under)."""
    if not prefix:
        return rule
    n = len(prefix)

    def match(a: Address) -> bool:
        return len(a.steps) > n and tuple(a.steps[:n]) == prefix and rule.match(
            Address(a.steps[n:])
        )

    def parent(a: Address, d: int) -> Address:
        inner = rule.parent(Address(a.steps[n:]), d)
        return Address(prefix + inner.steps)

    label = "/".join(s.render() for s in prefix)
    return Rule(
        kind=f"under[{label}].{rule.kind}",
        spec=(label,) + rule.spec,
        match=match,
        parent=parent,
        unbounded=rule.unbounded,
        note=rule.note,
    )
