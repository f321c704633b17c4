"""Ideals of vertex sets, as first-class membership oracles.

Three ideals drive the rank functions: all finite sets, all sets of
size below a cardinal, and the sets normally spanned in a fixed host.
Membership of a described set is decided by catalog rules and returns
Yes, No or Unknown; Yes answers are sound, and the ideal laws (empty
set, finite unions, sub-descriptors) are property-tested elsewhere.

The normally-spanned oracle leans on two facts: countable sets are
normally spanned in a connected host, and dispersed sets are normally
spanned outright.  The negative rules encode the cited obstructions
(no normal spanning tree over an uncountable branching tree with all
tops; uncountable complete graphs are normally spanned only when
countable).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cardinality import ALEPH0, Cardinality, finite
from .descriptors import (
    AllOf, Descriptor, ExplicitSet, TopsOf, UnionSet,
)
from .expressions import (
    AddEdge, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Star, Tree, WithTops, subexpr_at, vertices_card,
)
from .resolve import descriptor_card

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


@dataclass(frozen=True)
class Ideal:
    kind: str                      # 'finite' | 'below' | 'normally_spanned'
    bound: Optional[Cardinality] = None
    host: Optional[GraphExpr] = None

    def key(self) -> str:
        if self.kind == "finite":
            return "finite"
        if self.kind == "below":
            return f"below:{self.bound}"
        return f"ns:{self.host.render()}"

    def describe(self) -> str:
        if self.kind == "finite":
            return "finite sets"
        if self.kind == "below":
            return f"sets of size below {self.bound}"
        return "normally spanned sets of the host"

    def contains(self, e: GraphExpr, x: Descriptor) -> str:
        if self.kind == "finite":
            return YES if descriptor_card(e, x).is_finite() else NO
        if self.kind == "below":
            return YES if descriptor_card(e, x) < self.bound else NO
        return _ns_contains(e, x)


def finite_sets() -> Ideal:
    return Ideal("finite")


def sets_below(bound: Cardinality) -> Ideal:
    if bound <= ALEPH0:
        return Ideal("finite") if bound == ALEPH0 else Ideal("below", bound=bound)
    return Ideal("below", bound=bound)


def normally_spanned(host: GraphExpr) -> Ideal:
    return Ideal("normally_spanned", host=host)


def _subsumed(e: GraphExpr, p: Descriptor, q: Descriptor) -> bool:
    """Is p contained in q, by the catalog rules?"""
    if p is q:
        return False
    if not isinstance(q, AllOf):
        return False
    region = getattr(p, "region", None)
    if region is not None and region[: len(q.region)] == q.region:
        return True
    if isinstance(p, ExplicitSet):
        from .resolve import member
        return all(member(e, q, a) for a in p.addrs)
    return False


def _ns_contains(e: GraphExpr, x: Descriptor) -> str:
    parts = x.parts if isinstance(x, UnionSet) else (x,)
    parts = tuple(
        p for p in parts
        if not any(_subsumed(e, p, q) for q in parts)
    )
    verdicts = [_ns_one(e, p) for p in parts]
    if NO in verdicts:
        return NO
    if all(v == YES for v in verdicts):
        uncountable = [
            p for p, v in zip(parts, verdicts)
            if not descriptor_card(e, p).is_countable()
        ]
        if len(uncountable) <= 1:
            return YES
        return _ns_union_of_trees(e, parts)
    return UNKNOWN


def _ns_union_of_trees(e: GraphExpr, parts) -> str:
    """Several uncountable Yes parts merge only in the linked-tree case:
    every uncountable part is the vertex set of a branching-tree region,
    and catalog hosts link their tree regions through single attachment
    vertices, so the normal trees combine into one."""
    for p in parts:
        if descriptor_card(e, p).is_countable():
            continue
        if not isinstance(p, AllOf):
            return UNKNOWN
        if not isinstance(subexpr_at(e, p.region), Tree):
            return UNKNOWN
    return YES


def _ns_one(e: GraphExpr, p: Descriptor) -> str:
    card = descriptor_card(e, p)
    if card.is_countable():
        return YES  # countable sets are normally spanned in a connected host
    if isinstance(p, TopsOf):
        # with all branches topped, a normally spanned top set would make
        # the whole graph normally spanned, against the cited obstruction
        return NO
    if isinstance(p, AllOf):
        return _ns_region(subexpr_at(e, p.region))
    from .ends import is_dispersed
    disp = is_dispersed(e, p)
    if disp == YES:
        return YES  # dispersed sets are normally spanned
    return UNKNOWN


def _ns_region(sub: GraphExpr) -> str:
    """Is the whole vertex set of this region normally spanned?

    For connected regions this is exactly the normal-spanning-tree
    verdict, so the oracle defers to the construction catalog; the
    disconnected wrappers reason over their parts."""
    if vertices_card(sub).is_countable():
        return YES
    if isinstance(sub, Star):
        return YES  # rayless, hence dispersed
    if isinstance(sub, DisjointUnion):
        l, r = _ns_region(sub.left), _ns_region(sub.right)
        if NO in (l, r):
            return NO
        if l == r == YES:
            countable = vertices_card(sub.left).is_countable() or \
                vertices_card(sub.right).is_countable()
            return YES if countable else UNKNOWN
        return UNKNOWN
    if isinstance(sub, Copies):
        inner = _ns_region(sub.base)
        if inner == NO:
            return NO
        return UNKNOWN
    from .spanning import normal_spanning_tree
    status = normal_spanning_tree(sub).status
    if status == "Tree":
        return YES
    if status == "None":
        return NO
    return UNKNOWN
