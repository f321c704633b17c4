"""The ideal-rank scheme.

A graph gets rank 0 when its vertex set lies in the ideal; it gets rank
alpha when some described set X in the ideal leaves only components of
smaller rank.  The search explores a finite candidate catalog of
peeling sets per constructor, so Ranked verdicts come with a checkable
peeling witness, NoRank verdicts come with a certificate, and anything
outside the catalog is Unknown, never wrong.

Specialisations: the finite-sets ideal gives the classical rank of
rayless graphs, the below-kappa ideal gives the kappa-rank, and the
normally-spanned ideal of the host gives the normal rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .addresses import Address, LabelStep
from .cardinality import ALEPH0, ALEPH1, Cardinality, finite
from .descriptors import (
    AllOf, CentersOf, Descriptor, ExplicitSet, LevelSet, Region, SpineOf,
    TopsOf, UnionSet,
)
from .connectivity import is_connected
from .components import (
    RegionDescriptor, Unsupported, components_after_deletion,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, is_rayless_expr,
    subexpr_at, subexpressions, vertices_card,
)
from .ideals import Ideal, finite_sets, normally_spanned, sets_below
from .ordinals import ONE, ZERO, Ordinal, from_int, sup
from .trees import TreeDescriptor

YES, NO, UNKNOWN = "Yes", "No", "Unknown"

MAX_RECURSION = 12


class RankInputError(ValueError):
    pass


@dataclass(frozen=True)
class PeelChild:
    rid: str
    count: Cardinality
    region: RegionDescriptor
    witness: "PeelingTree"


@dataclass(frozen=True)
class PeelingTree:
    """Leaf: the vertex set lies in the ideal.  Node: peel X and recurse."""

    x: Optional[Descriptor] = None            # None: Base leaf
    children: Tuple[PeelChild, ...] = ()

    def is_base(self) -> bool:
        return self.x is None

    def alpha(self) -> Ordinal:
        if self.is_base():
            return ZERO
        return sup(c.witness.alpha() + 1 for c in self.children)

    def to_json(self) -> dict:
        if self.is_base():
            return {"base": True}
        return {
            "peel": self.x.render(),
            "children": [
                {
                    "region": c.rid,
                    "count": str(c.count),
                    "witness": c.witness.to_json(),
                }
                for c in self.children
            ],
        }


@dataclass(frozen=True)
class Certificate:
    kind: str        # 'self-similar-complete-core' | 'branching-tree-containment'
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class RankResult:
    status: str                       # Ranked / NoRank / Unknown
    alpha: Optional[Ordinal] = None
    witness: Optional[PeelingTree] = None
    certificate: Optional[Certificate] = None
    reason: str = ""
    all_witnesses: Tuple[Tuple[Ordinal, PeelingTree], ...] = ()

    def is_ranked(self) -> bool:
        return self.status == "Ranked"

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.status == "Ranked":
            out["rank"] = str(self.alpha)
            out["witness"] = self.witness.to_json()
        elif self.status == "NoRank":
            out["certificate"] = self.certificate.to_json()
        else:
            out["reason"] = self.reason
        return out


def ranked(alpha: Ordinal, witness: PeelingTree, all_w=()) -> RankResult:
    return RankResult("Ranked", alpha=alpha, witness=witness,
                      all_witnesses=tuple(all_w))


def no_rank(cert: Certificate) -> RankResult:
    return RankResult("NoRank", certificate=cert)


def unknown_rank(reason: str) -> RankResult:
    return RankResult("Unknown", reason=reason)


# -- negative certificates -------------------------------------------------------


def no_rank_certificates(e: GraphExpr, ideal: Ideal) -> Optional[Certificate]:
    """Rule (a): a self-similar uncountable complete core that no member
    of the ideal can break.  Rule (b), for the below-kappa ideals:
    structural containment of the kappa-branching tree (for kappa =
    aleph_0 the criterion degenerates to containing a ray)."""
    for sub in subexpressions(e):
        if isinstance(sub, Complete) and sub.count >= ALEPH1:
            if ideal.contains(sub, AllOf(())) == NO:
                return Certificate(
                    "self-similar-complete-core",
                    f"deleting any set of the ideal from {sub.render()} leaves "
                    f"a full copy of it",
                )
    if ideal.kind == "finite":
        if not is_rayless_expr(e):
            return Certificate(
                "branching-tree-containment",
                "the graph contains a ray, so no deletion of finite sets "
                "can terminate",
            )
        return None
    if ideal.kind == "below":
        kappa = ideal.bound
        for sub in subexpressions(e):
            hit = None
            if isinstance(sub, Tree) and not sub.count.is_finite() and sub.count >= kappa:
                hit = sub
            elif isinstance(sub, Complete) and sub.count >= kappa and sub.count.is_infinite():
                hit = sub  # the complete graph on kappa vertices hosts the tree
            if hit is not None:
                return Certificate(
                    "branching-tree-containment",
                    f"{hit.render()} contains the {kappa}-branching tree",
                )
    return None


# -- candidate catalog -------------------------------------------------------------


def _shift(desc: Descriptor, sel: str) -> Descriptor:
    """Re-express a sub-expression descriptor over the wrapping expression."""
    import dataclasses
    if isinstance(desc, UnionSet):
        return UnionSet(tuple(_shift(p, sel) for p in desc.parts))
    if isinstance(desc, ExplicitSet):
        if sel in ("left", "right"):
            from .addresses import SideStep
            return ExplicitSet(tuple(a.prepend(SideStep(sel)) for a in desc.addrs))
        return desc  # join/add_edge wrappers leave addresses unchanged
    return dataclasses.replace(desc, region=(sel,) + desc.region)


def candidate_sets(e: GraphExpr) -> List[Descriptor]:
    if isinstance(e, (FiniteGraph, Complete, Ray, Copies)):
        return []
    if isinstance(e, Comb):
        return [SpineOf(())]
    if isinstance(e, Star):
        return [CentersOf(())]
    if isinstance(e, Tree):
        return [LevelSet(0, ())]
    if isinstance(e, WithTops):
        return [AllOf(("base",)), TopsOf(())]
    if isinstance(e, HangAtTops):
        return [AllOf(("base", "base")), AllOf(("base",))]
    if isinstance(e, JoinVertex):
        own = ExplicitSet((Address((LabelStep(e.label),)),))
        out: List[Descriptor] = [own]
        for c in candidate_sets(e.base):
            out.append(UnionSet((own, _shift(c, "base"))))
        return out
    if isinstance(e, AddEdge):
        out = []
        ends = ExplicitSet((e.a, e.b))
        for c in candidate_sets(e.base):
            out.append(c)  # the extra edge is region-transparent
            out.append(UnionSet((ends, c)))
        return out
    if isinstance(e, DisjointUnion):
        lefts = [_shift(c, "left") for c in candidate_sets(e.left)] + [AllOf(("left",))]
        rights = [_shift(c, "right") for c in candidate_sets(e.right)] + [AllOf(("right",))]
        return [UnionSet((l, r)) for l in lefts for r in rights]
    return []


# -- the rank search ----------------------------------------------------------------


def ideal_rank(e: GraphExpr, ideal: Ideal,
               _depth: int = 0, _memo: Optional[Dict] = None) -> RankResult:
    if _memo is None:
        _memo = {}
    key = (e.render(), ideal.key())
    if key in _memo:
        return _memo[key]
    if _depth > MAX_RECURSION:
        return unknown_rank("recursion limit reached")

    if ideal.contains(e, AllOf(())) == YES:
        result = ranked(ZERO, PeelingTree(), [(ZERO, PeelingTree())])
        _memo[key] = result
        return result

    cert = no_rank_certificates(e, ideal)
    if cert is not None:
        result = no_rank(cert)
        _memo[key] = result
        return result

    found: List[Tuple[Ordinal, PeelingTree]] = []
    for x in candidate_sets(e):
        if ideal.contains(e, x) != YES:
            continue
        regions = components_after_deletion(e, x)
        if isinstance(regions, Unsupported):
            continue
        children: List[PeelChild] = []
        ok = True
        for r in regions:
            if r.expr is None or r.expr.render() == e.render():
                ok = False  # no structural progress
                break
            sub = ideal_rank(r.expr, ideal, _depth + 1, _memo)
            if not sub.is_ranked():
                ok = False
                break
            children.append(PeelChild(r.rid, r.count, r, sub.witness))
        if not ok:
            continue
        alpha = sup(c.witness.alpha() + 1 for c in children)
        found.append((alpha, PeelingTree(x, tuple(children))))

    if found:
        best_alpha, best_witness = found[0]
        for alpha, witness in found[1:]:
            if alpha < best_alpha:
                best_alpha, best_witness = alpha, witness
        result = ranked(best_alpha, best_witness, found)
        _memo[key] = result
        return result

    result = unknown_rank("no peeling candidate in the catalog applies")
    _memo[key] = result
    return result


def ideal_rank_in(host: GraphExpr, region: Region, ideal: Ideal) -> RankResult:
    """Rank of a sub-expression region inside the host (in-host rank).

    Membership runs against the host's ideal; on the catalog this agrees
    with ranking the induced expression directly except that base-case
    membership is decided at host level.
    """
    if ideal.contains(host, AllOf(region)) == YES:
        return ranked(ZERO, PeelingTree(), [(ZERO, PeelingTree())])
    return ideal_rank(subexpr_at(host, region), ideal)


# -- the named rank functions -----------------------------------------------------


class RaylessInputError(RankInputError):
    pass


def schmidt_rank(e: GraphExpr) -> RankResult:
    """The finite-sets rank; defined exactly for rayless graphs."""
    if not is_rayless_expr(e):
        raise RaylessInputError(
            f"the graph {e.render()} has a ray; the finite-sets rank is "
            f"defined for rayless graphs only"
        )
    return ideal_rank(e, finite_sets())


def kappa_rank(e: GraphExpr, kappa: Cardinality) -> RankResult:
    return ideal_rank(e, sets_below(kappa))


def normal_rank(e: GraphExpr) -> RankResult:
    if is_connected(e) != YES:
        raise RankInputError("normal rank wants a connected graph")
    return ideal_rank(e, normally_spanned(e))


def rank_transfer_bound(e: GraphExpr, x: Descriptor,
                        region: RegionDescriptor) -> Ordinal:
    """The normal rank of the region inside the host bounds the rank of
    the region together with its normally spanned attachment set."""
    ideal = normally_spanned(e)
    if ideal.contains(e, x) != YES:
        raise RankInputError("the attachment set must be normally spanned")
    sub = ideal_rank(region.expr, ideal)
    if not sub.is_ranked():
        raise RankInputError(f"region rank unavailable: {sub.reason}")
    return sub.alpha
