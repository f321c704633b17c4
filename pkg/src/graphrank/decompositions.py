"""Rayless tree-decompositions into ideal parts, both directions.

A peeling witness turns into a decomposition by the star-join recipe: a
base leaf becomes the trivial single-part decomposition, and a peel
becomes a fresh central node carrying the peeled set, joined to one
node per component, with every part below widened by the peeled set.
Conversely a witness-backed decomposition yields the rank bound given
by the finite-sets rank of its decomposition tree.

Decomposition trees here are symbolic (finitely many counted child
families per node); they instantiate on truncations for the exact
(T1)-(T3) checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .addresses import Address
from .cardinality import Cardinality, finite
from .components import RegionDescriptor, Unsupported, components_after_deletion
from .descriptors import AllOf, Descriptor, parse_descriptor
from .expressions import GraphExpr
from .ideals import Ideal
from .ordinals import ZERO, Ordinal
from .ranks import PeelChild, PeelingTree, RankResult
from .resolve import member
from .truncation import FiniteTruncation, truncate


class DecompositionError(ValueError):
    pass


@dataclass
class DecompInstance:
    nodes: List[str]
    edges: List[Tuple[str, str]]
    parts: Dict[str, FrozenSet[Address]]


@dataclass
class TreeDecomposition:
    host: GraphExpr
    ideal: Ideal
    witness: PeelingTree

    # -- structure ---------------------------------------------------------

    def is_rayless(self) -> str:
        # star-join trees have depth bounded by the peeling depth
        return "Yes"

    def tree_rank(self) -> Ordinal:
        """Finite-sets rank of the decomposition tree.

        Finitely many members of finite-count families can be absorbed
        into the deleted set, so they contribute their own rank; every
        infinite family contributes its member rank plus one.
        """
        return _tree_rank(self.witness)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "tree_decomposition",
            "host": self.host.render(),
            "ideal": self.ideal.key(),
            "witness": self.witness.to_json(),
            "tree_rank": str(self.tree_rank()),
            "rayless": self.is_rayless(),
        }

    # -- concrete form on a truncation --------------------------------------

    def instantiate(self, trunc: FiniteTruncation) -> DecompInstance:
        inst = DecompInstance([], [], {})
        member_truncs: Dict[str, FiniteTruncation] = {}

        def member_trunc(expr: GraphExpr) -> FiniteTruncation:
            key = expr.render()
            if key not in member_truncs:
                member_truncs[key] = (
                    trunc if key == trunc.expr.render()
                    else truncate(expr, trunc.d, trunc.w)
                )
            return member_truncs[key]

        have = set(trunc.vertices)

        def embed_all(chain, vertices):
            out = set()
            for v in vertices:
                h = chain(v)
                if h in have:
                    out.add(h)
            return frozenset(out)

        def walk(witness: PeelingTree, expr: GraphExpr, chain, above: FrozenSet[Address],
                 node_id: str):
            mt = member_trunc(expr)
            inst.nodes.append(node_id)
            if witness.is_base():
                inst.parts[node_id] = embed_all(chain, mt.vertices) | above
                return
            x_local = [v for v in mt.vertices if member(expr, witness.x, v)]
            x_host = embed_all(chain, x_local)
            inst.parts[node_id] = x_host | above
            widened = above | x_host
            for child in witness.children:
                region = child.region
                params = sorted(
                    {region.param_of(v) for v in mt.vertices if region.contains(v)}
                    if region.param_of is not None else {region.canonical_param},
                    key=lambda p: str(p),
                )
                for ix, param in enumerate(params):
                    child_id = f"{node_id}/{child.rid}[{_ptxt(param)}]"
                    if region.embed is None:
                        raise DecompositionError(
                            f"region {child.rid} carries no embedding")
                    def child_chain(local, _chain=chain, _param=param,
                                    _embed=region.embed):
                        return _chain(_embed.to_host(local, _param))
                    inst.edges.append((node_id, child_id))
                    walk(child.witness, child.region.expr, child_chain,
                         widened, child_id)

        walk(self.witness, self.host, lambda a: a, frozenset(), "t*")
        return inst


def _ptxt(param) -> str:
    if isinstance(param, tuple):
        return ".".join(_ptxt(p) for p in param if p is not None) or "-"
    return str(param)


def _tree_rank(w: PeelingTree) -> Ordinal:
    if _finite_shape(w):
        return ZERO
    best = ZERO
    for c in w.children:
        r = _tree_rank(c.witness)
        if c.count.is_finite():
            contrib = r
        else:
            contrib = r + 1
        if best < contrib:
            best = contrib
    return best


def _finite_shape(w: PeelingTree) -> bool:
    if w.is_base():
        return True
    return all(c.count.is_finite() and _finite_shape(c.witness)
               for c in w.children)


# -- the two directions of the rank/decomposition translation ---------------------


def rank_to_decomposition(e: GraphExpr, witness: PeelingTree,
                          ideal: Ideal) -> TreeDecomposition:
    """The star-join construction applied to a peeling witness."""
    _check_witness(e, witness, ideal)
    return TreeDecomposition(e, ideal, witness)


def _check_witness(e: GraphExpr, w: PeelingTree, ideal: Ideal):
    if w.is_base():
        if ideal.contains(e, AllOf(())) != "Yes":
            raise DecompositionError(
                f"base leaf over {e.render()}: vertex set not in the ideal")
        return
    if ideal.contains(e, w.x) != "Yes":
        raise DecompositionError(f"peeled set {w.x.render()} not in the ideal")
    regions = components_after_deletion(e, w.x)
    if isinstance(regions, Unsupported):
        raise DecompositionError(f"peel not in the catalog: {regions.reason}")
    by_rid = {r.rid: r for r in regions}
    for c in w.children:
        if c.rid not in by_rid:
            raise DecompositionError(f"witness region {c.rid} unknown")
        _check_witness(by_rid[c.rid].expr, c.witness, ideal)


def decomposition_to_rank(e: GraphExpr, td: TreeDecomposition,
                          ideal: Ideal) -> Tuple[Ordinal, PeelingTree]:
    """Rank bound carried by a rayless decomposition into ideal parts:
    the finite-sets rank of its decomposition tree, together with the
    induced peeling (peel the union of parts over the deleted tree set)."""
    if td.is_rayless() != "Yes":
        raise DecompositionError("decomposition tree is not rayless")
    _check_witness(e, td.witness, ideal)
    return td.tree_rank(), td.witness


# -- verification -------------------------------------------------------------------


@dataclass
class DecompCheck:
    cells: Dict[str, Dict[str, bool]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def passed(self) -> bool:
        return not self.failures and all(
            ok for cell in self.cells.values() for ok in cell.values()
        )


def verify_decomposition(e: GraphExpr, td, sweep=None) -> DecompCheck:
    """Exact (T1)-(T3) checks over a truncation sweep, plus raylessness."""
    report = DecompCheck()
    if td.is_rayless() != "Yes":
        report.failures.append("decomposition tree is not rayless")
        return report
    if sweep is None:
        sweep = [(d, w) for d in (2, 3, 4) for w in (2, 3)]
    for d, w in sweep:
        trunc = truncate(e, d, w)
        inst = td.instantiate(trunc)
        cell: Dict[str, bool] = {}
        covered = set()
        for part in inst.parts.values():
            covered |= part
        cell["T1_cover"] = covered == set(trunc.vertices)
        if not cell["T1_cover"]:
            missing = sorted(set(trunc.vertices) - covered, key=lambda a: a.sort_key())
            report.failures.append(
                f"d={d} w={w}: vertices outside every part: "
                f"{[v.render() for v in missing[:4]]}")
        ok_edges = True
        for a, b in trunc.edges:
            if not any(a in part and b in part for part in inst.parts.values()):
                ok_edges = False
                report.failures.append(
                    f"d={d} w={w}: edge {a} -- {b} inside no part")
                break
        cell["T2_edges"] = ok_edges
        adj: Dict[str, List[str]] = {n: [] for n in inst.nodes}
        for x, y in inst.edges:
            adj[x].append(y)
            adj[y].append(x)
        ok_conn = True
        for v in trunc.vertices:
            holding = [n for n in inst.nodes if v in inst.parts[n]]
            if not holding:
                continue
            seen = {holding[0]}
            stack = [holding[0]]
            hold_set = set(holding)
            while stack:
                n = stack.pop()
                for m in adj[n]:
                    if m in hold_set and m not in seen:
                        seen.add(m)
                        stack.append(m)
            if seen != hold_set:
                ok_conn = False
                report.failures.append(
                    f"d={d} w={w}: nodes holding {v} are disconnected")
                break
        cell["T3_connected"] = ok_conn
        report.cells[f"d={d},w={w}"] = cell
    return report


# -- portable artifacts ---------------------------------------------------------------


def witness_from_json(e: GraphExpr, ideal: Ideal, doc: dict) -> PeelingTree:
    """Rebuild a peeling witness from its JSON document, recomputing the
    component regions so the result is directly checkable."""
    if doc.get("base"):
        return PeelingTree()
    x = parse_descriptor(doc["peel"])
    regions = components_after_deletion(e, x)
    if isinstance(regions, Unsupported):
        raise DecompositionError(f"peel not in the catalog: {regions.reason}")
    by_rid = {r.rid: r for r in regions}
    children = []
    for c in doc["children"]:
        rid = c["region"]
        if rid not in by_rid:
            raise DecompositionError(f"unknown region {rid!r} in witness")
        region = by_rid[rid]
        sub = witness_from_json(region.expr, ideal, c["witness"])
        children.append(PeelChild(rid, region.count, region, sub))
    return PeelingTree(x, tuple(children))
