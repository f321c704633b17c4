"""Portable JSON artifacts: trees, decompositions and their round trip.

Tree artifacts serialise the rule list by kind and parameters; this
module rebuilds live rules from those documents so an artifact can be
verified (or deliberately tampered with) independently of the code path
that produced it.
"""

from __future__ import annotations

from typing import List, Tuple

from .addresses import Address, CopyStep, LabelStep, UnderStep, parse_address
from .descriptors import parse_descriptor
from .expressions import GraphExpr
from .ideals import Ideal, finite_sets, normally_spanned, sets_below
from .cardinality import Cardinality
from .parser import parse
from .trees import Rule, TreeDescriptor, prefixed_rule
from . import rulekit as rk


class ArtifactError(ValueError):
    pass


def ideal_from_key(key: str, host: GraphExpr) -> Ideal:
    if key == "finite":
        return finite_sets()
    if key.startswith("below:"):
        return sets_below(Cardinality.parse(key.split(":", 1)[1]))
    if key.startswith("ns:"):
        return normally_spanned(host)
    raise ArtifactError(f"unknown ideal key {key!r}")


def rule_from_json(doc: dict) -> Rule:
    kind = doc["kind"]
    params = doc.get("params", [])
    note = doc.get("note", "")
    rule = _build_rule(kind, params)
    if note and not rule.note:
        return Rule(rule.kind, rule.spec, rule.match, rule.parent,
                    rule.unbounded, note)
    return rule


def _build_rule(kind: str, params: List) -> Rule:
    if kind.startswith("under[") and "]." in kind:
        label, inner_kind = kind[len("under["):].split("].", 1)
        prefix = tuple(parse_address(label).steps)
        inner = _build_rule(inner_kind, params[1:])
        return prefixed_rule(prefix, inner)
    if kind.startswith("percopy."):
        from .spanning import _family_wrapped
        return _family_wrapped(_build_rule(kind[len("percopy."):], params),
                               CopyStep, "percopy")
    if kind.startswith("inner."):
        from .spanning import _family_wrapped
        return _family_wrapped(_build_rule(kind[len("inner."):], params),
                               UnderStep, "inner")
    if kind.startswith("lifted."):
        # the only lift in the catalog: member coordinates of a topped copy
        from .spanning import _lifted_rule, _topcopy_inv, _topcopy_fwd
        return _lifted_rule(_build_rule(kind[len("lifted."):], params),
                            _topcopy_inv, _topcopy_fwd)
    if kind == "ray_prev":
        return rk.ray_prev(int(params[0]))
    if kind == "tooth_step":
        return rk.tooth_step()
    if kind == "tree_parent":
        min_d = int(params[0])
        max_d = None if params[1] is None else int(params[1])
        parity = None if params[2] is None else int(params[2])
        return rk.tree_parent(min_d, max_d, parity)
    if kind == "tops_to":
        return rk.tops_to(parse_address(params[0]))
    if kind == "node_to_top_diag":
        parity = None if params[0] is None else int(params[0])
        return rk.node_to_top_diag(parity, int(params[1]))
    if kind == "leaf_to_center":
        return rk.leaf_to_center()
    if kind == "kvert_prev":
        return rk.kvert_prev(int(params[0]))
    if kind == "kvert_fan":
        return rk.kvert_fan(int(params[0]))
    if kind == "even_ray_chain":
        return rk.even_ray_chain()
    if kind == "odd_to_next_even":
        return rk.odd_to_next_even()
    if kind in ("table", "dfs", "kvert_path", "specific"):
        pairs = {
            parse_address(a): parse_address(b) for a, b in
            (p if isinstance(p, (list, tuple)) else p for p in params)
        }
        return rk.table(pairs, kind)
    if kind == "under_root_to_top":
        return rk.under_root_to_top(parse_address(params[0]))
    if kind == "spine_fan":
        return rk.spine_fan(params[0], int(params[1]))
    if kind == "prog_fan":
        from .spanning import _prog_fan
        return _prog_fan(params[0], int(params[1]), int(params[2]))
    if kind == "ray_next_chain":
        from .spanning import _ray_next_chain
        return _ray_next_chain(int(params[0]), int(params[1]))
    if kind == "copy_root_to_join":
        label, local_root = params[0], parse_address(params[1])

        def match(a: Address) -> bool:
            return len(a.steps) >= 1 and isinstance(a.steps[0], CopyStep) \
                and Address(a.steps[1:]) == local_root

        return Rule("copy_root_to_join", tuple(params), match,
                    lambda a, _d: Address((LabelStep(label),)),
                    unbounded=False)
    raise ArtifactError(f"unknown rule kind {kind!r}")


def tree_from_json(doc: dict) -> TreeDescriptor:
    if doc.get("kind") != "tree" or doc.get("schema") != 1:
        raise ArtifactError("not a schema-1 tree artifact")
    host = parse(doc["host"])
    return TreeDescriptor(
        host=host,
        root=parse_address(doc["root"]),
        rules=tuple(rule_from_json(r) for r in doc["rules"]),
        covers=parse_descriptor(doc["covers"]) if doc.get("covers") else None,
        ends_summary=dict(doc.get("ends", {})),
        min_d=int(doc.get("min_d", 1)),
        min_w=int(doc.get("min_w", 1)),
        name=doc.get("name", ""),
    )


def decomposition_from_json(doc: dict):
    from .decompositions import TreeDecomposition, witness_from_json
    if doc.get("kind") != "tree_decomposition" or doc.get("schema") != 1:
        raise ArtifactError("not a schema-1 decomposition artifact")
    host = parse(doc["host"])
    ideal = ideal_from_key(doc["ideal"], host)
    witness = witness_from_json(host, ideal, doc["witness"])
    return TreeDecomposition(host, ideal, witness)
