"""Concrete parent-rule factories for the catalog tree constructions."""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .addresses import (
    Address, CenterStep, KVertStep, LabelStep, LeafStep, NodeStep, RayStep,
    RootStep, Step, ToothStep, TopStep, UnderStep, diagonal,
)
from .trees import Rule


def _node_path(a: Address):
    if not a.steps or not isinstance(a.steps[0], RootStep):
        return None
    path = []
    for s in a.steps[1:]:
        if not isinstance(s, NodeStep):
            return None
        path.append(s.ix)
    return tuple(path)


def ray_prev(start: int = 1) -> Rule:
    def match(a: Address) -> bool:
        return len(a.steps) == 1 and isinstance(a.steps[0], RayStep) and a.steps[0].n >= start

    def parent(a: Address, _d: int) -> Address:
        return Address((RayStep(a.steps[0].n - 1),))

    return Rule("ray_prev", (start,), match, parent, unbounded=True,
                note="spine vertex hangs below its predecessor")


def tooth_step() -> Rule:
    def match(a: Address) -> bool:
        return len(a.steps) == 2 and isinstance(a.steps[1], ToothStep)

    def parent(a: Address, _d: int) -> Address:
        j = a.steps[1].j
        if j == 1:
            return Address((a.steps[0],))
        return Address((a.steps[0], ToothStep(j - 1)))

    return Rule("tooth_step", (), match, parent, unbounded=False,
                note="tooth vertices hang along their tooth path")


def tree_parent(min_depth: int = 1, max_depth: Optional[int] = None,
                parity: Optional[int] = None) -> Rule:
    def match(a: Address) -> bool:
        path = _node_path(a)
        if path is None or len(path) < min_depth:
            return False
        if max_depth is not None and len(path) > max_depth:
            return False
        if parity is not None and len(path) % 2 != parity:
            return False
        return True

    def parent(a: Address, _d: int) -> Address:
        return Address(a.steps[:-1])

    # a parity-filtered rule cannot chain: the parent's depth parity flips
    return Rule("tree_parent", (min_depth, max_depth, parity), match, parent,
                unbounded=max_depth is None and parity is None,
                note="tree node hangs below its tree parent")


def tops_to(target: Address) -> Rule:
    def match(a: Address) -> bool:
        return len(a.steps) == 1 and isinstance(a.steps[0], TopStep)

    return Rule("tops_to", (target.render(),), match,
                lambda a, _d: target, unbounded=False,
                note="every top hangs at a fixed ray vertex")


def node_to_top_diag(parity: Optional[int] = None, min_depth: int = 1) -> Rule:
    """Tree node -> the top over its diagonal branch (a truncation names
    that top by the depth-(d-1) extension of the node's path)."""

    def match(a: Address) -> bool:
        path = _node_path(a)
        if path is None or len(path) < min_depth:
            return False
        if parity is not None and len(path) % 2 != parity:
            return False
        return True

    def parent(a: Address, d: int) -> Address:
        path = _node_path(a)
        return Address((TopStep(diagonal(path, max(len(path), d - 1))),))

    return Rule("node_to_top_diag", (parity, min_depth), match, parent,
                unbounded=False,
                note="tree node hangs below the top of its diagonal branch")


def leaf_to_center() -> Rule:
    def match(a: Address) -> bool:
        return len(a.steps) == 1 and isinstance(a.steps[0], LeafStep)

    return Rule("leaf_to_center", (), match,
                lambda a, _d: Address((CenterStep(),)), unbounded=False,
                note="leaves hang at the centre")


def kvert_prev(start: int = 1) -> Rule:
    def match(a: Address) -> bool:
        s = a.steps[0]
        return len(a.steps) == 1 and isinstance(s, KVertStep) \
            and isinstance(s.ix, int) and s.ix >= start

    def parent(a: Address, _d: int) -> Address:
        return Address((KVertStep(a.steps[0].ix - 1),))

    return Rule("kvert_prev", (start,), match, parent, unbounded=True,
                note="spanning ray through the complete graph")


def kvert_fan(center: int = 0) -> Rule:
    def match(a: Address) -> bool:
        s = a.steps[0]
        return len(a.steps) == 1 and isinstance(s, KVertStep) and s.ix != center

    return Rule("kvert_fan", (center,), match,
                lambda a, _d: Address((KVertStep(center),)), unbounded=False,
                note="fan onto one vertex of the complete graph")


def even_ray_chain() -> Rule:
    """v.2k hangs below v.(2k-2): the even spanning ray of a complete graph."""

    def match(a: Address) -> bool:
        s = a.steps[0]
        return len(a.steps) == 1 and isinstance(s, KVertStep) \
            and isinstance(s.ix, int) and s.ix >= 2 and s.ix % 2 == 0

    def parent(a: Address, _d: int) -> Address:
        return Address((KVertStep(a.steps[0].ix - 2),))

    return Rule("even_ray_chain", (), match, parent, unbounded=True)


def odd_to_next_even() -> Rule:
    """v.(2k+1) hangs below v.(2k+2), the surviving edge of its old path."""

    def match(a: Address) -> bool:
        s = a.steps[0]
        return len(a.steps) == 1 and isinstance(s, KVertStep) \
            and isinstance(s.ix, int) and s.ix % 2 == 1

    def parent(a: Address, _d: int) -> Address:
        return Address((KVertStep(a.steps[0].ix + 1),))

    return Rule("odd_to_next_even", (), match, parent, unbounded=False)


def table(pairs: Dict[Address, Address], kind: str = "table") -> Rule:
    rendered = tuple(sorted((k.render(), v.render()) for k, v in pairs.items()))

    def match(a: Address) -> bool:
        return a in pairs

    return Rule(kind, rendered, match, lambda a, _d: pairs[a], unbounded=False,
                note="explicit finite parent table")


def specific(v: Address, parent: Address) -> Rule:
    return table({v: parent}, kind="specific")


def under_root_to_top(child_root: Address) -> Rule:
    """The canonical root of a hung copy hangs at its top."""

    def match(a: Address) -> bool:
        return (
            len(a.steps) >= 2
            and isinstance(a.steps[0], UnderStep)
            and Address(a.steps[1:]) == child_root
        )

    def parent(a: Address, _d: int) -> Address:
        return Address((TopStep(a.steps[0].path),))

    return Rule("under_root_to_top", (child_root.render(),), match, parent,
                unbounded=False, note="hung copy attaches at its top")


def spine_fan(label: str, start: int = 0) -> Rule:
    """Every spine vertex r_n (n >= start) hangs at a joined vertex."""

    def match(a: Address) -> bool:
        return len(a.steps) == 1 and isinstance(a.steps[0], RayStep) \
            and a.steps[0].n >= start

    return Rule("spine_fan", (label, start), match,
                lambda a, _d: Address((LabelStep(label),)), unbounded=False,
                note="spine absorbed into a dominating fan")
