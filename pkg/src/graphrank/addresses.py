"""Structured vertex addresses.

A vertex of a presented graph is named by a path of constructor-local
steps from the root of the expression, rendered as '/'-separated step
texts (e.g. ``left/r3``, ``root/b1/b2``, ``top.b1``, ``under.b1/root``).

Indices into uncountable families are symbolic tokens ``b1, b2, ...``;
they denote pairwise distinct, otherwise arbitrary members, and every
analysis result must be invariant under renaming them (exchangeability).
A branch of a branching tree is named by a token path read diagonally:
the path (b1, b2) stands for the branch b1, b2, b2, b2, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple, Union

Index = Union[int, str]

_TOKEN_RE = re.compile(r"^b[1-9][0-9]*$")
_LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
RESERVED_LABELS = {"root", "center", "left", "right"}


class AddressError(ValueError):
    pass


def is_token(ix: Index) -> bool:
    return isinstance(ix, str)


def check_token(name: str) -> str:
    if not _TOKEN_RE.match(name):
        raise AddressError(f"bad branch token {name!r}")
    return name


def parse_index(text: str) -> Index:
    if text.isdigit():
        return int(text)
    return check_token(text)


def render_index(ix: Index) -> str:
    return str(ix)


def diagonal(path: Tuple[Index, ...], length: int) -> Tuple[Index, ...]:
    """Extend a branch path diagonally (repeat the last index) to `length`."""
    if not path:
        raise AddressError("empty branch path")
    if len(path) >= length:
        return path[:length]
    return path + (path[-1],) * (length - len(path))


# -- steps -------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    def render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class RayStep(Step):
    n: int

    def render(self) -> str:
        return f"r{self.n}"


@dataclass(frozen=True)
class ToothStep(Step):
    j: int  # 1-based offset along the tooth path

    def render(self) -> str:
        return f"t{self.j}"


@dataclass(frozen=True)
class CenterStep(Step):
    def render(self) -> str:
        return "center"


@dataclass(frozen=True)
class LeafStep(Step):
    ix: Index

    def render(self) -> str:
        return f"leaf.{render_index(self.ix)}"


@dataclass(frozen=True)
class RootStep(Step):
    def render(self) -> str:
        return "root"


@dataclass(frozen=True)
class NodeStep(Step):
    ix: Index

    def render(self) -> str:
        return render_index(self.ix)


@dataclass(frozen=True)
class KVertStep(Step):
    ix: Index

    def render(self) -> str:
        return f"v.{render_index(self.ix)}"


@dataclass(frozen=True)
class SideStep(Step):
    side: str  # 'left' | 'right'

    def render(self) -> str:
        return self.side


@dataclass(frozen=True)
class CopyStep(Step):
    ix: Index

    def render(self) -> str:
        return f"copy.{render_index(self.ix)}"


@dataclass(frozen=True)
class LabelStep(Step):
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class TopStep(Step):
    path: Tuple[Index, ...]  # branch path, read diagonally

    def render(self) -> str:
        return "top." + ".".join(render_index(i) for i in self.path)


@dataclass(frozen=True)
class UnderStep(Step):
    path: Tuple[Index, ...]  # branch path of the top the copy hangs at

    def render(self) -> str:
        return "under." + ".".join(render_index(i) for i in self.path)


# -- addresses ----------------------------------------------------------------


@dataclass(frozen=True)
class Address:
    steps: Tuple[Step, ...]

    def render(self) -> str:
        return "/".join(s.render() for s in self.steps)

    def sort_key(self):
        text = self.render()
        return (len(text), text)

    def __str__(self) -> str:
        return self.render()

    def head(self) -> Step:
        return self.steps[0]

    def tail(self) -> "Address":
        return Address(self.steps[1:])

    def prepend(self, step: Step) -> "Address":
        return Address((step,) + self.steps)


def addr(*steps: Step) -> Address:
    return Address(tuple(steps))


def parse_step(text: str) -> Step:
    if text == "root":
        return RootStep()
    if text == "center":
        return CenterStep()
    if text in ("left", "right"):
        return SideStep(text)
    m = re.match(r"^r([0-9]+)$", text)
    if m:
        return RayStep(int(m.group(1)))
    m = re.match(r"^t([1-9][0-9]*)$", text)
    if m:
        return ToothStep(int(m.group(1)))
    if "." in text:
        head, rest = text.split(".", 1)
        if head == "leaf":
            return LeafStep(parse_index(rest))
        if head == "v":
            return KVertStep(parse_index(rest))
        if head == "copy":
            return CopyStep(parse_index(rest))
        if head == "top":
            return TopStep(tuple(parse_index(p) for p in rest.split(".")))
        if head == "under":
            return UnderStep(tuple(parse_index(p) for p in rest.split(".")))
        raise AddressError(f"bad step {text!r}")
    if _TOKEN_RE.match(text) or text.isdigit():
        return NodeStep(parse_index(text))
    if _LABEL_RE.match(text):
        return LabelStep(text)
    raise AddressError(f"bad step {text!r}")


def parse_address(text: str) -> Address:
    text = text.strip()
    if not text:
        raise AddressError("empty address")
    return Address(tuple(parse_step(p) for p in text.split("/")))


def check_label(name: str) -> str:
    if not _LABEL_RE.match(name) or name in RESERVED_LABELS or _TOKEN_RE.match(name):
        raise AddressError(f"unusable vertex label {name!r}")
    if re.match(r"^[rt][0-9]+$", name) or name.split(".")[0] in (
        "leaf", "v", "copy", "top", "under",
    ):
        raise AddressError(f"unusable vertex label {name!r}")
    return name


# -- token permutation (exchangeability) --------------------------------------


def permute_index(ix: Index, perm: dict) -> Index:
    if isinstance(ix, str):
        return perm.get(ix, ix)
    return ix


def permute_step(step: Step, perm: dict) -> Step:
    if isinstance(step, LeafStep):
        return LeafStep(permute_index(step.ix, perm))
    if isinstance(step, NodeStep):
        return NodeStep(permute_index(step.ix, perm))
    if isinstance(step, KVertStep):
        return KVertStep(permute_index(step.ix, perm))
    if isinstance(step, CopyStep):
        return CopyStep(permute_index(step.ix, perm))
    if isinstance(step, TopStep):
        return TopStep(tuple(permute_index(i, perm) for i in step.path))
    if isinstance(step, UnderStep):
        return UnderStep(tuple(permute_index(i, perm) for i in step.path))
    return step


def permute_address(a: Address, perm: dict) -> Address:
    return Address(tuple(permute_step(s, perm) for s in a.steps))
