"""Symbolic vertex-set descriptors.

A descriptor names a (possibly uncountable) family of vertices of a
presented graph: an explicit finite set, all vertices of a region of
the expression, a tree level, a spine, star centers or leaves, tops,
the prefix ray of a branch, an arithmetic progression along a spine,
or a finite union of these.  Regions are paths into the expression
AST ('.' is the whole expression, then selectors like 'base', 'left').

Membership, cardinality and truncation instantiation live in
``resolve``; this module is just the vocabulary and its text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .addresses import Address, Index, parse_address, parse_index, render_index

Region = Tuple[str, ...]  # () is the whole expression

_SELECTORS = ("left", "right", "base", "child")


class DescriptorError(ValueError):
    pass


def check_region(region: Region) -> Region:
    for sel in region:
        if sel not in _SELECTORS:
            raise DescriptorError(f"bad region selector {sel!r}")
    return region


def render_region(region: Region) -> str:
    return "/".join(region) if region else "."


def parse_region(text: str) -> Region:
    text = text.strip()
    if text == ".":
        return ()
    return check_region(tuple(text.split("/")))


@dataclass(frozen=True)
class Descriptor:
    def render(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ExplicitSet(Descriptor):
    addrs: Tuple[Address, ...]

    def render(self) -> str:
        return "set[" + "; ".join(a.render() for a in self.addrs) + "]"


@dataclass(frozen=True)
class AllOf(Descriptor):
    region: Region = ()

    def render(self) -> str:
        return f"all({render_region(self.region)})"


@dataclass(frozen=True)
class SpineOf(Descriptor):
    region: Region = ()

    def render(self) -> str:
        return f"spine({render_region(self.region)})"


@dataclass(frozen=True)
class CentersOf(Descriptor):
    region: Region = ()

    def render(self) -> str:
        return f"centers({render_region(self.region)})"


@dataclass(frozen=True)
class LeavesOf(Descriptor):
    region: Region = ()

    def render(self) -> str:
        return f"leaves({render_region(self.region)})"


@dataclass(frozen=True)
class TopsOf(Descriptor):
    region: Region = ()

    def render(self) -> str:
        return f"tops({render_region(self.region)})"


@dataclass(frozen=True)
class LevelSet(Descriptor):
    depth: int
    region: Region = ()

    def render(self) -> str:
        return f"level({self.depth}, {render_region(self.region)})"


@dataclass(frozen=True)
class BranchPrefix(Descriptor):
    path: Tuple[Index, ...]
    region: Region = ()

    def render(self) -> str:
        p = ".".join(render_index(i) for i in self.path)
        return f"prefix({p}, {render_region(self.region)})"


@dataclass(frozen=True)
class Progression(Descriptor):
    """Spine vertices r_(start + i*step) of a ray-like region."""

    region: Region
    start: int
    step: int

    def render(self) -> str:
        return f"prog({render_region(self.region)}, {self.start}, {self.step})"


@dataclass(frozen=True)
class UnionSet(Descriptor):
    parts: Tuple[Descriptor, ...]

    def render(self) -> str:
        return "union_of(" + ", ".join(p.render() for p in self.parts) + ")"


# Families only produced by the adjacency oracle; they have no surface
# syntax but render for reports.


@dataclass(frozen=True)
class ChildrenOf(Descriptor):
    node_path: Tuple[Index, ...]
    region: Region = ()

    def render(self) -> str:
        p = ".".join(render_index(i) for i in self.node_path) or "root"
        return f"children({p}, {render_region(self.region)})"


@dataclass(frozen=True)
class TopsThrough(Descriptor):
    node_path: Tuple[Index, ...]
    region: Region = ()

    def render(self) -> str:
        p = ".".join(render_index(i) for i in self.node_path) or "root"
        return f"tops_through({p}, {render_region(self.region)})"


@dataclass(frozen=True)
class CoVerticesOf(Descriptor):
    ix: Index
    region: Region = ()

    def render(self) -> str:
        return f"covertices({render_index(self.ix)}, {render_region(self.region)})"


def union2(a: Descriptor, b: Descriptor) -> Descriptor:
    return UnionSet((a, b))


def parse_descriptor(text: str) -> Descriptor:
    text = text.strip()
    if text.startswith("set[") and text.endswith("]"):
        body = text[4:-1].strip()
        if not body:
            return ExplicitSet(())
        return ExplicitSet(tuple(parse_address(p) for p in body.split(";")))
    if text.startswith("union_of(") and text.endswith(")"):
        parts = _split_args(text[len("union_of("):-1])
        return UnionSet(tuple(parse_descriptor(p) for p in parts))
    for name, cls in (
        ("all", AllOf), ("spine", SpineOf), ("centers", CentersOf),
        ("leaves", LeavesOf), ("tops", TopsOf),
    ):
        if text.startswith(name + "(") and text.endswith(")"):
            return cls(parse_region(text[len(name) + 1:-1]))
    if text.startswith("level(") and text.endswith(")"):
        args = _split_args(text[len("level("):-1])
        if len(args) != 2:
            raise DescriptorError(f"level wants 2 args: {text!r}")
        return LevelSet(int(args[0]), parse_region(args[1]))
    if text.startswith("prefix(") and text.endswith(")"):
        args = _split_args(text[len("prefix("):-1])
        if len(args) != 2:
            raise DescriptorError(f"prefix wants 2 args: {text!r}")
        path = tuple(parse_index(p) for p in args[0].split("."))
        return BranchPrefix(path, parse_region(args[1]))
    if text.startswith("prog(") and text.endswith(")"):
        args = _split_args(text[len("prog("):-1])
        if len(args) != 3:
            raise DescriptorError(f"prog wants 3 args: {text!r}")
        return Progression(parse_region(args[0]), int(args[1]), int(args[2]))
    raise DescriptorError(f"bad descriptor {text!r}")


def _split_args(body: str):
    """Split on top-level commas (descriptor args never nest parens twice)."""
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(" or ch == "[":
            depth += 1
        elif ch == ")" or ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur).strip())
    return parts
