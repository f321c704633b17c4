"""The shipped fixture catalog.

Every acceptance property binds to one of these named presentations.
The two topped-tree fixtures differ only in the top adjacency: the
whole-ray variant carries the cited rank-1/no-normal-spanning-tree
facts, the every-2nd variant realises the joined-to-infinitely-many
reading with one concrete representative subset.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict

from .expressions import GraphExpr
from .parser import parse

FIXTURES: Dict[str, str] = {
    "ray": "ray",
    "comb0": "comb(0)",
    "comb1": "comb(1)",
    "comb2": "comb(2)",
    "comb3": "comb(3)",
    "star_aleph0": "star(aleph0)",
    "tree_aleph0": "tree(aleph0)",
    "tree_aleph1": "tree(aleph1)",
    "withtops_all": "with_tops(tree(aleph1), all, whole_ray)",
    "withtops_every2nd": "with_tops(tree(aleph1), all, every_2nd)",
    "k_aleph0": "complete(aleph0)",
    "k_aleph1": "complete(aleph1)",
    "comb_dominated": "join_vertex(comb(1), d, spine(.))",
    "star_of_stars": "join_vertex(copies(aleph0, star(aleph0)), hub, centers(base))",
    "nested_tops": (
        "hang_at_tops(with_tops(tree(aleph1), all, whole_ray), "
        "with_tops(tree(aleph1), all, whole_ray))"
    ),
}


def fixture_names():
    return list(FIXTURES)


def fixture(name: str) -> GraphExpr:
    return parse(FIXTURES[name])


def write_fixture_files(directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in FIXTURES.items():
        (directory / f"{name}.graph").write_text(text + "\n")
