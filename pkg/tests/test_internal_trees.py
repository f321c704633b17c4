"""Normality of every internal normal tree the recursions rely on, and
exchangeability of the produced artifacts."""

import pytest

from graphrank.addresses import parse_address, permute_address
from graphrank.descriptors import AllOf, UnionSet
from graphrank.fixtures import fixture
from graphrank.parser import parse
from graphrank.spanning import (
    end_faithful_spanning_tree, normal_spanning_tree, normal_tree_for_set,
)
from graphrank.trees import check_normality_on, instantiate
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


ZM = ("add_edge(union(join_vertex(ray, t, spine(.)), "
      "with_tops(tree(aleph1), all, whole_ray)), left/t, right/root)")


def test_bridged_set_tree_is_normal():
    """The component-plus-path host of the nested recursion: the normal
    tree over ray+joined-vertex+inner-base must satisfy the chain
    condition against the inner tops it leaves out."""
    e = parse(ZM)
    x = UnionSet((AllOf(("left",)), AllOf(("right", "base"))))
    tree = normal_tree_for_set(e, x)
    for d, w in [(3, 2), (4, 2), (4, 3), (5, 2)]:
        rep = check_normality_on(tree, truncate(e, d, w))
        assert rep.passed(), (d, w, rep.details[:2])


def test_outer_tree_is_normal_in_the_nested_host():
    e = fixture("nested_tops")
    tree = normal_tree_for_set(e, AllOf(("base", "base")))
    for d, w in [(3, 2), (4, 2)]:
        rep = check_normality_on(tree, truncate(e, d, w))
        assert rep.passed(), (d, w, rep.details[:2])


def test_insert_join_trees_are_normal():
    """Joined vertices spliced into a spine: normal for every progression
    offset the recursion meets."""
    for text in ("join_vertex(ray, apex, prog(., 1, 1))",
                 "join_vertex(ray, apex, prog(., 2, 1))",
                 "join_vertex(ray, apex, prog(., 0, 2))"):
        e = parse(text)
        got = normal_spanning_tree(e)
        assert got.status == "Tree", text
        for d in range(got.tree.min_d, 9):
            rep = check_normality_on(got.tree, truncate(e, d, 2))
            assert rep.passed(), (text, d, rep.details[:2])


def test_join_rooted_trees_are_normal():
    for text in ("join_vertex(comb(1), d, spine(.))",
                 "join_vertex(ray, d, all(.))",
                 "join_vertex(copies(aleph0, star(aleph0)), hub, centers(base))",
                 "join_vertex(tree(aleph1), t, prefix(b1, .))"):
        e = parse(text)
        got = normal_spanning_tree(e)
        assert got.status == "Tree", (text, got.reason)
        for d, w in [(3, 2), (4, 3)]:
            rep = check_normality_on(got.tree, truncate(e, d, w))
            assert rep.passed(), (text, d, w, rep.details[:2])


def test_join_onto_one_level_is_outside_the_catalog():
    """A vertex joined to a whole tree level admits no join-rooted normal
    tree (the join edge to the root is missing), and in fact no normal
    spanning tree at all; the catalog answers honestly."""
    e = parse("join_vertex(tree(aleph1), t, level(2, .))")
    assert normal_spanning_tree(e).status == "Unknown"
    from graphrank.ideals import normally_spanned
    assert normally_spanned(e).contains(e, AllOf(())) == "Unknown"


@pytest.mark.parametrize("name", ["withtops_all", "nested_tops"])
def test_efst_instantiation_is_exchangeable(name):
    """Renaming branch tokens commutes with instantiating the tree."""
    e = fixture(name)
    tree = end_faithful_spanning_tree(e)
    t = truncate(e, 3, 3)
    inst = instantiate(tree, t)
    assert not inst.problems
    perm = {"b1": "b2", "b2": "b3", "b3": "b1"}
    permuted = {
        permute_address(v, perm): permute_address(p, perm)
        for v, p in inst.parent.items()
    }
    assert permuted == inst.parent or set(permuted) == set(inst.parent)
    # the permuted parent map is exactly the parent map again
    assert permuted == {v: inst.parent[v] for v in permuted}
