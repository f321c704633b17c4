"""Ray rerouting: the output contains the ray, still reflects the end
subset, and the edge difference stays local to the ray's end."""

import pytest

from graphrank.addresses import parse_address
from graphrank.descriptors import Progression
from graphrank.ends import RaySchema, all_ends, reflects_check
from graphrank.expressions import JoinVertex, Ray
from graphrank.parser import parse
from graphrank.spanning import (
    check_delta_closure, normal_spanning_tree, reroute_with_ray,
)
from graphrank.trees import check_tree_on, instantiate
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


def _assert_ray_in_tree(e, tree, ray, d):
    t = truncate(e, d, 2)
    inst = instantiate(tree, t)
    assert not inst.problems, inst.problems[:2]
    edges = {frozenset((v, p)) for v, p in inst.parent.items()}
    n = 0
    while t.has_vertex(ray.vertex(n + 1)):
        assert frozenset((ray.vertex(n), ray.vertex(n + 1))) in edges, \
            (d, ray.vertex(n).render())
        n += 1
    if t.has_vertex(ray.vertex(1)):
        assert n > 0


CASES = [
    ("complete(aleph0)", RaySchema("kray", stride=2), False),
    ("join_vertex(ray, apex, prog(., 1, 1))", RaySchema("spine"), False),
    ("comb(1)", RaySchema("spine"), True),
    ("ray", RaySchema("spine", start=2), True),
]


@pytest.mark.parametrize("text,ray,expect_unchanged", CASES,
                         ids=[c[0] for c in CASES])
def test_reroute_postconditions(text, ray, expect_unchanged):
    e = parse(text)
    tree = normal_spanning_tree(e).tree
    psi = all_ends(e)
    rep = reroute_with_ray(e, tree, psi, ray)
    assert rep.contained_already == expect_unchanged
    out = rep.tree
    # (a) the ray is a subgraph of the new tree, across the deep sweep
    for d in range(max(3, out.min_d), 13):
        _assert_ray_in_tree(e, out, ray, d)
        assert check_tree_on(out, truncate(e, d, 2)).passed()
    # (b) the end subset is still reflected
    assert reflects_check(e, out, psi).verdict == "Pass"
    # (c) the closure of the symmetric difference stays at the ray's end
    problems = check_delta_closure(e, tree, out, ray, d=10)
    assert problems == [], problems


def test_even_ray_difference_is_infinite_but_local():
    e = parse("complete(aleph0)")
    tree = normal_spanning_tree(e).tree
    ray = RaySchema("kray", stride=2)
    rep = reroute_with_ray(e, tree, all_ends(e), ray)
    # the difference keeps growing with depth (it is genuinely infinite)
    assert len(rep.delta_edges_sample) >= 6
    assert ("v.0", "v.1") in rep.delta_edges_sample


def test_trivial_case_identity():
    e = parse("comb(1)")
    tree = normal_spanning_tree(e).tree
    rep = reroute_with_ray(e, tree, all_ends(e), RaySchema("spine"))
    assert rep.tree is tree and rep.delta_edges_sample == []
