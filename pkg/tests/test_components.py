"""Component analysis after deletion, checked against concrete truncations."""

import pytest

from graphrank.addresses import parse_address
from graphrank.cardinality import ALEPH0, ALEPH1, finite
from graphrank.components import (
    Unsupported, components_after_deletion,
)
from graphrank.connectivity import is_connected
from graphrank.descriptors import (
    AllOf, CentersOf, ExplicitSet, LeavesOf, SpineOf, TopsOf, UnionSet,
    LevelSet,
)
from graphrank.fixtures import fixture
from graphrank.parser import parse
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


def test_withtops_minus_base_is_isolated_tops():
    w = fixture("withtops_all")
    regions = components_after_deletion(w, AllOf(("base",)))
    assert not isinstance(regions, Unsupported)
    assert len(regions) == 1
    r = regions[0]
    assert r.count == ALEPH1
    assert r.expr.render() == "finite{v:[t], e:[]}"
    assert r.contains(A("top.b1")) and not r.contains(A("root/b1"))


def test_ray_minus_r0_is_a_ray():
    regions = components_after_deletion(parse("ray"), ExplicitSet((A("r0"),)))
    assert len(regions) == 1
    assert regions[0].expr.render() == "ray"
    # the embedding shifts indices past the cut
    assert regions[0].embed.to_host(A("r0"), None) == A("r1")


def test_ray_segments():
    regions = components_after_deletion(
        parse("ray"), ExplicitSet((A("r2"), A("r5"))))
    assert [r.rid for r in regions] == ["seg0", "seg1", "tail"]
    assert regions[0].expr.render() == "finite{v:[p0, p1], e:[p0-p1]}"
    assert regions[1].contains(A("r3")) and regions[1].contains(A("r4"))
    assert regions[2].contains(A("r6"))


def test_star_minus_center():
    regions = components_after_deletion(
        parse("star(aleph0)"), CentersOf(()))
    assert len(regions) == 1 and regions[0].count == ALEPH0
    assert regions[0].contains(A("leaf.5"))


def test_tree_minus_root_is_subtree_family():
    t = parse("tree(aleph1)")
    regions = components_after_deletion(t, LevelSet(0, ()))
    assert len(regions) == 1 and regions[0].count == ALEPH1
    assert regions[0].expr.render() == "tree(aleph1)"
    assert regions[0].embed.to_host(A("root/b2"), "b1") == A("root/b1/b2")


def test_join_vertex_deletions():
    sos = fixture("star_of_stars")
    regions = components_after_deletion(sos, ExplicitSet((A("hub"),)))
    assert len(regions) == 1 and regions[0].count == ALEPH0
    assert regions[0].expr.render() == "star(aleph0)"
    both = components_after_deletion(
        sos, UnionSet((ExplicitSet((A("hub"),)), CentersOf(("base",)))))
    assert len(both) == 1 and both[0].count == ALEPH0
    assert both[0].expr.render() == "finite{v:[x], e:[]}"


def test_comb_minus_spine_is_teeth():
    regions = components_after_deletion(parse("comb(2)"), SpineOf(()))
    assert len(regions) == 1 and regions[0].count == ALEPH0
    assert regions[0].expr.render() == "finite{v:[p1, p2], e:[p1-p2]}"
    assert components_after_deletion(parse("comb(0)"), SpineOf(())) == []


def test_nested_minus_outer_tree():
    g = fixture("nested_tops")
    regions = components_after_deletion(g, AllOf(("base", "base")))
    assert len(regions) == 1 and regions[0].count == ALEPH1
    member = regions[0].expr
    assert member.render().startswith("add_edge(union(finite{v:[t], e:[]}, ")
    assert regions[0].contains(A("top.b1")) and regions[0].contains(
        A("under.b1/root"))


def test_unsupported_is_a_value():
    got = components_after_deletion(parse("comb(1)"), LeavesOf(()))
    assert isinstance(got, Unsupported)


CONSISTENCY_CASES = [
    ("withtops_all", AllOf(("base",))),
    ("withtops_every2nd", AllOf(("base",))),
    ("withtops_all", TopsOf(())),
    ("ray", ExplicitSet((A("r0"),))),
    ("ray", ExplicitSet((A("r1"), A("r3")))),
    ("comb2", SpineOf(())),
    ("star_aleph0", CentersOf(())),
    ("star_aleph0", LeavesOf(())),
    ("tree_aleph1", LevelSet(0, ())),
    ("star_of_stars", ExplicitSet((A("hub"),))),
    ("star_of_stars", UnionSet((ExplicitSet((A("hub"),)),
                                CentersOf(("base",))))),
    ("nested_tops", AllOf(("base", "base"))),
    ("k_aleph0", ExplicitSet((A("v.0"),))),
]


@pytest.mark.parametrize("name,x", CONSISTENCY_CASES,
                         ids=[f"{n}:{x.render()}" for n, x in CONSISTENCY_CASES])
def test_regions_match_concrete_components(name, x):
    """Deleting the instantiated set from a truncation yields components
    that each map into exactly one returned region."""
    e = fixture(name)
    regions = components_after_deletion(e, x)
    assert not isinstance(regions, Unsupported)
    for d, w in [(3, 2), (4, 3)]:
        t = truncate(e, d, w)
        deleted = set(t.instantiate(x))
        for comp in t.components(removed=deleted):
            owners = {
                ix for v in comp for ix, r in enumerate(regions)
                if r.contains(v)
            }
            assert len(owners) == 1, (comp[0].render(), owners)
            region = regions[list(owners)[0]]
            assert all(region.contains(v) for v in comp)


def test_connectivity_examples():
    assert is_connected(parse("comb(2)")) == "Yes"
    assert is_connected(parse("union(ray, ray)")) == "No"
    assert is_connected(parse("add_edge(union(ray, ray), left/r0, right/r0)")) == "Yes"
    assert is_connected(fixture("star_of_stars")) == "Yes"
    assert is_connected(parse("copies(aleph0, star(aleph0))")) == "No"
