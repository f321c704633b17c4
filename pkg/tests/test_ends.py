"""End spaces, closures, domination, the star-comb dichotomy, and the
suites for the closure lemmas (cofinal sets, separators and components)."""

import pytest

from graphrank.addresses import parse_address
from graphrank.cardinality import UNCOUNTABLE, finite
from graphrank.components import Unsupported, components_after_deletion
from graphrank.descriptors import (
    AllOf, CentersOf, ExplicitSet, LeavesOf, LevelSet, Progression, SpineOf,
    TopsOf, UnionSet,
)
from graphrank.ends import (
    CombWitness, Exhausted, StarWitness, all_ends_dominated, closure_ends,
    end_space, is_dispersed, is_dominated, star_comb_search,
    validate_star_comb,
)
from graphrank.fixtures import fixture
from graphrank.parser import parse
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


def test_end_space_examples():
    ray = end_space(parse("ray"))
    assert len(ray.classes) == 1
    assert ray.classes[0].count == finite(1)
    assert ray.classes[0].dominated == "No"

    k = end_space(parse("complete(aleph0)"))
    assert len(k.classes) == 1 and k.classes[0].dominated == "Yes"

    w = end_space(fixture("withtops_all"))
    assert len(w.classes) == 1
    assert w.classes[0].count == UNCOUNTABLE
    assert w.classes[0].dominated == "Yes"
    assert w.classes[0].dominator.render() == "top.b1"

    assert end_space(parse("star(aleph0)")).classes == ()
    assert end_space(fixture("star_of_stars")).classes == ()

    nested = end_space(fixture("nested_tops"))
    assert sorted(c.cid for c in nested.classes) == ["branches", "under.branches"]
    assert all(c.dominated == "Yes" for c in nested.classes)


def test_withtops_domination_growing_fans():
    """On truncations, each top carries a direct fan onto its ray prefix,
    growing with d."""
    w = fixture("withtops_all")
    last = 0
    for d in (2, 3, 4):
        t = truncate(w, d, 2)
        top = A("top." + ".".join(["b1"] * (d - 1)))
        fan = [u for u in t.adj[top] if u.render().startswith("root")]
        assert len(fan) == d and len(fan) > last
        last = len(fan)


def test_closure_examples():
    ray = parse("ray")
    assert closure_ends(ray, Progression((), 0, 2)).verdicts["end"] == "All"
    comb = parse("comb(1)")
    assert closure_ends(comb, LeavesOf(())).verdicts["end"] == "All"
    t1 = parse("tree(aleph1)")
    assert closure_ends(t1, LevelSet(3, ())).verdicts["branches"] == "None"


def test_dispersedness():
    assert is_dispersed(parse("ray"), SpineOf(())) == "No"
    assert is_dispersed(parse("tree(aleph1)"), LevelSet(2, ())) == "Yes"
    assert is_dispersed(parse("star(aleph0)"), LeavesOf(())) == "Yes"
    # the tops are in the closure of every branch, hence never dispersed
    assert is_dispersed(fixture("withtops_all"), TopsOf(())) == "No"


def test_domination_verdicts():
    verdict, witness, cert = is_dominated(parse("ray"), "end")
    assert verdict == "No" and "locally finite" in cert
    verdict, witness, _ = is_dominated(fixture("comb_dominated"), "end")
    assert verdict == "Yes" and witness.render() == "d"
    verdict, _, cert = is_dominated(parse("comb(1)"), "end")
    assert verdict == "No" and "degree at most 3" in cert
    assert all_ends_dominated(fixture("withtops_all")) == ("Yes", None)
    assert all_ends_dominated(parse("tree(aleph0)")) == ("No", "branches")


# -- star-comb search ---------------------------------------------------------


def test_search_on_ray():
    t = truncate(parse("ray"), 20, 1)
    u = list(t.vertices)
    got = star_comb_search(t, u, 5)
    assert isinstance(got, CombWitness) and len(got.teeth) == 5
    assert validate_star_comb(t, u, got) == []


def test_search_on_star():
    t = truncate(parse("star(aleph0)"), 2, 10)
    u = [v for v in t.vertices if v.render().startswith("leaf")]
    got = star_comb_search(t, u, 8)
    assert isinstance(got, StarWitness) and len(got.paths) == 8
    assert validate_star_comb(t, u, got) == []


def test_search_on_complete():
    t = truncate(parse("complete(aleph0)"), 1, 12)
    u = list(t.vertices)
    got = star_comb_search(t, u, 6)
    assert not isinstance(got, Exhausted)
    assert validate_star_comb(t, u, got) == []


def test_search_exhausted_when_target_too_small():
    t = truncate(parse("ray"), 5, 1)
    got = star_comb_search(t, [A("r0"), A("r1")], 3)
    assert isinstance(got, Exhausted)


@pytest.mark.parametrize("name,target,budget", [
    ("comb2", "all", 6),
    ("withtops_all", "tops", 4),
    ("tree_aleph0", "deep", 4),
    ("comb_dominated", "all", 6),
])
def test_search_validity_across_fixtures(name, target, budget):
    e = fixture(name)
    t = truncate(e, 8, 4)
    if target == "all":
        u = list(t.vertices)
    elif target == "tops":
        u = [v for v in t.vertices if v.render().startswith("top.")]
    else:
        u = [v for v in t.vertices if len(v.steps) >= 4]
    got = star_comb_search(t, u, budget)
    assert not isinstance(got, Exhausted)
    assert validate_star_comb(t, u, got) == []


def test_dispersed_sets_never_extend_combs():
    """A dispersed target admits no comb whose spine survives growing
    depth: the returned witness on a one-level target is always a star."""
    e = parse("tree(aleph1)")
    for d in (3, 4, 5):
        t = truncate(e, d, 4)
        u = t.instantiate(LevelSet(1, ()))
        got = star_comb_search(t, u, 4)
        assert isinstance(got, StarWitness)


# -- closure lemma suites --------------------------------------------------------


COFINAL_SUITE = [
    # (expr, tree vertex set U' = V(T), cofinal subset U)
    ("ray", AllOf(()), Progression((), 0, 2)),
    ("comb1", AllOf(()), LeavesOf(())),
    ("comb3", AllOf(()), LeavesOf(())),
    ("tree_aleph1", AllOf(()), AllOf(())),
    ("star_of_stars", AllOf(()), LeavesOf(("base",))),
    ("k_aleph0", AllOf(()), Progression((), 0, 2)),
]


@pytest.mark.parametrize("name,tset,cofinal", COFINAL_SUITE,
                         ids=[c[0] for c in COFINAL_SUITE])
def test_cofinal_sets_share_closures(name, tset, cofinal):
    """A rooted tree containing a set cofinally has the same ends in its
    closure as the set itself."""
    e = fixture(name)
    full = closure_ends(e, tset)
    sub = closure_ends(e, cofinal)
    assert full.verdicts == sub.verdicts


SEPARATOR_SUITE = [
    ("withtops_all", AllOf(("base",))),
    ("ray", ExplicitSet((A("r0"),))),
    ("comb2", SpineOf(())),
    ("comb_dominated", ExplicitSet((A("d"),))),
    ("tree_aleph1", LevelSet(0, ())),
    ("nested_tops", AllOf(("base", "base"))),
    ("star_of_stars", ExplicitSet((A("hub"),))),
]


@pytest.mark.parametrize("name,x", SEPARATOR_SUITE,
                         ids=[c[0] for c in SEPARATOR_SUITE])
def test_every_end_lives_in_x_or_one_component(name, x):
    """Every end lies in the closure of the deleted set or in the closure
    of exactly one component region; ends claimed by two regions would
    have to lie in the closure of the deleted set."""
    e = fixture(name)
    space = end_space(e)
    in_x = closure_ends(e, x)
    regions = components_after_deletion(e, x)
    assert not isinstance(regions, Unsupported)
    for c in space.classes:
        holders = []
        for r in regions:
            verdict = _region_closure(e, r, c)
            if verdict != "None":
                holders.append(r.rid)
        if in_x.verdicts[c.cid] == "None":
            assert len(holders) >= 1, f"end {c.cid} lost by the deletion"
        # part (ii): two distinct regions force the end into the closure
        # of the deleted set
        if len(holders) >= 2:
            assert in_x.verdicts[c.cid] != "None"


def _region_closure(e, region, cls):
    """Is the end class inside the closure of a component region?  The
    region vertex sets are class-hosting sets exactly when the class's
    representative deep vertices belong to them."""
    probe = cls.rep.vertex(3)
    if region.contains(probe):
        return "All"
    return "None"
