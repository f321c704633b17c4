"""The rank scheme: catalog verdicts, witnesses, certificates, the
brute-force truncation oracle for the finite-sets ranks, and the
monotonicity lemmas for the normal rank."""

import pytest

from graphrank.addresses import parse_address
from graphrank.cardinality import ALEPH1
from graphrank.components import Unsupported, components_after_deletion
from graphrank.descriptors import AllOf, ExplicitSet, UnionSet
from graphrank.fixtures import fixture, fixture_names
from graphrank.ideals import finite_sets, normally_spanned, sets_below
from graphrank.ordinals import ZERO, from_int
from graphrank.parser import parse
from graphrank.ranks import (
    RaylessInputError, ideal_rank, ideal_rank_in, kappa_rank,
    no_rank_certificates, normal_rank, rank_transfer_bound, schmidt_rank,
)
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


EXPECTED_NORMAL = {
    "ray": 0, "comb0": 0, "comb1": 0, "comb2": 0, "comb3": 0,
    "star_aleph0": 0, "tree_aleph0": 0, "tree_aleph1": 0,
    "withtops_all": 1, "withtops_every2nd": 1,
    "k_aleph0": 0, "k_aleph1": None,
    "comb_dominated": 0, "star_of_stars": 0, "nested_tops": 2,
}


@pytest.mark.parametrize("name", fixture_names())
def test_normal_rank_catalog(name):
    r = normal_rank(fixture(name))
    want = EXPECTED_NORMAL[name]
    if want is None:
        assert r.status == "NoRank"
        assert r.certificate.kind == "self-similar-complete-core"
    else:
        assert r.is_ranked() and r.alpha == from_int(want), r.to_json()


def test_withtops_witness_shape():
    r = normal_rank(fixture("withtops_all"))
    assert r.witness.x.render() == "all(base)"
    (child,) = r.witness.children
    assert child.rid == "tops" and child.witness.is_base()


def test_aleph1_rank_certificates():
    w = fixture("withtops_all")
    r = kappa_rank(w, ALEPH1)
    assert r.status == "NoRank"
    assert r.certificate.kind == "branching-tree-containment"
    assert kappa_rank(parse("tree(aleph1)"), ALEPH1).status == "NoRank"
    assert kappa_rank(parse("complete(aleph1)"), ALEPH1).status == "NoRank"
    # countable graphs have aleph1-rank 0
    assert kappa_rank(parse("ray"), ALEPH1).alpha == ZERO
    assert no_rank_certificates(parse("ray"), normally_spanned(parse("ray"))) is None


def test_schmidt_examples():
    assert schmidt_rank(parse("finite{v:[a, b], e:[a-b]}")).alpha == ZERO
    assert schmidt_rank(fixture("star_aleph0")).alpha == from_int(1)
    assert schmidt_rank(fixture("star_of_stars")).alpha == from_int(2)
    with pytest.raises(RaylessInputError):
        schmidt_rank(parse("ray"))


def _grows(e, x_addrs, probe_names):
    """Does some component after deleting the explicit set keep growing
    across widths (the truncation signature of an infinite component)?"""
    sizes = []
    for w in (2, 4, 6):
        t = truncate(e, 3, w)
        deleted = {a for a in x_addrs if t.has_vertex(a)}
        comps = t.components(removed=deleted)
        sizes.append(max((len(c) for c in comps), default=0))
    return sizes[0] < sizes[1] < sizes[2]


def test_star_rank_one_by_exhaustive_oracle():
    """No finite catalog set leaves only finite pieces except through the
    centre; deleting the centre leaves bounded pieces."""
    e = fixture("star_aleph0")
    pool = [A("center")] + [A(f"leaf.{i}") for i in range(3)]
    for cut in range(len(pool)):
        x = [pool[i] for i in range(len(pool)) if i != cut]
        if A("center") not in x:
            assert _grows(e, x, None), "a finite non-centre set cannot work"
    t = truncate(e, 3, 6)
    comps = t.components(removed={A("center")})
    assert max(len(c) for c in comps) == 1  # isolated leaves, rank 0 each


def test_star_of_stars_rank_two_by_exhaustive_oracle():
    """Every catalog finite set leaves a growing component (no rank 1);
    the hub deletion leaves star components, each of rank 1."""
    e = fixture("star_of_stars")
    pool = [A("hub")] + [A(f"copy.{i}/center") for i in range(3)] \
        + [A(f"copy.{i}/leaf.0") for i in range(2)]
    import itertools
    for size in (1, 2, 3):
        for x in itertools.combinations(pool, size):
            assert _grows(e, list(x), None), f"finite {x} must leave an infinite piece"
    t = truncate(e, 3, 5)
    comps = t.components(removed={A("hub")})
    assert len(comps) == 5 and all(len(c) == 6 for c in comps)


def test_certificate_soundness_by_bounded_search():
    """Whenever a negative certificate fires, the plain candidate search
    confirms the absence of a witness."""
    from graphrank.ranks import candidate_sets
    for name, ideal_of in [("k_aleph1", normally_spanned),
                           ("withtops_all", lambda e: sets_below(ALEPH1))]:
        e = fixture(name)
        ideal = ideal_of(e)
        assert ideal.contains(e, AllOf(())) != "Yes"
        for x in candidate_sets(e):
            if ideal.contains(e, x) != "Yes":
                continue
            regions = components_after_deletion(e, x)
            assert isinstance(regions, Unsupported) or any(
                r.expr is None or r.expr.render() == e.render()
                for r in regions
            ), "a candidate would make progress against the certificate"


# -- monotonicity lemmas ---------------------------------------------------------


ALEPH1_VS_NORMAL = ["ray", "comb2", "star_aleph0", "tree_aleph0",
                    "k_aleph0", "star_of_stars", "comb_dominated"]


@pytest.mark.parametrize("name", ALEPH1_VS_NORMAL)
def test_aleph1_rank_bounds_normal_rank(name):
    """A graph with a below-aleph1 rank has normal rank at most that."""
    e = fixture(name)
    below = kappa_rank(e, ALEPH1)
    norm = normal_rank(e)
    assert below.is_ranked() and norm.is_ranked()
    assert norm.alpha <= below.alpha


SUBGRAPH_TRIPLES = [
    # (host, inner region, outer region): inner inside outer inside host
    ("withtops_all", ("base",), ()),
    ("nested_tops", ("base", "base"), ("base",)),
    ("nested_tops", ("base", "base"), ()),
    ("star_of_stars", ("base",), ()),
    ("comb_dominated", ("base",), ()),
]


@pytest.mark.parametrize("host,inner,outer", SUBGRAPH_TRIPLES,
                         ids=[f"{h}:{'/'.join(i) or '.'}" for h, i, o in SUBGRAPH_TRIPLES])
def test_smaller_subgraphs_have_smaller_in_host_rank(host, inner, outer):
    e = fixture(host)
    ideal = normally_spanned(e)
    r_inner = ideal_rank_in(e, inner, ideal)
    r_outer = ideal_rank_in(e, outer, ideal)
    assert r_inner.is_ranked() and r_outer.is_ranked()
    assert r_inner.alpha <= r_outer.alpha


@pytest.mark.parametrize("host,inner,outer", SUBGRAPH_TRIPLES[:3],
                         ids=["withtops", "nested-mid", "nested-top"])
def test_in_host_rank_dominates_in_subhost_rank(host, inner, outer):
    """The rank of a subgraph in the big host bounds its rank inside any
    intermediate connected host."""
    from graphrank.expressions import subexpr_at
    e = fixture(host)
    sub_host = subexpr_at(e, outer)
    in_big = ideal_rank_in(e, inner, normally_spanned(e))
    rel = inner[len(outer):]
    in_small = ideal_rank_in(sub_host, rel, normally_spanned(sub_host))
    assert in_big.is_ranked() and in_small.is_ranked()
    assert in_small.alpha <= in_big.alpha


# -- the rank transfer bound -------------------------------------------------------


TRANSFER_CASES = [
    # (host, peeled set, expected bound, induced expression or None)
    ("withtops_all", AllOf(("base",)), 0,
     "join_vertex(tree(aleph1), apex, prefix(b1, .))"),
    ("withtops_every2nd", AllOf(("base",)), 0, None),
    ("nested_tops", AllOf(("base", "base")), 1, None),
    ("star_of_stars", ExplicitSet((A("hub"),)), 0, "star(aleph0)"),
    ("comb_dominated", ExplicitSet((A("d"),)), 0, "comb(1)"),
    ("k_aleph0", ExplicitSet((A("v.0"),)), 0, "complete(aleph0)"),
]


@pytest.mark.parametrize("name,x,want,induced", TRANSFER_CASES,
                         ids=[c[0] for c in TRANSFER_CASES])
def test_rank_transfer_bound(name, x, want, induced):
    """The component's in-host rank bounds the rank of the component
    together with its normally spanned attachment set."""
    e = fixture(name)
    regions = components_after_deletion(e, x)
    assert not isinstance(regions, Unsupported) and regions
    bound = rank_transfer_bound(e, x, regions[0])
    assert bound == from_int(want)
    if induced is not None:
        direct = normal_rank(parse(induced))
        assert direct.is_ranked() and direct.alpha <= bound if want == 0 \
            else direct.alpha == bound
