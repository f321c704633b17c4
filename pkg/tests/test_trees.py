"""Tree descriptors: instantiation, raylessness, normality checking and
the artifact round trip."""

import json

import pytest

from graphrank import rulekit as rk
from graphrank.addresses import Address, RayStep, parse_address
from graphrank.artifacts import rule_from_json, tree_from_json
from graphrank.fixtures import fixture
from graphrank.parser import parse
from graphrank.spanning import (
    end_faithful_spanning_tree, normal_spanning_tree, rayless_spanning_tree,
)
from graphrank.trees import (
    TreeDescriptor, check_normality_on, check_tree_on, instantiate,
)
from graphrank.truncation import truncate


def A(text):
    return parse_address(text)


def test_instantiation_and_checks():
    e = parse("ray")
    tree = normal_spanning_tree(e).tree
    t = truncate(e, 6, 1)
    inst = instantiate(tree, t)
    assert not inst.problems
    assert len(inst.parent) == 5
    assert check_tree_on(tree, t).passed()


def test_raylessness_verdicts():
    assert normal_spanning_tree(parse("ray")).tree.is_rayless() == "No"
    assert normal_spanning_tree(parse("tree(aleph1)")).tree.is_rayless() == "No"
    fan = rayless_spanning_tree(fixture("comb_dominated")).tree
    assert fan.is_rayless() == "Yes"
    hub = rayless_spanning_tree(fixture("withtops_all")).tree
    assert hub.is_rayless() == "Yes"


def test_tampered_tree_fails_acyclicity():
    """Redirecting one parent rule to create a cycle is caught on some
    truncation."""
    e = parse("ray")
    good = normal_spanning_tree(e).tree
    swapped = TreeDescriptor(
        host=e, root=good.root,
        rules=(rk.specific(A("r1"), A("r2")), rk.specific(A("r2"), A("r1")))
        + good.rules,
        covers=None, ends_summary=good.ends_summary,
    )
    bad_cells = []
    for d in (3, 4, 5):
        rep = check_tree_on(swapped, truncate(e, d, 1))
        if not rep.passed():
            bad_cells.append((d, rep.details[0]))
    assert bad_cells and any("reach" in c[1] for c in bad_cells)


def test_normality_checker_rejects_incomparable_edges():
    """A spanning tree of the complete graph that fans out of one vertex
    is not normal: two leaves are adjacent but incomparable."""
    e = parse("complete(aleph0)")
    fan = TreeDescriptor(host=e, root=A("v.0"), rules=(rk.kvert_fan(0),))
    rep = check_normality_on(fan, truncate(e, 4, 1))
    assert not rep.checks["edges_comparable"]
    ray = normal_spanning_tree(e).tree
    assert check_normality_on(ray, truncate(e, 6, 2)).passed()


def test_normality_chain_condition():
    """The base tree of the topped tree is normal: every component of the
    complement has a chain neighbourhood."""
    from graphrank.descriptors import AllOf
    from graphrank.spanning import normal_tree_for_set
    e = fixture("withtops_all")
    t_nt = normal_tree_for_set(e, AllOf(("base",)))
    for d, w in [(3, 2), (4, 3)]:
        rep = check_normality_on(t_nt, truncate(e, d, w))
        assert rep.passed(), rep.details


@pytest.mark.parametrize("name,builder", [
    ("ray", lambda e: normal_spanning_tree(e).tree),
    ("comb2", lambda e: normal_spanning_tree(e).tree),
    ("star_of_stars", lambda e: normal_spanning_tree(e).tree),
    ("withtops_all", end_faithful_spanning_tree),
    ("nested_tops", end_faithful_spanning_tree),
    ("withtops_every2nd", lambda e: rayless_spanning_tree(e).tree),
    ("k_aleph0", lambda e: rayless_spanning_tree(e).tree),
])
def test_artifact_round_trip(name, builder):
    """Tree artifacts rebuild from JSON into equivalent live rules."""
    e = fixture(name)
    tree = builder(e)
    doc = json.loads(json.dumps(tree.to_json()))
    rebuilt = tree_from_json(doc)
    assert rebuilt.to_json() == tree.to_json()
    for d, w in [(3, 2), (4, 3)]:
        if d < tree.min_d:
            continue
        t = truncate(e, d, w)
        a = instantiate(tree, t)
        b = instantiate(rebuilt, t)
        assert not a.problems and not b.problems
        assert a.parent == b.parent


def test_rule_json_unknown_kind():
    from graphrank.artifacts import ArtifactError
    with pytest.raises(ArtifactError):
        rule_from_json({"kind": "mystery", "params": []})
