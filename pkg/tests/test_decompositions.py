"""The rank/decomposition translation and the decomposition axioms."""

import json

import pytest

from graphrank.cardinality import ALEPH1
from graphrank.decompositions import (
    DecompositionError, TreeDecomposition, decomposition_to_rank,
    rank_to_decomposition, verify_decomposition, witness_from_json,
)
from graphrank.fixtures import fixture, fixture_names
from graphrank.ideals import finite_sets, normally_spanned, sets_below
from graphrank.ordinals import ZERO, from_int
from graphrank.parser import parse
from graphrank.ranks import PeelingTree, kappa_rank, normal_rank, schmidt_rank
from graphrank.truncation import truncate

RANKED_NORMAL = [n for n in fixture_names() if n != "k_aleph1"]


@pytest.mark.parametrize("name", RANKED_NORMAL)
def test_round_trip_bound(name):
    """The constructed decomposition never overshoots the rank, and the
    minimum over all emitted decompositions realises it exactly."""
    e = fixture(name)
    ideal = normally_spanned(e)
    r = normal_rank(e)
    assert r.is_ranked()
    td = rank_to_decomposition(e, r.witness, ideal)
    bound, induced = decomposition_to_rank(e, td, ideal)
    assert bound <= r.alpha
    assert induced is r.witness
    bounds = []
    for _alpha, w in r.all_witnesses:
        td2 = rank_to_decomposition(e, w, ideal)
        bounds.append(decomposition_to_rank(e, td2, ideal)[0])
    assert min(bounds) == r.alpha


def test_schmidt_round_trip():
    for name, want in [("star_aleph0", 1), ("star_of_stars", 2)]:
        e = fixture(name)
        r = schmidt_rank(e)
        td = rank_to_decomposition(e, r.witness, finite_sets())
        bound, _ = decomposition_to_rank(e, td, finite_sets())
        assert bound == from_int(want) == r.alpha


def test_trivial_decomposition():
    e = parse("ray")
    td = rank_to_decomposition(e, PeelingTree(), normally_spanned(e))
    bound, _ = decomposition_to_rank(e, td, normally_spanned(e))
    assert bound == ZERO
    assert verify_decomposition(e, td).passed()


def test_star_decomposition_shape():
    """The star fixture's finite-sets decomposition: centre part, one leaf
    part per leaf, each widened by the centre."""
    e = fixture("star_aleph0")
    r = schmidt_rank(e)
    td = rank_to_decomposition(e, r.witness, finite_sets())
    inst = td.instantiate(truncate(e, 2, 4))
    root_part = inst.parts["t*"]
    assert {v.render() for v in root_part} == {"center"}
    leaf_parts = [p for n, p in inst.parts.items() if n != "t*"]
    assert len(leaf_parts) == 4
    assert all(len(p) == 2 and any(v.render() == "center" for v in p)
               for p in leaf_parts)


def test_withtops_star_decomposition():
    """The topped tree: central part the branching tree, one part per top
    widened by it."""
    e = fixture("withtops_all")
    r = normal_rank(e)
    td = rank_to_decomposition(e, r.witness, normally_spanned(e))
    assert td.tree_rank() == from_int(1)
    t = truncate(e, 3, 2)
    inst = td.instantiate(t)
    base = {v for v in t.vertices if v.render().startswith("root")}
    assert inst.parts["t*"] == frozenset(base)
    tops = [v for v in t.vertices if v.render().startswith("top.")]
    for name, part in inst.parts.items():
        if name == "t*":
            continue
        inner = part - frozenset(base)
        assert len(inner) == 1 and list(inner)[0] in tops
    rep = verify_decomposition(e, td)
    assert rep.passed(), rep.failures


@pytest.mark.parametrize("name", ["withtops_all", "nested_tops",
                                  "star_of_stars", "k_aleph0", "comb2"])
def test_axioms_on_truncation_sweep(name):
    e = fixture(name)
    ideal = normally_spanned(e)
    r = normal_rank(e)
    td = rank_to_decomposition(e, r.witness, ideal)
    rep = verify_decomposition(e, td)
    assert rep.passed(), rep.failures


def test_tampered_decomposition_fails_t2():
    """A decomposition that forgets an edge's second endpoint fails the
    edge axiom with a witness."""
    e = parse("finite{v:[a, b, c], e:[a-b, b-c]}")

    class Bogus:
        def is_rayless(self):
            return "Yes"

        def instantiate(self, trunc):
            from graphrank.decompositions import DecompInstance
            va, vb, vc = trunc.vertices
            return DecompInstance(
                nodes=["n0", "n1"], edges=[("n0", "n1")],
                parts={"n0": frozenset({va, vb}), "n1": frozenset({vc})},
            )

    rep = verify_decomposition(e, Bogus(), sweep=[(2, 1)])
    assert not rep.passed()
    assert any("T2" in cell and not ok
               for cells in rep.cells.values() for cell, ok in cells.items())


def test_parts_must_belong_to_the_ideal():
    e = fixture("withtops_all")
    r = normal_rank(e)
    with pytest.raises(DecompositionError):
        rank_to_decomposition(e, r.witness, sets_below(ALEPH1))


def test_portable_witness_json():
    e = fixture("nested_tops")
    ideal = normally_spanned(e)
    r = normal_rank(e)
    td = rank_to_decomposition(e, r.witness, ideal)
    doc = json.loads(json.dumps(td.to_json()))
    rebuilt = witness_from_json(e, ideal, doc["witness"])
    assert rebuilt.to_json() == r.witness.to_json()
    td2 = TreeDecomposition(e, ideal, rebuilt)
    assert verify_decomposition(e, td2, sweep=[(3, 2)]).passed()
