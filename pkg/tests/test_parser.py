import pytest

from graphrank.addresses import parse_address
from graphrank.descriptors import SpineOf, parse_descriptor
from graphrank.expressions import Comb, JoinVertex, Ray, WithTops
from graphrank.fixtures import FIXTURES
from graphrank.parser import ParseError, parse


def test_basic_constructors():
    assert isinstance(parse("ray"), Ray)
    w = parse("with_tops(tree(aleph1), all, whole_ray)")
    assert isinstance(w, WithTops) and w.adjacency == "whole_ray"
    j = parse("join_vertex(comb(0), d, spine(.))")
    assert isinstance(j, JoinVertex) and j.label == "d"
    assert isinstance(j.base, Comb) and j.base.tooth_len == 0
    assert j.attach == SpineOf(())


def test_round_trip_on_catalog():
    for text in FIXTURES.values():
        e = parse(text)
        assert parse(e.render()).render() == e.render()


def test_finite_graph():
    e = parse("finite{v:[a, b, c], e:[a-b, b-c]}")
    assert e.vertices == ("a", "b", "c")
    assert e.edges == (("a", "b"), ("b", "c"))
    assert parse(e.render()) == e


def test_position_annotated_errors():
    with pytest.raises(ParseError) as err:
        parse("comb(two)")
    assert "at" in str(err.value)
    with pytest.raises(ParseError):
        parse("ray extra")
    with pytest.raises(ParseError):
        parse("star(aleph2)")


def test_withtops_wants_uncountable_tree():
    with pytest.raises(ParseError):
        parse("with_tops(tree(aleph0), all, whole_ray)")
    with pytest.raises(ParseError):
        parse("with_tops(ray, all, whole_ray)")


def test_hang_wants_withtops():
    with pytest.raises(ParseError):
        parse("hang_at_tops(ray, ray)")


def test_address_round_trip():
    for text in ["r3", "r0/t2", "center", "leaf.4", "root/b1/b2",
                 "top.b1.b2", "under.b1/root", "left/r0", "copy.3/center",
                 "v.7"]:
        assert parse_address(text).render() == text


def test_descriptor_round_trip():
    for text in ["all(.)", "spine(.)", "centers(base)", "leaves(.)",
                 "tops(.)", "level(2, base)", "prefix(b1, .)",
                 "prog(., 0, 2)", "set[r0; r2]",
                 "union_of(all(left), all(right/base))"]:
        assert parse_descriptor(text).render() == text
