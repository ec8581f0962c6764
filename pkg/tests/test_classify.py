from __future__ import annotations

import pytest

from lamplighter.classify import (
    GroupSpec,
    abelian_groups_of_order,
    brute_force_units_pair,
    classify_up_to,
    construct_witness,
    format_group_spec,
    has_index2_ideal,
    is_realizable,
    parse_group_spec,
)
from lamplighter.errors import ResourceLimit, SpecParseError
from lamplighter.ring import ModN, additive_group, format_ring_spec, is_unit, parse_ring_spec


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Z/2", False),
        ("Z/4", False),
        ("Z/2 + Z/2", True),
        ("Z/4 + Z/2", False),
        ("Z/3", True),
        ("Z/6", False),
        ("Z/8 + Z/8 + Z/3", True),
        ("Z/2 + Z/2 + Z/4", False),
    ],
)
def test_realizability_rule(text, expected):
    assert is_realizable(parse_group_spec(text)) is expected


def test_group_parsing_and_formatting():
    assert format_group_spec(parse_group_spec("Z/12")) == "Z/4 + Z/3"
    assert parse_group_spec("Z/3 + Z/2 + Z/2") == GroupSpec((2, 2, 3))
    assert str(parse_group_spec("z/9z")) == "Z/9"
    assert parse_group_spec("Z/8+Z/8").order == 64


@pytest.mark.parametrize("text", ["Z/1", "Q/3", "Z/", "Z/4 +"])
def test_bad_group_strings_raise(text):
    with pytest.raises(SpecParseError):
        parse_group_spec(text)


def test_abelian_groups_of_order():
    assert len(list(abelian_groups_of_order(16))) == 5
    assert len(list(abelian_groups_of_order(72))) == 6
    assert list(abelian_groups_of_order(1)) == []
    assert {format_group_spec(g) for g in abelian_groups_of_order(12)} == {"Z/4 + Z/3", "Z/2 + Z/2 + Z/3"}


def test_witness_examples():
    result = construct_witness(parse_group_spec("Z/9"))
    assert result.to_dict() == {
        "group": "Z/9",
        "realizable": True,
        "witness": {"ring": "zmod:9", "r": "1", "a": "1", "b": "2"},
    }

    four = construct_witness(parse_group_spec("Z/2 + Z/2")).witness
    assert format_ring_spec(four.ring) == "gr:2:1:2"
    assert (str(four.a), str(four.b)) == ("1", "z")

    mixed = construct_witness(parse_group_spec("Z/4 + Z/4 + Z/3")).witness
    assert format_ring_spec(mixed.ring) == "gr:2:2:2*zmod:3"
    assert (str(mixed.a), str(mixed.b)) == ("(1,1)", "(z,2)")


def test_unrealizable_group_has_no_witness():
    result = construct_witness(parse_group_spec("Z/4 + Z/2 + Z/5"))
    assert not result.realizable
    assert result.to_dict()["witness"] is None


def test_classification_table_up_to_eight():
    results = list(classify_up_to(8))
    assert len(results) == 10
    realizable = sorted(format_group_spec(r.group) for r in results if r.realizable)
    assert realizable == ["Z/2 + Z/2", "Z/2 + Z/2 + Z/2", "Z/3", "Z/5", "Z/7"]


def test_every_witness_up_to_64_satisfies_its_conditions():
    for result in classify_up_to(64):
        assert result.realizable is is_realizable(result.group)
        if not result.realizable:
            continue
        witness = result.witness
        assert is_unit(witness.a) and is_unit(witness.b) and is_unit(witness.a - witness.b)
        assert additive_group(witness.ring) == result.group


@pytest.mark.parametrize("n", range(2, 33))
def test_modn_has_unit_pair_exactly_when_odd(n):
    pair = brute_force_units_pair(ModN(n))
    assert (pair is not None) is (n % 2 == 1)
    assert has_index2_ideal(ModN(n)) is (n % 2 == 0)


def test_first_unit_pair_for_zmod9():
    a, b = brute_force_units_pair(ModN(9))
    assert (str(a), str(b)) == ("1", "2")


@pytest.mark.parametrize(
    "spec_text",
    [
        "gr:2:1:2",
        "gr:2:2:2",
        "gr:3:1:2",
        "gr:2:1:3",
        "zmod:2*zmod:2",
        "zmod:3*zmod:3",
        "gr:2:1:2*zmod:2",
        "gr:2:1:2*zmod:3",
        "zmod:4*zmod:9",
    ],
)
def test_unit_pair_exists_exactly_without_index2_ideal(spec_text):
    spec = parse_ring_spec(spec_text)
    assert (brute_force_units_pair(spec) is not None) is (not has_index2_ideal(spec))


def test_index2_ideal_examples():
    assert not has_index2_ideal(parse_ring_spec("gr:2:1:2"))
    assert not has_index2_ideal(parse_ring_spec("gr:2:2:2"))
    assert has_index2_ideal(parse_ring_spec("gr:2:1:2*zmod:2"))


def test_scans_respect_budget():
    with pytest.raises(ResourceLimit):
        has_index2_ideal(ModN(64), budget=10)
    with pytest.raises(ResourceLimit):
        brute_force_units_pair(ModN(64), budget=10)
