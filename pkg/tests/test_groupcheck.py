from __future__ import annotations

import itertools
import random

import pytest

from conftest import make_params
from lamplighter.errors import DepthExhausted, NotAUnit, PreconditionFailed, ResourceLimit
from lamplighter.groupcheck import (
    AffineMap,
    affine_compose,
    affine_identity,
    affine_inverse,
    affine_mu,
    affine_order,
    affine_section,
    check_basis_distinct,
    check_conjugation,
    check_oracle_equivalence,
    check_section_laws,
    check_self_replication_witnesses,
    check_spherical_transitivity,
    check_state_sections,
    check_wreath_relations,
    find_annihilator,
    level_orbit_size,
    run_suite,
    state_as_affine,
    wreath_relations,
)
from lamplighter.ring import ModN, enumerate_ring, is_unit, parse_ring_spec
from lamplighter.series import SeriesParams, expand_f, ts_from_word, ts_one, ts_zero


RINGS_UP_TO_16 = [f"zmod:{n}" for n in range(2, 17)] + [
    "gr:2:1:2",
    "gr:2:2:2",
    "gr:3:1:2",
    "gr:2:1:3",
    "gr:2:1:4",
    "zmod:2*zmod:2",
    "zmod:2*zmod:4",
    "zmod:4*zmod:4",
    "gr:2:1:2*zmod:2",
]


def all_params(spec_text):
    spec = parse_ring_spec(spec_text)
    elements = enumerate_ring(spec)
    for r, a, b in itertools.product(elements, repeat=3):
        if is_unit(r):
            yield SeriesParams(spec, r, a, b)


def test_affine_map_needs_unit_multiplier():
    z9 = ModN(9)
    with pytest.raises(NotAUnit):
        AffineMap(ts_from_word(z9, (3, 1)), ts_zero(z9, 1))


def test_affine_inverse_composes_to_identity(zmod9_params):
    g = state_as_affine(zmod9_params, ModN(9).element(4), 4)
    identity = affine_identity(ModN(9), 4)
    assert affine_compose(g, affine_inverse(g)) == identity
    assert affine_compose(affine_inverse(g), g) == identity


def test_affine_section_at_depth_zero_raises():
    z3 = ModN(3)
    with pytest.raises(DepthExhausted):
        affine_section(affine_identity(z3, 0), z3.element(1))


def test_affine_order():
    z4 = ModN(4)
    assert affine_order(affine_identity(z4, 3)) == 1
    assert affine_order(affine_mu(ts_from_word(z4, (3, 0))), cap=10) == 2
    assert affine_order(affine_mu(ts_from_word(z4, (1, 1))), cap=3) is None


def test_conjugation_on_random_series(bireversible_params, gr4_params):
    rng = random.Random(7)
    for params in (bireversible_params, gr4_params):
        for _ in range(10):
            n = params.ring.order
            h = ts_from_word(params.ring, [rng.randrange(n) for _ in range(5)])
            assert check_conjugation(params, h)


@pytest.mark.parametrize("spec_text", RINGS_UP_TO_16)
def test_conjugation_for_every_parameter_set_at_depth_ten(spec_text):
    rng = random.Random(spec_text)
    for params in all_params(spec_text):
        n = params.ring.order
        h = ts_from_word(params.ring, [rng.randrange(n) for _ in range(11)])
        assert check_conjugation(params, h)


def test_states_have_the_right_sections(bireversible_params, zmod9_params, gr4_params, degenerate_params):
    assert check_state_sections(bireversible_params, 4)
    assert check_state_sections(zmod9_params, 3)
    assert check_state_sections(gr4_params, 2)
    assert check_state_sections(degenerate_params, 3)
    with pytest.raises(DepthExhausted):
        check_state_sections(bireversible_params, 0)


def test_oracle_agrees_with_automaton(nonreversible_params, zmod9_params, gr4_params):
    for params in (nonreversible_params, zmod9_params, gr4_params):
        assert check_oracle_equivalence(params, 4, samples=60, rng=random.Random(1))


def test_oracle_on_long_words(bireversible_params, nonreversible_params, zmod9_params, gr4_params):
    for params in (bireversible_params, nonreversible_params, zmod9_params, gr4_params):
        assert check_oracle_equivalence(params, 11, samples=1000, rng=random.Random(2))


def test_basis_distinct(zmod9_params, gr4_params, degenerate_params):
    assert check_basis_distinct(zmod9_params, 2)
    assert check_basis_distinct(gr4_params, 1)
    assert check_basis_distinct(degenerate_params, 0)
    assert not check_basis_distinct(degenerate_params, 1)


@pytest.mark.parametrize("spec_text", ["zmod:2", "zmod:3", "zmod:4", "zmod:6", "zmod:8", "zmod:9", "gr:2:1:2"])
def test_basis_distinct_exactly_when_difference_is_a_unit(spec_text):
    for params in all_params(spec_text):
        assert check_basis_distinct(params, 1) == is_unit(params.a_minus_b)


def test_basis_distinct_respects_budget(zmod9_params):
    with pytest.raises(ResourceLimit):
        check_basis_distinct(zmod9_params, 3, budget=1000)


def test_annihilator(zmod9_params, degenerate_params):
    assert find_annihilator(zmod9_params, 4) is None
    assert find_annihilator(degenerate_params, 4) == ModN(4).element(2)
    z6 = make_params("zmod:6", "1", "5", "2")
    assert find_annihilator(z6, 3) == ModN(6).element(2)
    for params in all_params("zmod:8"):
        found = find_annihilator(params, 2)
        if is_unit(params.a_minus_b):
            assert found is None
        else:
            assert found != ModN(8).element(0)
            assert found * params.a_minus_b == ModN(8).element(0)


def test_wreath_relations_hold_for_unit_difference(zmod9_params, bireversible_params):
    assert check_wreath_relations(zmod9_params, 4)
    relations = wreath_relations(bireversible_params, 3)
    assert relations["translations_additive"]
    assert relations["translations_commute"]
    assert relations["shift"]
    assert relations["holds"]


def test_wreath_relations_fail_for_degenerate_series(degenerate_params):
    relations = wreath_relations(degenerate_params, 4)
    assert relations["mu_order"] == 2
    assert relations["order_bound"] == 5
    assert not relations["holds"]


def test_degenerate_mu_has_order_two_at_every_depth(degenerate_params):
    for depth in range(1, 11):
        assert affine_order(affine_mu(expand_f(degenerate_params, depth))) == 2
        relations = wreath_relations(degenerate_params, depth)
        assert relations["mu_order"] == 2
        assert relations["holds"] is (depth == 1)


def test_spherical_transitivity(bireversible_params, zmod9_params, degenerate_params):
    assert check_spherical_transitivity(bireversible_params, 3)
    assert check_spherical_transitivity(zmod9_params, 2)
    assert level_orbit_size(degenerate_params, 2) == 2
    assert not check_spherical_transitivity(degenerate_params, 2)
    with pytest.raises(ResourceLimit):
        level_orbit_size(zmod9_params, 4, budget=100)


def test_section_laws(zmod9_params, gr4_params):
    assert check_section_laws(zmod9_params, 3, random.Random(3), samples=20)
    assert check_section_laws(gr4_params, 2, random.Random(3), samples=10)


def test_self_replication_for_b_zero_and_a_zero():
    assert check_self_replication_witnesses(make_params("zmod:9", "1", "1", "0"), 3, random.Random(5), samples=10)
    assert check_self_replication_witnesses(make_params("zmod:9", "1", "0", "2"), 3, random.Random(5), samples=10)
    assert check_self_replication_witnesses(make_params("gr:2:1:2", "1", "z", "0"), 3, random.Random(5), samples=10)


def test_self_replication_preconditions(bireversible_params, zmod9_params):
    with pytest.raises(PreconditionFailed):
        check_self_replication_witnesses(bireversible_params, 3)
    with pytest.raises(PreconditionFailed):
        check_self_replication_witnesses(make_params("zmod:9", "1", "1", "2"), 3)
    with pytest.raises(PreconditionFailed):
        check_self_replication_witnesses(make_params("zmod:9", "1", "3", "0"), 3)


def test_mu_of_f_fixes_the_zero_vertex(zmod9_params):
    mu = affine_mu(expand_f(zmod9_params, 3))
    assert mu(ts_zero(ModN(9), 3)) == ts_zero(ModN(9), 3)
    assert mu(ts_one(ModN(9), 3)) == expand_f(zmod9_params, 3)


def test_run_suite_on_bireversible_example(bireversible_params):
    reports = run_suite(bireversible_params, depth=3, level=2, seed=11, workers=2)
    names = [report.check for report in reports]
    assert names == [
        "conjugation",
        "basis_distinct",
        "annihilator",
        "wreath_relations",
        "spherical_transitivity",
        "oracle_equivalence",
        "state_sections",
        "section_laws",
        "self_replication",
    ]
    assert not any(report.failed for report in reports)
    by_name = {report.check: report for report in reports}
    assert by_name["self_replication"].result is None
    assert "skipped" in by_name["self_replication"].to_dict()
    assert by_name["basis_distinct"].depth == 2
    assert by_name["spherical_transitivity"].witness == {"level": 2, "orbit": 9, "expected": 9}
    assert by_name["conjugation"].witness == {"samples": 100}


def test_run_suite_at_full_depth(bireversible_params, nonreversible_params, zmod9_params, gr4_params):
    for params in (bireversible_params, nonreversible_params, zmod9_params, gr4_params):
        reports = {report.check: report for report in run_suite(params, depth=8, level=3, seed=0, workers=4)}
        assert not any(report.failed for report in reports.values())
        assert reports["self_replication"].result is None
        orbit = params.ring.order**3
        assert reports["spherical_transitivity"].witness == {"level": 3, "orbit": orbit, "expected": orbit}
        assert reports["basis_distinct"].witness == {"depths": {0: True, 1: True, 2: True}}


def test_run_suite_flags_degenerate_series(degenerate_params):
    reports = {report.check: report for report in run_suite(degenerate_params, depth=3, level=2, workers=1)}
    assert reports["basis_distinct"].failed
    assert reports["annihilator"].failed
    assert reports["annihilator"].witness == {"annihilator": "2"}
    assert reports["wreath_relations"].failed
    assert reports["wreath_relations"].witness["mu_order"] == "order 2"
    assert reports["spherical_transitivity"].failed
    assert not reports["oracle_equivalence"].failed
    assert not reports["state_sections"].failed
