from __future__ import annotations

from itertools import product

import pytest

from hyperk.constructions import gf, m_of_g, marshall_quotient, special_group_of, squares
from hyperk.hyperstructures import MalformedStructure, classify
from hyperk.specialgroups import (
    SpecialGroupTable,
    check_sg,
    dm_ktheory,
    extend_iso,
    field_special_group,
    reality_check,
    reduced_product_group,
    represents,
    sg_from_json,
    sg_to_json,
)


def _naive_ternary(g: SpecialGroupTable, a, b) -> bool:
    order = g.order
    for x, y in product(range(order), repeat=2):
        if not g.related(a[0], x, b[0], y):
            continue
        for z in range(order):
            if g.related(a[1], a[2], x, z) and g.related(b[1], b[2], y, z):
                return True
    return False


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_reduced_groups_are_special(dim):
    rep = check_sg(reduced_product_group(dim))
    assert rep.ok
    assert rep.extras["classification"] == "special"


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_field_groups_are_special(p):
    assert check_sg(field_special_group(p)).extras["classification"] == "special"


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_extraction_from_square_quotient_matches_quadratic_forms(p):
    f = gf(p)
    q, _, _ = marshall_quotient(f, squares(f))
    g, _ = special_group_of(q)
    expected = field_special_group(p)
    assert g.minus_one == expected.minus_one
    assert g.iso == expected.iso


@pytest.mark.parametrize("dim", [1, 2])
def test_ternary_extension_matches_naive_definition(dim):
    g = reduced_product_group(dim)
    rel = extend_iso(g, 3)
    for a in product(range(g.order), repeat=3):
        for b in product(range(g.order), repeat=3):
            assert rel.related(a, b) == _naive_ternary(g, a, b), (a, b)


def test_ternary_extension_field_group():
    g = field_special_group(5)
    rel = extend_iso(g, 3)
    for a in product(range(2), repeat=3):
        for b in product(range(2), repeat=3):
            assert rel.related(a, b) == _naive_ternary(g, a, b)


def test_represents_binary_forms_in_reduced_group():
    g = reduced_product_group(2)
    assert represents(g, (0, 0)) == frozenset({0})
    # <1, -1> represents everything
    assert represents(g, (0, 3)) == frozenset(range(4))
    assert represents(g, (1, 2)) == frozenset(range(4))
    assert represents(g, (0, 1)) == frozenset({0, 1})


def test_planted_sg2_defect():
    g = reduced_product_group(2)
    iso = {t for t in g.iso if not ({t[0], t[1]} == {1, 2} and {t[2], t[3]} == {0, 3})}
    iso = {t for t in iso if not ({t[2], t[3]} == {1, 2} and {t[0], t[1]} == {0, 3})}
    bad = SpecialGroupTable(2, 3, frozenset(iso), "defect")
    rep = check_sg(bad)
    assert not rep["SG2"].passed
    assert rep["SG2"].witness == (1,)
    assert rep.extras["classification"] == "none"


def test_planted_sg3_defect():
    g = reduced_product_group(1)
    bad = SpecialGroupTable(1, 1, frozenset(set(g.iso) | {(0, 0, 1, 0)}), "defect")
    rep = check_sg(bad)
    assert not rep["SG3"].passed


def test_table_rejects_out_of_range():
    with pytest.raises(MalformedStructure):
        SpecialGroupTable(1, 1, frozenset({(0, 0, 0, 2)}))
    with pytest.raises(MalformedStructure):
        SpecialGroupTable(1, 2, frozenset())


def test_reality():
    r = reality_check(reduced_product_group(2))
    assert r.formally_real and r.reduced and r.stabilized_at is not None
    r = reality_check(field_special_group(5))
    assert not r.formally_real
    r = reality_check(field_special_group(3))
    # -1 is a sum of two squares in F3
    assert not r.formally_real


@pytest.mark.parametrize("g", [reduced_product_group(2), field_special_group(5), field_special_group(7)])
def test_sum_of_ones_levels_match_full_extension(g):
    r = reality_check(g, 4)
    for n, level in enumerate(r.levels, start=1):
        assert level == represents(g, (0,) * n)


@pytest.mark.parametrize("g", [reduced_product_group(1), reduced_product_group(2), reduced_product_group(3)])
def test_round_trip_through_hyperfield(g):
    back, _ = special_group_of(m_of_g(g))
    assert back.minus_one == g.minus_one and back.iso == g.iso


@pytest.mark.parametrize(
    "g", [reduced_product_group(1), reduced_product_group(2), field_special_group(3), field_special_group(5)]
)
def test_special_iff_hyperfield_special_pointwise(g):
    sg_special = check_sg(g).extras["classification"] == "special"
    assert (classify(m_of_g(g), "pointwise") == "special") == sg_special


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_reduced_hyperfields_special_under_both_readings(dim):
    f = m_of_g(reduced_product_group(dim))
    assert classify(f, "expanded") == "special"
    assert classify(f, "pointwise") == "special"


def test_non_reduced_hyperfield_fails_expanded_dm2():
    # M(G(F7)) has 1 + 1 = {1, -1}; the expanded product (1+1)(1+1) leaves 1 - (-1)
    f = m_of_g(field_special_group(7))
    assert classify(f, "expanded") == "hyperbolic"
    assert classify(f, "pointwise") == "special"


def test_dm_ktheory_dims():
    assert dm_ktheory(reduced_product_group(1), 4).dims() == [1, 1, 1, 1, 1]
    assert dm_ktheory(field_special_group(5), 3).dims() == [1, 1, 0, 0]
    assert dm_ktheory(reduced_product_group(2), 3).dims() == [1, 2, 2, 2]


def test_json_round_trip():
    g = reduced_product_group(2)
    back = sg_from_json(sg_to_json(g))
    assert back.iso == g.iso and back.minus_one == g.minus_one and back.name == g.name
    with pytest.raises(MalformedStructure):
        sg_from_json({"dim": 1, "minus_one": [1], "iso": [[[0], [1], [1]]]})
