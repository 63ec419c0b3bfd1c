from __future__ import annotations

from dataclasses import replace

import pytest

from hyperk.constructions import builtin, m_of_g, product_h, q2
from hyperk.ktheory import (
    IgrMorphism,
    check_igr,
    check_igr_morphism,
    igr_from_k,
    igr_plus_report,
    one_subring,
    polynomial_igr,
    quotient_functor,
    reduced_k,
    tensor_algebra_igr,
    with_free_generator,
)
from hyperk.specialgroups import field_special_group, reduced_product_group

PRE_SPECIAL = {
    "q2": q2(),
    "q2xq2": product_h(q2(), q2()),
    "m_red2": m_of_g(reduced_product_group(2)),
    "m_red3": m_of_g(reduced_product_group(3)),
    "m_f5": m_of_g(field_special_group(5)),
    "h3": builtin("h3"),
    "krasner": builtin("krasner"),
}


def _k(name: str, top: int = 3):
    return igr_from_k(reduced_k(PRE_SPECIAL[name], top))


def _same(a, b) -> bool:
    return a.dims == b.dims and a.top == b.top and a.h == b.h and dict(a.products) == dict(b.products)


@pytest.mark.parametrize("name", ["q2", "krasner", "h2", "h3", "h5", "gf3", "gf5", "gf7", "x1"])
def test_k_theory_of_builtins_passes(name):
    assert check_igr(igr_from_k(reduced_k(builtin(name), 3))).ok


def test_planted_top_defect_fails_condition_iii():
    r = _k("q2")
    h = list(r.h)
    h[1] = (0,)
    bad = replace(r, h=tuple(h))
    rep = check_igr(bad)
    assert not rep["iii"].passed and rep["iii"].witness == (1,)
    assert not rep["iv"].passed


def test_planted_unit_defect_fails_condition_i():
    r = _k("q2")
    bad = replace(r, top=(0,) + r.top[1:])
    assert not check_igr(bad)["i"].passed


def test_planted_commutativity_defect_fails_condition_v():
    r = _k("q2xq2", 2)
    products = dict(r.products)
    table = [list(row) for row in products[(1, 1)]]
    table[0][1] ^= 1
    products[(1, 1)] = tuple(tuple(row) for row in table)
    rep = check_igr(replace(r, products=products))
    assert not rep["v"].passed


def test_malformed_top_fails_condition_ii():
    r = _k("q2")
    bad = replace(r, top=r.top[:1] + (0b10,) + r.top[2:])
    assert not check_igr(bad)["ii"].passed


@pytest.mark.parametrize("name", sorted(PRE_SPECIAL))
def test_functors_fix_k_theory(name):
    r = _k(name, 2 if name == "m_red3" else 3)
    one, inc, flag = one_subring(r)
    assert flag and _same(one, r)
    assert check_igr_morphism(inc, one, r).ok
    quo, proj, qflag = quotient_functor(r)
    assert qflag and _same(quo, r)
    assert check_igr_morphism(proj, r, quo).ok
    assert igr_plus_report(r).ok


def test_extra_generator_is_not_generated_in_degree_one():
    r = _k("m_red2", 3)
    z = with_free_generator(r, 2)
    assert check_igr(z).ok
    one, inc, flag = one_subring(z)
    assert not flag
    assert one.dims == r.dims and z.dims[2] == r.dims[2] + 1
    assert check_igr_morphism(inc, one, z).ok
    assert not inc.is_isomorphism()
    assert not igr_plus_report(z)["generated_in_degree_1"].passed


def test_one_subring_is_idempotent():
    z = with_free_generator(_k("q2xq2", 3), 2)
    once, _, _ = one_subring(z)
    twice, _, flag = one_subring(once)
    assert flag and _same(once, twice)


def test_quotient_of_tensor_algebra_shrinks_degree_two():
    t = tensor_algebra_igr(2, 2)
    q, proj, flag = quotient_functor(t)
    assert not flag
    assert t.dims[2] == 4 and q.dims[2] == 2
    # the free algebra is not commutative, so it is not an inductive graded ring itself
    assert not check_igr(t)["v"].passed


def test_quotient_of_polynomial_ring():
    p = polynomial_igr(2, 3)
    assert check_igr(p).ok
    q, proj, flag = quotient_functor(p)
    assert not flag
    assert p.dims == (1, 2, 3, 4) and q.dims == (1, 2, 2, 2)
    assert check_igr(q).ok
    assert check_igr_morphism(proj, p, q).ok
    again, _, flag2 = quotient_functor(q)
    assert flag2 and _same(again, q)


def test_morphism_checker_catches_bad_maps():
    r = _k("q2xq2", 2)
    swap = IgrMorphism(r, r, ((1,), (0b10, 0b01), tuple(1 << i for i in range(r.dims[2]))))
    rep = check_igr_morphism(swap, r, r)
    # the swap of generators moves top_1 = rho(-1) = e0 + e1 only if top is symmetric
    assert rep["degree0"].passed
    zero = IgrMorphism(r, r, ((1,), (0, 0), (0,) * r.dims[2]))
    assert not check_igr_morphism(zero, r, r)["top"].passed


def test_with_free_generator_bounds():
    with pytest.raises(ValueError):
        with_free_generator(_k("q2", 2), 1)
