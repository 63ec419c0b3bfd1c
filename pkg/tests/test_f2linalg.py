from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperk.f2linalg import (
    DimensionError,
    F2Subspace,
    F2Vector,
    ResourceLimitError,
    TensorIndex,
    check_ambient,
    express,
    extend_to_basis,
    iter_bits,
    kron,
    max_ambient,
    rank,
    span,
)
from oracles import gf2_rank


def _as_list(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


vectors = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=10))
)


@given(vectors)
def test_rank_matches_textbook_elimination(data):
    n, vs = data
    assert rank(vs, n) == gf2_rank([_as_list(v, n) for v in vs])


@given(vectors, st.integers(0, 255))
def test_reduce_is_canonical(data, raw):
    n, vs = data
    s = span(vs, n)
    v = raw & ((1 << n) - 1)
    r = s.reduce(v)
    assert s.reduce(r) == r
    assert (r ^ v) in s
    for row in s.rows:
        assert s.reduce(v ^ row) == r


@given(vectors)
def test_rows_are_fully_reduced(data):
    n, vs = data
    s = span(vs, n)
    for p, row in zip(s.pivot_columns, s.rows):
        assert (row & -row).bit_length() - 1 == p
        for q, other in zip(s.pivot_columns, s.rows):
            if other != row:
                assert not (other >> p) & 1


@given(vectors)
def test_complement_columns_give_quotient_basis(data):
    n, vs = data
    s = span(vs, n)
    cols = s.complement_columns()
    assert len(cols) == s.codim
    assert span(list(s.rows) + [1 << c for c in cols], n).dim == n


@given(vectors, st.integers(0, 255))
def test_express_finds_a_combination(data, raw):
    n, vs = data
    target = raw & ((1 << n) - 1)
    combo = express(vs, target)
    if target in span(vs, n):
        assert combo is not None
        acc = 0
        for i in combo:
            acc ^= vs[i]
        assert acc == target
    else:
        assert combo is None


def test_extend_to_basis_keeps_prefix_and_rejects_dependence():
    a = [F2Vector(4, 0b0011), F2Vector(4, 0b0101)]
    pool = [F2Vector(4, 0b0110), F2Vector(4, 0b1000), F2Vector(4, 0b0001)]
    out = extend_to_basis(a, pool)
    assert out[:2] == a
    # 0110 = 0011 + 0101 is skipped, 1000 and 0001 enlarge the span
    assert [v.bits for v in out[2:]] == [0b1000, 0b0001]
    with pytest.raises(DimensionError):
        extend_to_basis([F2Vector(3, 1), F2Vector(3, 1)], [])


def test_vector_bounds_and_arithmetic():
    v = F2Vector.from_list([1, 0, 1])
    assert v.bits == 0b101 and v.to_list() == [1, 0, 1]
    assert (v + F2Vector.unit(3, 0)).to_list() == [0, 0, 1]
    assert v.weight() == 2
    with pytest.raises(DimensionError):
        v[3]
    with pytest.raises(DimensionError):
        v + F2Vector(4, 0)
    with pytest.raises(DimensionError):
        F2Vector(2, 0b100)


def test_span_rejects_oversized_vectors():
    with pytest.raises(DimensionError):
        span([0b1000], 3)


def test_kron_puts_left_factor_major():
    # (e0 + e1) (x) e2 in dimension 3 sets flat indices 0*3+2 and 1*3+2
    assert list(iter_bits(kron(0b011, 0b100, 3))) == [2, 5]
    assert kron(1, 0b101, 3) == 0b101


@given(st.integers(0, 4), st.integers(1, 4))
def test_tensor_index_round_trip(degree, d):
    ti = TensorIndex(degree, d)
    seen = [ti.to_flat(t) for t in ti]
    assert seen == list(range(ti.size))


def test_ambient_cap_can_only_be_lowered(monkeypatch):
    monkeypatch.setenv("HYPERK_MAX_AMBIENT", "16")
    assert max_ambient() == 16
    with pytest.raises(ResourceLimitError):
        check_ambient(17)
    monkeypatch.setenv("HYPERK_MAX_AMBIENT", str(1 << 30))
    assert max_ambient() == 1 << 20


@settings(max_examples=50)
@given(vectors)
def test_subspace_membership_agrees_with_rank(data):
    n, vs = data
    s = span(vs, n)
    for v in range(1 << n):
        assert (v in s) == (gf2_rank([_as_list(x, n) for x in vs + [v]]) == s.dim)


def test_zero_subspace():
    z = F2Subspace.zero(5)
    assert z.dim == 0 and z.codim == 5 and z.reduce(0b10110) == 0b10110
