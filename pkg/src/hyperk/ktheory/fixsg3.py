"""Witnesses for sum_k rho(a_k) rho(b_k) = 0 in degree 2 over a pre-special hyperfield.

A witness is (c, d, r): c extends a to an independent list, d extends b by
ones, and r assigns to every nonempty subset S of range(m) (keyed by bitmask)
an element r_S in 1 - c_S with d_i equal to the product of r_S over S containing i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..f2linalg import DimensionError, F2Vector, express, extend_to_basis, iter_bits, kron, span
from ..hyperstructures import FiniteHyperfield, FiniteMultiring, as_hyperfield, at_least, classify
from .graded import GradedKData, reduced_k

__all__ = ["Fixsg3Error", "Witness", "ForwardResult", "fixsg3_backward", "fixsg3_forward", "subset_product"]


class Fixsg3Error(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    c: tuple[int, ...]
    d: tuple[int, ...]
    r: tuple[int, ...]  # r[S - 1] for S = 1 .. 2**m - 1

    @property
    def m(self) -> int:
        return len(self.c)

    def to_json(self, f: FiniteMultiring) -> dict:
        return {
            "m": self.m,
            "c": [f.elements[x] for x in self.c],
            "d": [f.elements[x] for x in self.d],
            "r": {
                ",".join(str(i) for i in iter_bits(s)): f.elements[self.r[s - 1]]
                for s in range(1, 1 << self.m)
                if self.r[s - 1] != f.one
            },
        }


@dataclass
class ForwardResult:
    zero: bool
    witness: Witness | None
    reduced: int
    generators_used: int = 0


def subset_product(f: FiniteMultiring, elems: Sequence[int], mask: int) -> int:
    out = f.one
    for i in iter_bits(mask):
        out = f.mul[out][elems[i]]
    return out


@lru_cache(maxsize=32)
def _prepared(hf: FiniteHyperfield, dm2_reading: str) -> tuple[str, GradedKData]:
    return classify(hf, dm2_reading), reduced_k(hf, 2)


def _setup(f: FiniteMultiring, a: Sequence[int], b: Sequence[int], dm2_reading: str):
    hf = as_hyperfield(f)
    if len(a) != len(b):
        raise Fixsg3Error("a and b must have equal length")
    for x in list(a) + list(b):
        if not 0 < x < hf.size:
            raise Fixsg3Error(f"element {x} is not a unit")
    cls, data = _prepared(hf, dm2_reading)
    if not at_least(cls, "pre-special"):
        raise Fixsg3Error(f"{hf.name} is {cls}, not pre-special")
    d = data.k1_dim
    if d and span((data.coords[x] for x in a), d).dim != len(a):
        raise DimensionError("a-list is not linearly independent")
    if not d and a:
        raise DimensionError("a-list is not linearly independent")
    return hf, data


def _sum_vector(data: GradedKData, a: Sequence[int], b: Sequence[int]) -> int:
    v = 0
    for x, y in zip(a, b):
        v ^= data.monomial((x, y))
    return v


def fixsg3_forward(
    f: FiniteMultiring, a: Sequence[int], b: Sequence[int], dm2_reading: str = "pointwise"
) -> ForwardResult:
    hf, data = _setup(f, a, b, dm2_reading)
    d = data.k1_dim
    target = _sum_vector(data, a, b)
    reduced = data.compress(2, data.reduce(2, target))
    if not data.is_zero(2, target):
        return ForwardResult(False, None, reduced)

    # relation generators rho(u) rho(v), v in 1 - u, both nonzero in k_1
    gens: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for u in hf.units:
        cu = data.coords[u]
        if not cu:
            continue
        for v in iter_bits(hf.minus(hf.one, u)):
            if v == 0 or not data.coords[v]:
                continue
            key = (cu, data.coords[v])
            if key not in seen:
                seen.add(key)
                gens.append((u, v))
    combo = express([kron(data.coords[u], data.coords[v], d) for u, v in gens], target)
    if combo is None:
        raise Fixsg3Error("sum vanishes in degree 2 but is not a combination of generators")
    used = [gens[i] for i in combo]

    basis_vecs = extend_to_basis(
        [F2Vector(d, data.coords[x]) for x in a], [F2Vector(d, data.coords[u]) for u, _ in used]
    )
    c = list(a) + [_element(data, bv.bits) for bv in basis_vecs[len(a) :]]
    m = len(c)
    cvecs = [data.coords[x] for x in c]
    r = [hf.one] * ((1 << m) - 1)
    for u, v in used:
        idx = express(cvecs, data.coords[u])
        mask = sum(1 << i for i in idx)
        r[mask - 1] = hf.mul[r[mask - 1]][v]
    dd = []
    for i in range(m):
        acc = hf.one
        for s in range(1, 1 << m):
            if (s >> i) & 1:
                acc = hf.mul[acc][r[s - 1]]
        dd.append(acc)
    return ForwardResult(True, Witness(tuple(c), tuple(dd), tuple(r)), reduced, len(used))


def _element(data: GradedKData, vec: int) -> int:
    for x in range(1, len(data.coords)):
        if data.coords[x] == vec:
            return x
    raise KeyError(vec)


def fixsg3_backward(
    f: FiniteMultiring,
    a: Sequence[int],
    b: Sequence[int],
    w: Witness,
    dm2_reading: str = "pointwise",
) -> tuple[bool, str | None]:
    """Check clauses (a)-(c) of the witness and that the degree-2 sum vanishes.

    Returns (accepted, first failing clause or None).
    """
    hf, data = _setup(f, a, b, dm2_reading)
    n, m = len(a), w.m
    if len(w.d) != m or len(w.r) != (1 << m) - 1 or m < n:
        return False, "malformed"
    if any(not 0 < x < hf.size for x in list(w.c) + list(w.d) + list(w.r)):
        return False, "malformed"
    d = data.k1_dim
    independent = span((data.coords[x] for x in w.c), d).dim == m if d else m == 0
    if not independent or tuple(w.c[:n]) != tuple(a):
        return False, "a"
    if tuple(w.d[:n]) != tuple(b) or any(x != hf.one for x in w.d[n:]):
        return False, "b"
    for s in range(1, 1 << m):
        cs = subset_product(hf, w.c, s)
        if not (hf.minus(hf.one, cs) >> w.r[s - 1]) & 1:
            return False, "c"
    for i in range(m):
        acc = hf.one
        for s in range(1, 1 << m):
            if (s >> i) & 1:
                acc = hf.mul[acc][w.r[s - 1]]
        if acc != w.d[i]:
            return False, "c"
    if not data.is_zero(2, _sum_vector(data, w.c, w.d)):
        return False, "sum"
    return True, None
