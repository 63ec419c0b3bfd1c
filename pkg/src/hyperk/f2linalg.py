"""Linear algebra over GF(2) on bit-packed vectors.

Vectors are Python ints: bit ``i`` is coordinate ``i``, and coordinate 0 is
the leftmost one.  Subspaces are kept in reduced row-echelon form where each
row's pivot is its lowest set bit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "AMBIENT_CAP",
    "DimensionError",
    "F2Subspace",
    "F2Vector",
    "ResourceLimitError",
    "TensorIndex",
    "contains",
    "express",
    "extend_to_basis",
    "iter_bits",
    "kron",
    "max_ambient",
    "quotient_coordinates",
    "rank",
    "span",
]

AMBIENT_CAP = 1 << 20


class DimensionError(ValueError):
    """Vector lengths disagree or a coordinate is out of range."""


class ResourceLimitError(RuntimeError):
    """An ambient dimension exceeds the configured cap."""


def max_ambient() -> int:
    """Current ambient-dimension cap; ``HYPERK_MAX_AMBIENT`` may only lower it."""
    raw = os.environ.get("HYPERK_MAX_AMBIENT")
    if raw is None:
        return AMBIENT_CAP
    try:
        value = int(raw)
    except ValueError:
        return AMBIENT_CAP
    return max(0, min(value, AMBIENT_CAP))


def check_ambient(dim: int) -> None:
    cap = max_ambient()
    if dim > cap:
        raise ResourceLimitError(f"ambient dimension {dim} exceeds cap {cap}")


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def kron(u: int, v: int, v_len: int) -> int:
    """Tensor product of bit vectors; ``u`` is the major (left) factor."""
    out = 0
    for i in iter_bits(u):
        out |= v << (i * v_len)
    return out


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"bits exceed length {self.length}")

    @classmethod
    def from_list(cls, coords: Sequence[int]) -> "F2Vector":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise DimensionError(f"coordinate {i} is not a bit: {c!r}")
            if c:
                bits |= 1 << i
        return cls(len(coords), bits)

    @classmethod
    def unit(cls, length: int, i: int) -> "F2Vector":
        if not 0 <= i < length:
            raise DimensionError(f"coordinate {i} out of range [0, {length})")
        return cls(length, 1 << i)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise DimensionError(f"coordinate {i} out of range [0, {self.length})")
        return (self.bits >> i) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if not isinstance(other, F2Vector):
            return NotImplemented
        if other.length != self.length:
            raise DimensionError(f"length mismatch: {self.length} vs {other.length}")
        return F2Vector(self.length, self.bits ^ other.bits)

    __sub__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class F2Subspace:
    """Subspace of GF(2)^ambient_dim in reduced row-echelon form."""

    ambient_dim: int
    rows: tuple[int, ...] = ()
    pivot_columns: tuple[int, ...] = ()
    _by_pivot: dict = field(default_factory=dict, repr=False, compare=False, hash=False)
    _pivot_mask: int = field(default=0, repr=False, compare=False, hash=False)

    @classmethod
    def zero(cls, ambient_dim: int) -> "F2Subspace":
        check_ambient(ambient_dim)
        return cls(ambient_dim)

    @classmethod
    def _from_pivots(cls, ambient_dim: int, by_pivot: dict[int, int]) -> "F2Subspace":
        pivots = tuple(sorted(by_pivot))
        mask = 0
        for p in pivots:
            mask |= 1 << p
        return cls(ambient_dim, tuple(by_pivot[p] for p in pivots), pivots, dict(by_pivot), mask)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[F2Vector]:
        return [F2Vector(self.ambient_dim, r) for r in self.rows]

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    def reduce(self, v: int) -> int:
        """Canonical representative of ``v`` modulo this subspace."""
        mask = v & self._pivot_mask
        by_pivot = self._by_pivot
        while mask:
            low = mask & -mask
            v ^= by_pivot[low.bit_length() - 1]
            mask ^= low
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def complement_columns(self) -> tuple[int, ...]:
        """Non-pivot columns; their unit vectors give a basis of the quotient."""
        return tuple(c for c in range(self.ambient_dim) if not (self._pivot_mask >> c) & 1)

    def coordinates(self, v: int) -> int:
        """Coefficients of ``v`` (assumed in the span) against ``rows``."""
        out = 0
        for k, p in enumerate(self.pivot_columns):
            if (v >> p) & 1:
                out |= 1 << k
        return out

    def extended(self, vectors: Iterable[int]) -> "F2Subspace":
        by_pivot = dict(self._by_pivot)
        mask = self._pivot_mask
        for v in vectors:
            if v >> self.ambient_dim:
                raise DimensionError(f"vector exceeds ambient dimension {self.ambient_dim}")
            m = v & mask
            while m:
                low = m & -m
                v ^= by_pivot[low.bit_length() - 1]
                m ^= low
            if not v:
                continue
            p = (v & -v).bit_length() - 1
            bit = 1 << p
            for q, row in by_pivot.items():
                if row & bit:
                    by_pivot[q] = row ^ v
            by_pivot[p] = v
            mask |= bit
            if len(by_pivot) == self.ambient_dim:
                break
        return F2Subspace._from_pivots(self.ambient_dim, by_pivot)


def _raw(v: F2Vector | int, n: int) -> int:
    if isinstance(v, F2Vector):
        if v.length != n:
            raise DimensionError(f"length mismatch: {v.length} vs {n}")
        return v.bits
    if v < 0 or v >> n:
        raise DimensionError(f"vector exceeds ambient dimension {n}")
    return v


def span(vectors: Iterable[F2Vector | int], ambient_dim: int) -> F2Subspace:
    check_ambient(ambient_dim)
    return F2Subspace(ambient_dim).extended(_raw(v, ambient_dim) for v in vectors)


def rank(vectors: Iterable[int], ambient_dim: int) -> int:
    return span(vectors, ambient_dim).dim


def contains(s: F2Subspace, v: F2Vector | int) -> bool:
    return s.reduce(_raw(v, s.ambient_dim)) == 0


def quotient_coordinates(s: F2Subspace, v: F2Vector) -> F2Vector:
    return F2Vector(s.ambient_dim, s.reduce(_raw(v, s.ambient_dim)))


def extend_to_basis(independent: Sequence[F2Vector], pool: Sequence[F2Vector]) -> list[F2Vector]:
    """Basis of span(independent + pool) that starts with ``independent``.

    Pool vectors are taken in order whenever they enlarge the span.
    """
    vectors = list(independent) + list(pool)
    if not vectors:
        return []
    n = vectors[0].length
    current = F2Subspace(n)
    out: list[F2Vector] = []
    for v in independent:
        grown = current.extended([_raw(v, n)])
        if grown.dim == current.dim:
            raise DimensionError("input list is linearly dependent")
        current = grown
        out.append(v)
    for v in pool:
        grown = current.extended([_raw(v, n)])
        if grown.dim > current.dim:
            current = grown
            out.append(v)
    return out


def express(generators: Sequence[int], target: int) -> list[int] | None:
    """Indices of generators whose sum is ``target``, or None if impossible."""
    pivots: dict[int, tuple[int, int]] = {}
    for idx, g in enumerate(generators):
        combo = 1 << idx
        while g:
            p = (g & -g).bit_length() - 1
            if p not in pivots:
                pivots[p] = (g, combo)
                break
            row, rc = pivots[p]
            g ^= row
            combo ^= rc
    combo = 0
    v = target
    while v:
        p = (v & -v).bit_length() - 1
        if p not in pivots:
            return None
        row, rc = pivots[p]
        v ^= row
        combo ^= rc
    return list(iter_bits(combo))


@dataclass(frozen=True)
class TensorIndex:
    """Lexicographic bijection between n-tuples over range(d) and range(d**n)."""

    degree: int
    factor_dim: int

    def __post_init__(self) -> None:
        if self.degree < 0 or self.factor_dim < 0:
            raise DimensionError("degree and factor_dim must be non-negative")

    @property
    def size(self) -> int:
        return self.factor_dim**self.degree

    def to_flat(self, t: Sequence[int]) -> int:
        if len(t) != self.degree:
            raise DimensionError(f"expected {self.degree} slots, got {len(t)}")
        flat = 0
        for i in t:
            if not 0 <= i < self.factor_dim:
                raise DimensionError(f"slot index {i} out of range [0, {self.factor_dim})")
            flat = flat * self.factor_dim + i
        return flat

    def to_tuple(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise DimensionError(f"flat index {flat} out of range [0, {self.size})")
        out = []
        for _ in range(self.degree):
            flat, r = divmod(flat, self.factor_dim)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for flat in range(self.size):
            yield self.to_tuple(flat)
