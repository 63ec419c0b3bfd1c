"""Reduced K-theory of finite hyperfields as graded GF(2) data.

Degree n lives in the n-th tensor power of k_1 = (units mod squares); a basis
tensor is addressed by its flat lexicographic index, so a degree-n element is
an int with d**n bits.  Relations are kept as an :class:`F2Subspace` per degree
and elements are always stored as canonical reduced representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from ..f2linalg import F2Subspace, check_ambient, iter_bits, kron, span
from ..hyperstructures import FiniteMultiring, as_hyperfield, check_morphism, unit_coordinates

__all__ = [
    "GradedKData",
    "GradedMap",
    "IsoResult",
    "KExpression",
    "PAIR_MODES",
    "build_graded",
    "expr_is_zero",
    "graded_iso_exists",
    "induced_map",
    "omega",
    "reduced_k",
    "smc_check",
    "tensor_power_columns",
]

PAIR_MODES = ("distinct", "adjacent", "any")


@dataclass(frozen=True)
class GradedKData:
    name: str
    k1_dim: int
    max_degree: int
    coords: tuple[int | None, ...]
    minus_one: int
    relations: tuple[F2Subspace, ...]
    pair_mode: str
    basis_elements: tuple[int, ...] = ()

    def ambient_dim(self, n: int) -> int:
        return self.k1_dim**n

    def quotient_dim(self, n: int) -> int:
        return self.relations[n].codim

    def dims(self) -> list[int]:
        return [self.quotient_dim(n) for n in range(self.max_degree + 1)]

    def reduce(self, n: int, v: int) -> int:
        return self.relations[n].reduce(v)

    def is_zero(self, n: int, v: int) -> bool:
        return self.relations[n].reduce(v) == 0

    def tensor(self, vectors: Sequence[int]) -> int:
        """Pure tensor of degree-1 vectors (an empty list gives the unit)."""
        d = self.k1_dim
        acc = 1
        for v in vectors:
            acc = kron(acc, v, d)
        return acc

    def monomial(self, elements: Sequence[int]) -> int:
        """Ambient vector of rho(a1)...rho(an)."""
        vecs = []
        for a in elements:
            if not 0 <= a < len(self.coords) or self.coords[a] is None:
                raise IndexError(f"element {a} is not a unit of {self.name}")
            vecs.append(self.coords[a])
        return self.tensor(vecs)

    def product(self, n: int, x: int, m: int, y: int) -> int:
        if n + m > self.max_degree:
            raise ValueError(f"degree {n + m} exceeds max degree {self.max_degree}")
        return self.reduce(n + m, kron(x, y, self.ambient_dim(m)))

    def basis_columns(self, n: int) -> tuple[int, ...]:
        return self.relations[n].complement_columns()

    def compress(self, n: int, v: int) -> int:
        """Quotient coordinates of a reduced ambient vector."""
        out = 0
        for k, c in enumerate(self.basis_columns(n)):
            if (v >> c) & 1:
                out |= 1 << k
        return out

    def lift(self, n: int, q: int) -> int:
        cols = self.basis_columns(n)
        return sum(1 << cols[k] for k in iter_bits(q))

    def to_json(self) -> dict:
        return {
            "k1_dim": self.k1_dim,
            "degrees": [
                {
                    "n": n,
                    "ambient": self.ambient_dim(n),
                    "relation_basis": [[(r >> i) & 1 for i in range(self.ambient_dim(n))] for r in rel.rows],
                    "dim": rel.codim,
                }
                for n, rel in enumerate(self.relations)
            ],
        }


def _embed(w_bits: list[tuple[int, ...]], slots: tuple[int, ...], n: int, d: int) -> Iterable[int]:
    """Tensors with the entries of ``w`` in ``slots`` and basis vectors elsewhere."""
    free = [k for k in range(n) if k not in slots]
    weights = [d ** (n - 1 - k) for k in range(n)]
    for filler in product(range(d), repeat=len(free)):
        base = sum(f * weights[k] for f, k in zip(filler, free))
        v = 0
        for entry in w_bits:
            v |= 1 << (base + sum(e * weights[k] for e, k in zip(entry, slots)))
        yield v


def build_graded(
    name: str,
    k1_dim: int,
    coords: tuple[int | None, ...],
    minus_one: int,
    pairs: Iterable[tuple[int, int]],
    max_degree: int,
    pair_mode: str = "distinct",
    singles: Iterable[int] = (),
    basis_elements: tuple[int, ...] = (),
) -> GradedKData:
    """Quotients of the tensor powers by relation pairs placed in two slots.

    ``pair_mode`` chooses the slot pairs: any two distinct slots, consecutive
    slots (i, i+1), or ``any`` which also allows a single slot carrying an
    element of ``singles``.
    """
    if pair_mode not in PAIR_MODES:
        raise ValueError(f"unknown pair mode {pair_mode!r}")
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    d = k1_dim
    for n in range(max_degree + 1):
        check_ambient(d**n)
    pair_space = span((kron(a, b, d) for a, b in pairs), d * d)
    pair_bits = [[divmod(i, d) for i in iter_bits(w)] for w in pair_space.rows]
    single_space = span(singles, d) if pair_mode == "any" else F2Subspace(d)
    single_bits = [[(i,) for i in iter_bits(w)] for w in single_space.rows]
    relations = [F2Subspace(1), F2Subspace(d)]
    if pair_mode == "any" and max_degree >= 1:
        relations[1] = span(single_space.rows, d)
    for n in range(2, max_degree + 1):
        if pair_mode == "adjacent":
            slot_pairs = [(i, i + 1) for i in range(n - 1)]
        else:
            slot_pairs = list(permutations(range(n), 2))

        def generators(n=n, slot_pairs=slot_pairs):
            for slots in slot_pairs:
                for w in pair_bits:
                    yield from _embed(w, slots, n, d)
            for i in range(n):
                for w in single_bits:
                    yield from _embed(w, (i,), n, d)

        relations.append(span(generators(), d**n))
    return GradedKData(name, d, max_degree, tuple(coords), minus_one, tuple(relations[: max_degree + 1]), pair_mode, basis_elements)


def reduced_k(f: FiniteMultiring, max_degree: int = 4, pair_mode: str = "distinct") -> GradedKData:
    """k_n = T^n(units mod squares) modulo tensors with a slot pair (a, b), b in 1 - a."""
    hf = as_hyperfield(f)
    uc = unit_coordinates(hf)
    coords = uc.coords
    pairs = set()
    singles = set()
    for a in hf.units:
        one_minus_a = hf.minus(hf.one, a)
        for b in iter_bits(one_minus_a):
            if b:
                pairs.add((coords[a], coords[b]))
        if (one_minus_a >> a) & 1:
            singles.add(coords[a])
    return build_graded(
        f"k({hf.name})",
        uc.dim,
        coords,
        coords[hf.neg[hf.one]],
        pairs,
        max_degree,
        pair_mode,
        singles,
        uc.basis,
    )


@dataclass(frozen=True)
class KExpression:
    """Formal sum of monomials rho(a1)...rho(an) of a common degree."""

    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        degrees = {len(t) for t in self.terms}
        if len(degrees) > 1:
            raise ValueError("expression is not homogeneous")

    @property
    def degree(self) -> int:
        return len(self.terms[0]) if self.terms else 0

    def vector(self, data: GradedKData) -> int:
        v = 0
        for t in self.terms:
            v ^= data.monomial(t)
        return v


def expr_is_zero(expr: KExpression, data: GradedKData) -> bool:
    n = expr.degree
    if n > data.max_degree:
        raise ValueError(f"degree {n} exceeds max degree {data.max_degree}")
    return data.is_zero(n, expr.vector(data))


# --- linear maps between graded pieces -----------------------------------------


def tensor_power_columns(columns: Sequence[int], target_dim: int, n: int) -> list[int]:
    """Images of the degree-n basis tensors under the n-th tensor power of a map."""
    cols = [1]
    for _ in range(n):
        cols = [kron(c, col, target_dim) for c in cols for col in columns]
    return cols


def _apply(cols: Sequence[int], v: int) -> int:
    out = 0
    for t in iter_bits(v):
        out ^= cols[t]
    return out


@dataclass(frozen=True)
class GradedMap:
    """Per degree, the reduced images of the source quotient basis."""

    source: GradedKData
    target: GradedKData
    images: tuple[tuple[int, ...], ...]
    degree_one: tuple[int, ...]

    def rank(self, n: int) -> int:
        return span(self.images[n], self.target.ambient_dim(n)).dim

    def is_surjective(self) -> bool:
        return all(self.rank(n) == self.target.quotient_dim(n) for n in range(len(self.images)))

    def apply(self, n: int, v: int) -> int:
        """Image of an ambient source vector (any representative)."""
        cols = tensor_power_columns(self.degree_one, self.target.k1_dim, n)
        return self.target.reduce(n, _apply(cols, v))


def _linear_map(
    source: GradedKData, target: GradedKData, degree_one: Sequence[int], max_degree: int
) -> GradedMap:
    images = []
    for n in range(max_degree + 1):
        cols = tensor_power_columns(degree_one, target.k1_dim, n)
        for row in source.relations[n].rows:
            if not target.is_zero(n, _apply(cols, row)):
                raise ValueError(f"degree {n}: a relation does not map into the target relations")
        images.append(tuple(target.reduce(n, cols[c]) for c in source.basis_columns(n)))
    return GradedMap(source, target, tuple(images), tuple(degree_one))


def induced_map(
    phi: Sequence[int],
    f: FiniteMultiring,
    l: FiniteMultiring,
    max_degree: int = 3,
    source: GradedKData | None = None,
    target: GradedKData | None = None,
) -> GradedMap:
    """Graded map rho(a1)...rho(an) -> rho(phi a1)...rho(phi an)."""
    report = check_morphism(phi, f, l)
    if not report.ok:
        raise ValueError(f"not a morphism: {report.failed()}")
    source = source or reduced_k(f, max_degree)
    target = target or reduced_k(l, max_degree)
    cols = [target.coords[phi[b]] for b in source.basis_elements]
    for a in range(1, len(source.coords)):
        expected = _apply(cols, source.coords[a])
        if target.coords[phi[a]] != expected:
            raise ValueError(f"map is not linear on square classes at element {a}")
    return _linear_map(source, target, cols, max_degree)


def omega(data: GradedKData, left: int, n: int) -> tuple[int, ...]:
    """Left multiplication by a degree-1 vector, k_n -> k_{n+1}, on the quotient basis."""
    if n + 1 > data.max_degree:
        raise ValueError(f"degree {n + 1} exceeds max degree {data.max_degree}")
    size = data.ambient_dim(n)
    return tuple(data.reduce(n + 1, kron(left, 1 << c, size)) for c in data.basis_columns(n))


def smc_check(data: GradedKData, reading: str = "minus_one") -> list[dict]:
    """Kernel of multiplication by rho(-1), k_n -> k_{n+1}, for 1 <= n < max_degree.

    Degree 0 is left out: when k_1 = 0 the map from k_0 = F2 is never injective.
    ``reading="literal"`` multiplies by rho(-(-1)) = rho(1) = 0 instead.
    """
    if reading == "minus_one":
        left = data.minus_one
    elif reading == "literal":
        left = 0
    else:
        raise ValueError(f"unknown reading {reading!r}")
    out = []
    for n in range(1, data.max_degree):
        images = omega(data, left, n)
        rank = span(images, data.ambient_dim(n + 1)).dim
        dim = data.quotient_dim(n)
        out.append({"n": n, "dim": dim, "rank": rank, "kernel_dim": dim - rank, "injective": rank == dim})
    return out


# --- graded isomorphism search ---------------------------------------------------


@dataclass(frozen=True)
class IsoResult:
    found: bool
    status: str
    matrix: tuple[int, ...] | None = None


def _invertible_matrices(d: int) -> Iterable[tuple[int, ...]]:
    full = 1 << d
    for cols in product(range(1, full), repeat=d):
        if span(cols, d).dim == d:
            yield cols


def graded_iso_exists(a: GradedKData, b: GradedKData, bound: int = 4) -> IsoResult:
    """Search GL(d, F2) for a degree-one map whose tensor powers match relations."""
    top = min(a.max_degree, b.max_degree)
    if a.k1_dim != b.k1_dim or any(a.quotient_dim(n) != b.quotient_dim(n) for n in range(top + 1)):
        return IsoResult(False, "dimensions differ")
    d = a.k1_dim
    if d > bound:
        return IsoResult(False, "undecided at bound")

    def maps_into(src: GradedKData, dst: GradedKData, cols: Sequence[int]) -> bool:
        for n in range(2, top + 1):
            powered = tensor_power_columns(cols, d, n)
            if any(not dst.is_zero(n, _apply(powered, row)) for row in src.relations[n].rows):
                return False
        return True

    for cols in _invertible_matrices(d):
        if not maps_into(a, b, cols):
            continue
        inv = _inverse(cols, d)
        if maps_into(b, a, inv):
            return IsoResult(True, "iso", cols)
    return IsoResult(False, "no iso")


def _inverse(cols: Sequence[int], d: int) -> tuple[int, ...]:
    # images of all vectors, then read off the preimages of unit vectors
    image = {}
    for v in range(1 << d):
        image[_apply(cols, v)] = v
    return tuple(image[1 << i] for i in range(d))
