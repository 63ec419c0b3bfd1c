"""Finite special groups presented as GF(2) coordinate spaces.

Elements are ints in ``range(2**dim)``; the group law is XOR, so 0 is the
identity (written 1 in forms) and every element has order at most 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Sequence

from .f2linalg import iter_bits
from .hyperstructures import AxiomReport, MalformedStructure, Verdict

__all__ = [
    "FormRelation",
    "RealityReport",
    "SpecialGroupTable",
    "check_sg",
    "dm_ktheory",
    "extend_iso",
    "field_special_group",
    "reality_check",
    "reduced_product_group",
    "represents",
    "sg_from_json",
    "sg_to_json",
]


@dataclass(frozen=True)
class SpecialGroupTable:
    dim: int
    minus_one: int
    iso: frozenset[tuple[int, int, int, int]]
    name: str = "G"

    def __post_init__(self) -> None:
        order = 1 << self.dim
        if not 0 <= self.minus_one < order:
            raise MalformedStructure("minus_one out of range")
        closed = set()
        for t in self.iso:
            if len(t) != 4 or any(not 0 <= x < order for x in t):
                raise MalformedStructure(f"iso entry {t!r} out of range")
            a, b, c, d = t
            closed.add((a, b, c, d))
            closed.add((b, a, c, d))
        for a in range(order):
            for b in range(order):
                closed.add((a, b, a, b))
                closed.add((b, a, a, b))
        object.__setattr__(self, "iso", frozenset(closed))

    @property
    def order(self) -> int:
        return 1 << self.dim

    @classmethod
    def from_representation(cls, dim: int, minus_one: int, rep, name: str = "G") -> "SpecialGroupTable":
        """<a,b> ~ <c,d> iff ab = cd and c in rep(a, b)."""
        order = 1 << dim
        iso = {(a, b, c, a ^ b ^ c) for a in range(order) for b in range(order) for c in rep(a, b)}
        return cls(dim, minus_one, frozenset(iso), name)

    @cached_property
    def pair_rows(self) -> tuple[int, ...]:
        """rows[a*order+b] has bit c*order+d set iff <a,b> ~ <c,d>."""
        order = self.order
        rows = [0] * (order * order)
        for a, b, c, d in self.iso:
            rows[a * order + b] |= 1 << (c * order + d)
        return tuple(rows)

    def related(self, a: int, b: int, c: int, d: int) -> bool:
        return (self.pair_rows[a * self.order + b] >> (c * self.order + d)) & 1 == 1


# --- extension of the isometry relation to n-forms ---------------------------


@dataclass(frozen=True)
class FormRelation:
    """A relation on n-forms; ``rows[i]`` is the bit set of forms related to form i."""

    n: int
    order: int
    rows: tuple[int, ...]

    def index(self, form: Sequence[int]) -> int:
        i = 0
        for x in form:
            i = i * self.order + x
        return i

    def form(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            i, r = divmod(i, self.order)
            out.append(r)
        return tuple(reversed(out))

    def related(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return (self.rows[self.index(a)] >> self.index(b)) & 1 == 1

    @cached_property
    def inverse_rows(self) -> tuple[int, ...]:
        inv = [0] * len(self.rows)
        for i, row in enumerate(self.rows):
            bit = 1 << i
            for j in iter_bits(row):
                inv[j] |= bit
        return tuple(inv)

    def pairs(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {(self.form(i), self.form(j)) for i, row in enumerate(self.rows) for j in iter_bits(row)}

    def reflexivity_witness(self) -> int | None:
        return next((i for i, row in enumerate(self.rows) if not (row >> i) & 1), None)

    def symmetry_witness(self) -> tuple[int, int] | None:
        inv = self.inverse_rows
        for i, row in enumerate(self.rows):
            diff = row & ~inv[i]
            if diff:
                return i, (diff & -diff).bit_length() - 1
        return None

    def transitivity_witness(self) -> tuple[int, int, int] | None:
        """Least (i, j, k) with i~j, j~k and not i~k."""
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                diff = self.rows[j] & ~row
                if diff:
                    return i, j, (diff & -diff).bit_length() - 1
        return None

    def is_equivalence(self) -> bool:
        return (
            self.reflexivity_witness() is None
            and self.symmetry_witness() is None
            and self.transitivity_witness() is None
        )


@lru_cache(maxsize=64)
def extend_iso(g: SpecialGroupTable, n: int) -> FormRelation:
    """The relation on n-forms built inductively from the binary one.

    <a1..an> ~ <b1..bn> iff there are x, y, z3..zn with <a1,x> ~ <b1,y>,
    <a2..an> ~ <x,z3..zn> and <b2..bn> ~ <y,z3..zn>.
    """
    if n < 1:
        raise ValueError("forms have dimension at least 1")
    order = g.order
    if n == 1:
        return FormRelation(1, order, tuple(1 << i for i in range(order)))
    if n == 2:
        return FormRelation(2, order, g.pair_rows)
    prev = extend_iso(g, n - 1)
    prev_inv = prev.inverse_rows
    tail_size = order ** (n - 1)
    sub = order ** (n - 2)
    pair_rows = g.pair_rows
    rows = []
    for i in range(order**n):
        a1, tail = divmod(i, tail_size)
        acc = 0
        seen: set[tuple[int, int]] = set()
        for j in iter_bits(prev.rows[tail]):
            x, z = divmod(j, sub)
            for k in iter_bits(pair_rows[a1 * order + x]):
                b1, y = divmod(k, order)
                key = (b1, y * sub + z)
                if key in seen:
                    continue
                seen.add(key)
                acc |= prev_inv[y * sub + z] << (b1 * tail_size)
        rows.append(acc)
    return FormRelation(n, order, tuple(rows))


def represents(g: SpecialGroupTable, form: Sequence[int]) -> frozenset[int]:
    """D(form): first entries of the forms isometric to ``form``."""
    form = tuple(form)
    if not form:
        raise ValueError("empty form")
    n = len(form)
    if n == 1:
        return frozenset(form)
    rel = extend_iso(g, n)
    target = rel.index(form)
    tail_size = g.order ** (n - 1)
    return frozenset(j // tail_size for j in iter_bits(rel.inverse_rows[target]))


# --- axioms -----------------------------------------------------------------


def check_sg(g: SpecialGroupTable) -> AxiomReport:
    """Axioms SG0-SG6 and the resulting classification."""
    report = AxiomReport("special group", g.name)
    order = g.order
    m1 = g.minus_one
    rel2 = extend_iso(g, 2)
    pair = rel2.form

    w = rel2.reflexivity_witness()
    sv = rel2.symmetry_witness()
    tw = rel2.transitivity_witness()
    if w is not None:
        report.verdicts["SG0"] = Verdict(False, pair(w), {"property": "reflexive"})
    elif sv is not None:
        report.verdicts["SG0"] = Verdict(False, pair(sv[0]) + pair(sv[1]), {"property": "symmetric"})
    elif tw is not None:
        report.verdicts["SG0"] = Verdict(False, pair(tw[0]) + pair(tw[1]) + pair(tw[2]), {"property": "transitive"})
    else:
        report.verdicts["SG0"] = Verdict(True)

    def first(domain, holds):
        for t in domain:
            if not holds(*t):
                return Verdict(False, tuple(t))
        return Verdict(True)

    sorted_iso = sorted(g.iso)
    report.verdicts["SG1"] = first(product(range(order), repeat=2), lambda a, b: g.related(a, b, b, a))
    report.verdicts["SG2"] = first(((a,) for a in range(order)), lambda a: g.related(a, a ^ m1, 0, m1))
    report.verdicts["SG3"] = first(sorted_iso, lambda a, b, c, d: a ^ b == c ^ d)
    report.verdicts["SG4"] = first(sorted_iso, lambda a, b, c, d: g.related(a, c ^ m1, b ^ m1, d))
    report.verdicts["SG5"] = first(
        ((a, b, c, d, x) for a, b, c, d in sorted_iso for x in range(order)),
        lambda a, b, c, d, x: g.related(x ^ a, x ^ b, x ^ c, x ^ d),
    )
    proto = all(report.verdicts[k].passed for k in ("SG0", "SG1", "SG2", "SG3", "SG5"))
    pre = proto and report.verdicts["SG4"].passed
    if pre:
        rel3 = extend_iso(g, 3)
        t3 = rel3.transitivity_witness()
        report.verdicts["SG6"] = (
            Verdict(True) if t3 is None else Verdict(False, rel3.form(t3[0]) + rel3.form(t3[1]) + rel3.form(t3[2]))
        )
    else:
        # the ternary extension is only meaningful on top of SG0-SG5
        report.verdicts["SG6"] = Verdict(False, None, {"skipped": "SG0-SG5 do not all hold"})
    if pre and report.verdicts["SG6"].passed:
        cls = "special"
    elif pre:
        cls = "pre-special"
    elif proto:
        cls = "proto"
    else:
        cls = "none"
    report.extras["classification"] = cls
    return report


# --- formal reality -----------------------------------------------------------


@dataclass(frozen=True)
class RealityReport:
    formally_real: bool
    reduced: bool
    levels: tuple[frozenset[int], ...]
    stabilized_at: int | None
    n_max: int


def _sum_of_ones_levels(g: SpecialGroupTable, n_max: int) -> tuple[list[frozenset[int]], int | None]:
    """D(n<1>) for n = 1..n_max via the first-slot recursion.

    With reflexive relations the free tail in the inductive clause can always be
    filled in, so only the set E_n = {y : n<1> ~ <y, ...>} has to be carried.
    """
    order = g.order
    e_prev = frozenset({0})
    d_levels = [frozenset({0})]
    stabilized = None
    for n in range(2, n_max + 1):
        d_n = frozenset(
            b for b in range(order) for x in range(order) if any(g.related(b, x, 0, y) for y in e_prev)
        )
        e_n = frozenset(
            y for y in range(order) for yy in range(order) if any(g.related(0, x, y, yy) for x in e_prev)
        )
        d_levels.append(d_n)
        if e_n == e_prev:
            # every later level is computed from the same set
            stabilized = n
            break
        e_prev = e_n
    return d_levels, stabilized


def reality_check(g: SpecialGroupTable, n_max: int | None = None) -> RealityReport:
    if n_max is None:
        n_max = 2 * g.order
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    levels, stabilized = _sum_of_ones_levels(g, n_max)
    union = frozenset().union(*levels)
    formally_real = g.minus_one not in union
    reduced = formally_real and represents(g, (0, 0)) == frozenset({0})
    return RealityReport(formally_real, reduced, tuple(levels), stabilized, n_max)


# --- builders -----------------------------------------------------------------


def reduced_product_group(dim: int) -> SpecialGroupTable:
    """Product of ``dim`` copies of the two-element reduced group.

    Bit i set means sign -1 in coordinate i; c is represented by <a, b> iff c
    agrees with a wherever a and b agree.
    """
    order = 1 << dim
    mask = order - 1
    return SpecialGroupTable.from_representation(
        dim,
        mask,
        lambda a, b: [c for c in range(order) if (c ^ a) & ~(a ^ b) & mask == 0],
        name=f"reduced{dim}",
    )


def field_special_group(p: int) -> SpecialGroupTable:
    """Square classes of GF(p), p odd, with values of a*x^2 + b*y^2 as D(a, b)."""
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError("p must be an odd prime")
    sq = {x * x % p for x in range(1, p)}
    coord = {a: 0 if a in sq else 1 for a in range(1, p)}
    nonsq = next(a for a in range(1, p) if a not in sq)
    rep_elem = {0: 1, 1: nonsq}
    values = {}
    for a in (0, 1):
        for b in (0, 1):
            ea, eb = rep_elem[a], rep_elem[b]
            vals = {(ea * x * x + eb * y * y) % p for x in range(p) for y in range(p)} - {0}
            values[(a, b)] = {coord[v] for v in vals}
    return SpecialGroupTable.from_representation(1, coord[p - 1], lambda a, b: values[(a, b)], name=f"G(F{p})")


# --- Dickmann-Miraglia K-theory ----------------------------------------------


def dm_ktheory(g: SpecialGroupTable, max_degree: int = 4):
    """Reduced K-theory of a pre-special group.

    Degree-n relations are the tensors carrying l(a) (x) l(ab) with a in D(1, b)
    in two consecutive slots, and basis vectors in every other slot.
    """
    from .ktheory.graded import build_graded

    report = check_sg(g)
    if report.extras["classification"] not in ("pre-special", "special"):
        raise ValueError(f"special group is only {report.extras['classification']}")
    d = g.dim
    pairs = set()
    for b in range(g.order):
        for a in represents(g, (0, b)):
            pairs.add((a, a ^ b))
    return build_graded(
        name=f"kdm({g.name})",
        k1_dim=d,
        coords=tuple(range(g.order)),
        minus_one=g.minus_one,
        pairs=pairs,
        max_degree=max_degree,
        pair_mode="adjacent",
    )


# --- JSON ---------------------------------------------------------------------


def _bits(x: int, d: int) -> list[int]:
    return [(x >> i) & 1 for i in range(d)]


def _unbits(v: Any, d: int) -> int:
    if not isinstance(v, list) or len(v) != d or any(b not in (0, 1) for b in v):
        raise MalformedStructure(f"expected a bit vector of length {d}, got {v!r}")
    return sum(b << i for i, b in enumerate(v))


def sg_to_json(g: SpecialGroupTable) -> dict:
    d = g.dim
    return {
        "name": g.name,
        "dim": d,
        "minus_one": _bits(g.minus_one, d),
        "iso": [[_bits(x, d) for x in t] for t in sorted(g.iso)],
    }


def sg_from_json(doc: Any) -> SpecialGroupTable:
    try:
        d = int(doc["dim"])
        if not 0 <= d <= 12:
            raise MalformedStructure("dim out of range")
        minus_one = _unbits(doc["minus_one"], d)
        iso = set()
        for t in doc["iso"]:
            if len(t) != 4:
                raise MalformedStructure("iso entries must have four vectors")
            iso.add(tuple(_unbits(v, d) for v in t))
    except (KeyError, TypeError) as exc:
        raise MalformedStructure(f"missing or mistyped field: {exc}") from exc
    return SpecialGroupTable(d, minus_one, frozenset(iso), str(doc.get("name", "G")))
