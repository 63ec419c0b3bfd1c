"""Builders for concrete multirings and hyperfields."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .f2linalg import iter_bits
from .hyperstructures import (
    FiniteHyperfield,
    FiniteMultiring,
    NotAHyperfield,
    as_hyperfield,
    check_morphism,
    is_hyperbolic,
    unit_coordinates,
)
from .specialgroups import SpecialGroupTable, check_sg, represents

if TYPE_CHECKING:
    from .ktheory.igr import IgrData

__all__ = [
    "ConstructionError",
    "QuotientPresentation",
    "builtin",
    "factor_through",
    "gamma_of_igr",
    "gf",
    "h",
    "kaleidoscope",
    "krasner",
    "m_of_g",
    "marshall_quotient",
    "pairing",
    "product_h",
    "product_projections",
    "q2",
    "special_group_of",
    "squares",
]


class ConstructionError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _build(name, elements, one, neg, mul, add_sets, cls=FiniteMultiring):
    add = tuple(tuple(sum(1 << c for c in cell) for cell in row) for row in add_sets)
    return cls(name, tuple(elements), one, tuple(neg), tuple(tuple(r) for r in mul), add)


def q2() -> FiniteHyperfield:
    """Signs {0, 1, -1}."""
    val = [0, 1, -1]
    idx = {v: i for i, v in enumerate(val)}
    n = 3

    def add(a, b):
        if a == 0:
            return {b}
        if b == 0 or a == b:
            return {a}
        return {-1, 0, 1}

    return _build(
        "q2",
        ["0", "1", "-1"],
        1,
        [idx[-v] for v in val],
        [[idx[val[i] * val[j]] for j in range(n)] for i in range(n)],
        [[{idx[c] for c in add(val[i], val[j])} for j in range(n)] for i in range(n)],
        FiniteHyperfield,
    )


def krasner() -> FiniteHyperfield:
    return _build("krasner", ["0", "1"], 1, [0, 1], [[0, 0], [0, 1]], [[{0}, {1}], [{1}, {0, 1}]], FiniteHyperfield)


def kaleidoscope(n: int) -> FiniteMultiring:
    """Integers -n..n with a + b keeping the larger absolute value."""
    if n < 1:
        raise ConstructionError("kaleidoscope needs n >= 1")
    val = [0] + [s * k for k in range(1, n + 1) for s in (1, -1)]
    idx = {v: i for i, v in enumerate(val)}

    def add(a, b):
        if b == -a:
            return set(range(-abs(a), abs(a) + 1))
        if abs(b) <= abs(a):
            return {a}
        return {b}

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        sign = 1 if (a > 0) == (b > 0) else -1
        return sign * max(abs(a), abs(b))

    cls = FiniteHyperfield if n == 1 else FiniteMultiring
    return _build(
        f"x{n}",
        [str(v) for v in val],
        idx[1],
        [idx[-v] for v in val],
        [[idx[mul(a, b)] for b in val] for a in val],
        [[{idx[c] for c in add(a, b)} for b in val] for a in val],
        cls,
    )


def h(p: int) -> FiniteHyperfield:
    """Residues mod p with a + a = everything and a + b = {a, b} otherwise."""
    if not _is_prime(p):
        raise ConstructionError(f"{p} is not prime")
    full = set(range(p))

    def add(a, b):
        if a == 0:
            return {b}
        if b == 0:
            return {a}
        return full if a == b else {a, b}

    return _build(
        f"h{p}",
        [str(a) for a in range(p)],
        1,
        list(range(p)),
        [[a * b % p for b in range(p)] for a in range(p)],
        [[add(a, b) for b in range(p)] for a in range(p)],
        FiniteHyperfield,
    )


def gf(p: int) -> FiniteHyperfield:
    """The prime field as a single-valued hyperfield."""
    if not _is_prime(p):
        raise ConstructionError(f"{p} is not prime")
    return _build(
        f"gf{p}",
        [str(a) for a in range(p)],
        1,
        [-a % p for a in range(p)],
        [[a * b % p for b in range(p)] for a in range(p)],
        [[{(a + b) % p} for b in range(p)] for a in range(p)],
        FiniteHyperfield,
    )


_BUILTIN = re.compile(r"^(q2|krasner|k|x|kaleidoscope|h|gf)\(?(\d*)\)?$")


def builtin(name: str) -> FiniteMultiring:
    """Resolve names such as ``q2``, ``krasner``, ``x3``, ``kaleidoscope(3)``, ``h5``, ``gf(7)``."""
    m = _BUILTIN.match(name.strip().lower())
    if not m:
        raise ConstructionError(f"unknown builtin {name!r}")
    kind, arg = m.groups()
    if kind in ("q2", "krasner", "k"):
        if arg:
            raise ConstructionError(f"unknown builtin {name!r}")
        return q2() if kind == "q2" else krasner()
    if not arg:
        raise ConstructionError(f"{kind} needs a numeric parameter")
    n = int(arg)
    if kind in ("x", "kaleidoscope"):
        return kaleidoscope(n)
    return h(n) if kind == "h" else gf(n)


# --- hyperbolic product -----------------------------------------------------


def _product_carrier(f1: FiniteMultiring, f2: FiniteMultiring) -> list[tuple[int, int]]:
    return [(0, 0)] + [(a, b) for a in f1.units for b in f2.units]


def product_h(f1: FiniteHyperfield, f2: FiniteHyperfield) -> FiniteHyperfield:
    """Nonzero pairs plus a joint zero; sums are componentwise, cut to the carrier."""
    for f in (f1, f2):
        if not is_hyperbolic(f):
            raise ConstructionError(f"{f.name} is not hyperbolic; the product would not be a hyperfield")
    carrier = _product_carrier(f1, f2)
    idx = {pair: i for i, pair in enumerate(carrier)}

    def name(pair):
        return "0" if pair == (0, 0) else f"({f1.elements[pair[0]]},{f2.elements[pair[1]]})"

    def mul(p, q):
        return idx[(f1.mul[p[0]][q[0]], f2.mul[p[1]][q[1]])]

    def add(p, q):
        first, second = f1.add[p[0]][q[0]], f2.add[p[1]][q[1]]
        return {idx[(c, e)] for c in iter_bits(first) for e in iter_bits(second) if (c, e) in idx}

    return _build(
        f"({f1.name}x{f2.name})",
        [name(p) for p in carrier],
        idx[(f1.one, f2.one)],
        [idx[(f1.neg[a], f2.neg[b])] for a, b in carrier],
        [[mul(p, q) for q in carrier] for p in carrier],
        [[add(p, q) for q in carrier] for p in carrier],
        FiniteHyperfield,
    )


def product_projections(f1: FiniteMultiring, f2: FiniteMultiring) -> tuple[tuple[int, ...], tuple[int, ...]]:
    carrier = _product_carrier(f1, f2)
    return tuple(a for a, _ in carrier), tuple(b for _, b in carrier)


def pairing(g1: Sequence[int], g2: Sequence[int], f1: FiniteMultiring, f2: FiniteMultiring) -> tuple[int, ...]:
    """The mediating map x -> (g1(x), g2(x)) into the product carrier."""
    idx = {pair: i for i, pair in enumerate(_product_carrier(f1, f2))}
    try:
        return tuple(idx[(a, b)] for a, b in zip(g1, g2))
    except KeyError as exc:
        raise ConstructionError(f"pair {exc.args[0]} is outside the product carrier") from None


# --- Marshall quotient --------------------------------------------------------


@dataclass(frozen=True)
class QuotientPresentation:
    parent: FiniteMultiring
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]

    def members(self, c: int) -> list[int]:
        return [a for a, k in enumerate(self.class_of) if k == c]


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the least index as the root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def squares(a: FiniteMultiring) -> frozenset[int]:
    return frozenset(a.mul[x][x] for x in a.units)


def marshall_quotient(
    a: FiniteMultiring, s: Iterable[int]
) -> tuple[FiniteMultiring, QuotientPresentation, tuple[int, ...]]:
    """Quotient by x ~ y iff xs = yt for some s, t in S."""
    sset = frozenset(s)
    if a.one not in sset:
        raise ConstructionError("S must contain 1")
    if 0 in sset:
        raise ConstructionError("S must not contain 0 (every class would collapse onto 0)")
    for x in sset:
        for y in sset:
            if a.mul[x][y] not in sset:
                raise ConstructionError(f"S is not multiplicative: {a.elements[x]}*{a.elements[y]}")
    n = a.size
    uf = _UnionFind(n)
    orbit: list[dict[int, int]] = []
    for x in range(n):
        orbit.append({a.mul[x][t]: t for t in sset})
    # x ~ y iff their S-orbits meet
    owner: dict[int, int] = {}
    for x in range(n):
        for v in orbit[x]:
            if v in owner:
                uf.union(owner[v], x)
            else:
                owner[v] = x
    roots = sorted({uf.find(x) for x in range(n)})
    cls_index = {r: i for i, r in enumerate(roots)}
    class_of = tuple(cls_index[uf.find(x)] for x in range(n))
    reps = tuple(roots)
    pres = QuotientPresentation(a, class_of, reps)
    k = len(reps)
    members = [pres.members(c) for c in range(k)]
    for c in range(k):
        # the class of 0 must stay {0} for the quotient to be meaningful
        if c == class_of[0] and len(members[c]) > 1 and isinstance(a, FiniteHyperfield):
            raise ConstructionError("zero class is not {0}")

    def cls_set(bits: int) -> int:
        return sum(1 << class_of[x] for x in iter_bits(bits)) if bits else 0

    add_rows = []
    for c1 in range(k):
        x = reps[c1]
        row = []
        for c2 in range(k):
            y = reps[c2]
            sums = 0
            for s1 in sset:
                xs = a.mul[x][s1]
                for t1 in sset:
                    sums |= a.add[xs][a.mul[y][t1]]
            # c in the sum iff c*v lies in the sums for some v in S
            out = 0
            for c in range(n):
                if any((sums >> a.mul[c][v]) & 1 for v in sset):
                    out |= 1 << class_of[c]
            row.append(out)
        add_rows.append(tuple(row))

    names = [a.elements[r] if len(members[c]) == 1 else f"[{a.elements[r]}]" for c, r in enumerate(reps)]
    q = FiniteMultiring(
        f"{a.name}/S",
        tuple(names),
        class_of[a.one],
        tuple(class_of[a.neg[r]] for r in reps),
        tuple(tuple(class_of[a.mul[r1][r2]] for r2 in reps) for r1 in reps),
        tuple(add_rows),
    )
    try:
        q = as_hyperfield(q)
    except NotAHyperfield:
        pass
    return q, pres, class_of


def factor_through(
    f: Sequence[int], a: FiniteMultiring, b: FiniteMultiring, s: Iterable[int]
) -> tuple[tuple[int, ...], FiniteMultiring, QuotientPresentation]:
    """Induced map on A/S for a morphism f: A -> B with f[S] = {1}."""
    sset = sorted(set(s))
    bad = [x for x in sset if f[x] != b.one]
    if bad:
        raise ConstructionError(f"f does not send S to 1: witness s={a.elements[bad[0]]}")
    q, pres, proj = marshall_quotient(a, sset)
    induced = tuple(f[r] for r in pres.representatives)
    for x in range(a.size):
        if induced[proj[x]] != f[x]:
            raise ConstructionError(f"f is not constant on the class of {a.elements[x]}")
    # pi is onto, so any map g with g o pi = f agrees with the induced map on every class
    if sorted(set(proj)) != list(range(q.size)):
        raise ConstructionError("projection is not surjective")
    report = check_morphism(induced, q, b)
    if not report.ok:
        raise ConstructionError(f"induced map is not a morphism: {report.failed()}")
    return induced, q, pres


# --- special groups <-> hyperfields -----------------------------------------


def _sg_name(g: SpecialGroupTable, x: int) -> str:
    if x == 0:
        return "1"
    if x == g.minus_one:
        return "-1"
    return "g" + "".join(str((x >> i) & 1) for i in range(g.dim))


def m_of_g(g: SpecialGroupTable, require: str = "pre-special") -> FiniteHyperfield:
    """Adjoin 0 to G; a + b is D(a, b) unless a = -b (everything) or one is 0."""
    report = check_sg(g)
    levels = ("none", "proto", "pre-special", "special")
    if levels.index(report.extras["classification"]) < levels.index(require):
        raise ConstructionError(f"special group is only {report.extras['classification']}")
    order = g.order
    n = order + 1
    full = (1 << n) - 1

    def el(x: int) -> int:
        return x + 1

    add = [[0] * n for _ in range(n)]
    for i in range(n):
        add[0][i] = add[i][0] = 1 << i
    for x in range(order):
        for y in range(order):
            if y == x ^ g.minus_one:
                add[el(x)][el(y)] = full
            else:
                add[el(x)][el(y)] = sum(1 << el(c) for c in represents(g, (x, y)))
    mul = [[0] * n for _ in range(n)]
    for x in range(order):
        for y in range(order):
            mul[el(x)][el(y)] = el(x ^ y)
    return FiniteHyperfield(
        f"M({g.name})",
        tuple(["0"] + [_sg_name(g, x) for x in range(order)]),
        1,
        tuple([0] + [el(x ^ g.minus_one) for x in range(order)]),
        tuple(tuple(r) for r in mul),
        tuple(tuple(r) for r in add),
    )


def special_group_of(f: FiniteMultiring, name: str | None = None) -> tuple[SpecialGroupTable, tuple[int, ...]]:
    """Multiplicative part of a hyperfield whose units have exponent 2.

    <a, b> ~ <c, d> iff ab = cd and c is represented by <a, b>, where the
    represented set is everything when a = -b and otherwise
    {a, b} together with the nonzero part of a + b.
    Returns the table and the map from coordinates to element indices.
    """
    hf = as_hyperfield(f)
    uc = unit_coordinates(hf)
    if any(hf.mul[x][x] != hf.one for x in hf.units):
        raise ConstructionError("units do not have exponent 2")
    order = 1 << uc.dim
    element = [0] * order
    for x in hf.units:
        element[uc.coords[x]] = x
    coord = uc.coords
    minus_one = coord[hf.neg[hf.one]]
    iso = set()
    for a in range(order):
        for b in range(order):
            ea, eb = element[a], element[b]
            if b == a ^ minus_one:
                rep = set(range(order))
            else:
                rep = {a, b} | {coord[c] for c in iter_bits(hf.add[ea][eb]) if c != 0}
            for c in rep:
                iso.add((a, b, c, a ^ b ^ c))
    return SpecialGroupTable(uc.dim, minus_one, frozenset(iso), name or f"G({hf.name})"), tuple(element)


# --- Gamma of an inductive graded ring ---------------------------------------


def gamma_of_igr(r: "IgrData", basis_change: Sequence[int] | None = None, check: bool = True) -> FiniteHyperfield:
    """Hyperfield on R_1 (written multiplicatively) plus 0.

    For a != -b, c lies in a + b iff a*b = c*d and a*b = c*d in R_2 for some d,
    i.e. iff the degree-2 products agree with d = a + b + c in R_1.
    ``basis_change`` (columns of an invertible matrix on R_1) relabels units.
    """
    if check:
        from .ktheory.igr import igr_plus_report

        rep = igr_plus_report(r)
        if not rep.ok:
            raise ConstructionError(f"R is not in Igr+: {rep.failed()}")
    d = r.dims[1]
    if d > 16:
        raise ConstructionError("R_1 too large for an explicit carrier")
    order = 1 << d
    cols = list(basis_change) if basis_change is not None else [1 << i for i in range(d)]

    def relabel(v: int) -> int:
        out = 0
        for i in iter_bits(v):
            out ^= cols[i]
        return out

    perm = [relabel(v) for v in range(order)]
    if sorted(perm) != list(range(order)):
        raise ConstructionError("basis change is not invertible")
    inv = [0] * order
    for v, w in enumerate(perm):
        inv[w] = v
    top = r.top[1]
    n = order + 1
    full = (1 << n) - 1

    # units are indexed by their relabelled coordinates: unit w <-> R_1 vector inv[w]
    def el(w: int) -> int:
        return w + 1

    prod = [[r.product(1, inv[x], 1, inv[y]) for y in range(order)] for x in range(order)]
    minus = perm[top]
    add = [[0] * n for _ in range(n)]
    for i in range(n):
        add[0][i] = add[i][0] = 1 << i
    for x in range(order):
        for y in range(order):
            if y == x ^ minus:
                add[el(x)][el(y)] = full
                continue
            out = 0
            for c in range(order):
                dd = x ^ y ^ c
                if prod[x][y] == prod[c][dd]:
                    out |= 1 << el(c)
            add[el(x)][el(y)] = out

    def name(w: int) -> str:
        if w == 0:
            return "1"
        if w == minus:
            return "-1"
        return "e" + "".join(str((w >> i) & 1) for i in range(d))

    return FiniteHyperfield(
        f"Gamma({r.name})",
        tuple(["0"] + [name(w) for w in range(order)]),
        1,
        tuple([0] + [el(w ^ minus) for w in range(order)]),
        tuple(tuple([0] * n) if i == 0 else tuple([0] + [el((i - 1) ^ w) for w in range(order)]) for i in range(n)),
        tuple(tuple(row) for row in add),
    )
