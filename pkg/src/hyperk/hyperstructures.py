"""Finite multirings and hyperfields as explicit tables, with axiom verifiers.

Set-valued addition is stored as bit rows: ``add[a][b]`` is an int whose bit
``c`` is set when ``c`` belongs to ``a + b``.  Index 0 is always the additive
zero.  Every verifier returns an :class:`AxiomReport` whose failing verdicts
carry the lexicographically least witness tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Callable, Iterable, Iterator, Sequence

from .f2linalg import iter_bits

__all__ = [
    "AxiomReport",
    "FiniteHyperfield",
    "FiniteMultiring",
    "MalformedStructure",
    "NotAHyperfield",
    "UnitCoordinates",
    "Verdict",
    "as_hyperfield",
    "check_dm",
    "check_hyperfield",
    "check_morphism",
    "check_multigroup",
    "check_multiring",
    "classify",
    "dm2_product",
    "find_isomorphism",
    "is_hyperbolic",
    "is_isomorphism",
    "multiring_from_json",
    "multiring_to_json",
    "recheck",
    "unit_coordinates",
]

CLASSES = ("not hyperbolic", "hyperbolic", "pre-special", "special")


class MalformedStructure(ValueError):
    """Tables are out of range, empty where a set is required, or asymmetric."""


class NotAHyperfield(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMultiring:
    name: str
    elements: tuple[str, ...]
    one: int
    neg: tuple[int, ...]
    mul: tuple[tuple[int, ...], ...]
    add: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.elements)
        if n < 1:
            raise MalformedStructure("empty carrier")
        if not 0 <= self.one < n:
            raise MalformedStructure("one out of range")
        if len(self.neg) != n or any(not 0 <= x < n for x in self.neg):
            raise MalformedStructure("neg table malformed")
        if len(self.mul) != n or any(len(r) != n or any(not 0 <= x < n for x in r) for r in self.mul):
            raise MalformedStructure("mul table malformed")
        full = (1 << n) - 1
        if len(self.add) != n or any(len(r) != n or any(s <= 0 or s & ~full for s in r) for r in self.add):
            raise MalformedStructure("add table malformed (rows must be nonempty subsets)")

    @property
    def size(self) -> int:
        return len(self.elements)

    zero = 0

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def units(self) -> range:
        return range(1, self.size)

    def sum_sets(self, left: int, right: int) -> int:
        """Union of ``x + y`` over x in ``left``, y in ``right`` (bit sets)."""
        out = 0
        for x in iter_bits(left):
            row = self.add[x]
            for y in iter_bits(right):
                out |= row[y]
        return out

    def add_elem(self, x: int, right: int) -> int:
        row = self.add[x]
        out = 0
        for y in iter_bits(right):
            out |= row[y]
        return out

    def mul_sets(self, left: int, right: int) -> int:
        out = 0
        for x in iter_bits(left):
            row = self.mul[x]
            for y in iter_bits(right):
                out |= 1 << row[y]
        return out

    def neg_set(self, s: int) -> int:
        out = 0
        for x in iter_bits(s):
            out |= 1 << self.neg[x]
        return out

    def names(self, s: int) -> list[str]:
        return [self.elements[i] for i in iter_bits(s)]

    def minus(self, a: int, b: int) -> int:
        """The set a - b."""
        return self.add[a][self.neg[b]]

    @cached_property
    def inverse(self) -> tuple[int | None, ...]:
        out: list[int | None] = [None]
        for a in range(1, self.size):
            out.append(next((b for b in range(1, self.size) if self.mul[a][b] == self.one), None))
        return tuple(out)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise KeyError(f"{self.name}: no element named {name!r}") from None


class FiniteHyperfield(FiniteMultiring):
    """A multiring whose nonzero elements are invertible, with no zero divisors."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.size < 2 or self.one == 0:
            raise NotAHyperfield("a hyperfield needs 1 != 0")
        for a in range(1, self.size):
            if self.inverse[a] is None:
                raise NotAHyperfield(f"{self.elements[a]} has no inverse")
            for b in range(1, self.size):
                if self.mul[a][b] == 0:
                    raise NotAHyperfield(f"zero divisors {self.elements[a]}, {self.elements[b]}")


def as_hyperfield(m: FiniteMultiring) -> FiniteHyperfield:
    if isinstance(m, FiniteHyperfield):
        return m
    return FiniteHyperfield(m.name, m.elements, m.one, m.neg, m.mul, m.add)


# --- reports ---------------------------------------------------------------


@dataclass
class Verdict:
    passed: bool
    witness: tuple | None = None
    detail: dict | None = None


@dataclass
class AxiomReport:
    system: str
    subject: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v.passed]

    def __getitem__(self, key: str) -> Verdict:
        return self.verdicts[key]

    def merge(self, other: "AxiomReport") -> None:
        self.verdicts.update(other.verdicts)
        self.extras.update(other.extras)

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        axioms = {}
        for key, v in self.verdicts.items():
            entry: dict[str, Any] = {"pass": v.passed}
            if v.witness is not None:
                entry["witness"] = list(v.witness)
                if names is not None and all(isinstance(w, int) for w in v.witness):
                    entry["witness_names"] = [names[w] for w in v.witness]
            if v.detail:
                entry["detail"] = v.detail
            axioms[key] = entry
        return {"system": self.system, "subject": self.subject, "ok": self.ok, "axioms": axioms, "extras": self.extras}


def _scan(domain: Iterable[tuple], holds: Callable[..., bool]) -> Verdict:
    for t in domain:
        if not holds(*t):
            return Verdict(False, t)
    return Verdict(True)


# --- multigroup / multiring ------------------------------------------------


def _has(s: int, x: int) -> bool:
    return (s >> x) & 1 == 1


def _mg_reversibility(m: FiniteMultiring, x: int, y: int, z: int) -> bool:
    if not _has(m.add[x][y], z):
        return True
    return _has(m.add[z][m.neg[y]], x) and _has(m.add[m.neg[x]][z], y)


def _mg_identity(m: FiniteMultiring, x: int, y: int) -> bool:
    return _has(m.add[0][x], y) == (x == y)


def _assoc_sides(m: FiniteMultiring, x: int, y: int, z: int) -> tuple[int, int]:
    return m.add_elem(x, m.add[y][z]), m.sum_sets(m.add[x][y], 1 << z)


def _mg_associativity(m: FiniteMultiring, x: int, y: int, z: int) -> bool:
    left, right = _assoc_sides(m, x, y, z)
    return left == right


def _mg_commutativity(m: FiniteMultiring, x: int, y: int) -> bool:
    return m.add[x][y] == m.add[y][x]


def _mr_mul_assoc(m: FiniteMultiring, a: int, b: int, c: int) -> bool:
    return m.mul[a][m.mul[b][c]] == m.mul[m.mul[a][b]][c]


def _mr_mul_comm(m: FiniteMultiring, a: int, b: int) -> bool:
    return m.mul[a][b] == m.mul[b][a]


def _mr_mul_unit(m: FiniteMultiring, a: int) -> bool:
    return m.mul[m.one][a] == a


def _mr_mul_zero(m: FiniteMultiring, a: int) -> bool:
    return m.mul[a][0] == 0


def _mr_semi_dist(m: FiniteMultiring, a: int, b: int, c: int, d: int) -> bool:
    if not _has(m.add[a][b], c):
        return True
    return _has(m.add[m.mul[a][d]][m.mul[b][d]], m.mul[c][d])


def _distributive(m: FiniteMultiring, a: int, b: int, d: int) -> bool:
    image = 0
    for c in iter_bits(m.add[a][b]):
        image |= 1 << m.mul[d][c]
    return image == m.add[m.mul[d][a]][m.mul[d][b]]


def _hf_inverse(m: FiniteMultiring, a: int) -> bool:
    return m.inverse[a] is not None


def _hf_no_zero_divisors(m: FiniteMultiring, a: int, b: int) -> bool:
    return m.mul[a][b] != 0


def _hf_nontrivial(m: FiniteMultiring) -> bool:
    return m.size >= 2 and m.one != 0


_MULTIGROUP = {
    "multigroup.i": (_mg_reversibility, 3),
    "multigroup.ii": (_mg_identity, 2),
    "multigroup.iii": (_mg_associativity, 3),
    "multigroup.iv": (_mg_commutativity, 2),
}
_MULTIRING = {
    "multiring.ii.associative": (_mr_mul_assoc, 3),
    "multiring.ii.commutative": (_mr_mul_comm, 2),
    "multiring.ii.unit": (_mr_mul_unit, 1),
    "multiring.iii": (_mr_mul_zero, 1),
    "multiring.iv": (_mr_semi_dist, 4),
}


def _cube(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=k)


def check_multigroup(m: FiniteMultiring) -> AxiomReport:
    """Reversibility, identity, associativity and commutativity of addition."""
    report = AxiomReport("multigroup", m.name)
    n = m.size
    for key, (pred, arity) in _MULTIGROUP.items():
        if key == "multigroup.iii":
            report.verdicts[key] = _scan_associativity(m)
        else:
            report.verdicts[key] = _scan(_cube(n, arity), lambda *t, p=pred: p(m, *t))
    return report


def _scan_associativity(m: FiniteMultiring) -> Verdict:
    # memoise unions over the distinct sets that occur as sums
    n = m.size
    left_cache: dict[tuple[int, int], int] = {}
    right_cache: dict[tuple[int, int], int] = {}
    for x, y, z in _cube(n, 3):
        s, t = m.add[y][z], m.add[x][y]
        left = left_cache.get((x, s))
        if left is None:
            left = left_cache[(x, s)] = m.add_elem(x, s)
        right = right_cache.get((t, z))
        if right is None:
            right = right_cache[(t, z)] = m.sum_sets(t, 1 << z)
        if left != right:
            return Verdict(False, (x, y, z), {"x+(y+z)": m.names(left), "(x+y)+z": m.names(right)})
    return Verdict(True)


def check_multiring(m: FiniteMultiring) -> AxiomReport:
    """Multigroup axioms, commutative monoid, absorbing zero, semi-distributivity.

    Full distributivity is reported in ``extras["hyperring"]`` and does not
    affect the verdict.
    """
    report = check_multigroup(m)
    report.system = "multiring"
    n = m.size
    for key, (pred, arity) in _MULTIRING.items():
        report.verdicts[key] = _scan(_cube(n, arity), lambda *t, p=pred: p(m, *t))
    dist = _scan(_cube(n, 3), lambda a, b, d: _distributive(m, a, b, d))
    report.extras["hyperring"] = dist.passed
    if not dist.passed:
        report.extras["hyperring_witness"] = list(dist.witness)
    return report


def check_hyperfield(m: FiniteMultiring) -> AxiomReport:
    report = check_multiring(m)
    report.system = "hyperfield"
    report.verdicts["hyperfield.nontrivial"] = Verdict(_hf_nontrivial(m), None if _hf_nontrivial(m) else ())
    report.verdicts["hyperfield.inverses"] = _scan(((a,) for a in m.units), lambda a: _hf_inverse(m, a))
    report.verdicts["hyperfield.no_zero_divisors"] = _scan(
        product(m.units, repeat=2), lambda a, b: _hf_no_zero_divisors(m, a, b)
    )
    if report.verdicts["hyperfield.inverses"].passed:
        report.extras["inverse"] = list(m.inverse)
    return report


# --- hyperbolic / DM --------------------------------------------------------


def is_hyperbolic(f: FiniteMultiring) -> bool:
    return f.minus(f.one, f.one) == f.full


def dm2_product(f: FiniteMultiring, a: int, reading: str = "expanded") -> int:
    """The set (1 - a)(1 - a).

    ``expanded`` multiplies out the product and adds the four terms
    1 + (-a) + (-a) + a*a.  ``pointwise`` is {x*y : x, y in 1 - a}.
    """
    if reading == "pointwise":
        s = f.minus(f.one, a)
        return f.mul_sets(s, s)
    if reading != "expanded":
        raise ValueError(f"unknown DM2 reading {reading!r}")
    na = f.neg[a]
    terms = [f.one, na, na, f.mul[na][na]]
    acc = 1 << terms[0]
    for t in terms[1:]:
        acc = f.sum_sets(acc, 1 << t)
    return acc


def _dm1(f: FiniteMultiring, a: int) -> bool:
    return f.mul[a][a] == f.one


def _dm2(f: FiniteMultiring, a: int, reading: str = "expanded") -> bool:
    return dm2_product(f, a, reading) & ~f.minus(f.one, a) == 0


def _dm3(f: FiniteMultiring, x: int, y: int, z: int, b: int, a: int) -> bool:
    """Given b in y+z and a in x+b, some v in x+z has a in y+v and vb in xy+az."""
    if not (_has(f.add[y][z], b) and _has(f.add[x][b], a)):
        return True
    target = f.add[f.mul[x][y]][f.mul[a][z]]
    for v in iter_bits(f.add[x][z]):
        if _has(f.add[y][v], a) and _has(target, f.mul[v][b]):
            return True
    return False


def _scan_dm3(f: FiniteMultiring) -> tuple[Verdict, int]:
    n = f.size
    triples = 0
    for x, y, z in _cube(n, 3):
        triples += 1
        for b in iter_bits(f.add[y][z]):
            for a in iter_bits(f.add[x][b]):
                if not _dm3(f, x, y, z, b, a):
                    return Verdict(False, (x, y, z, b, a)), triples
    return Verdict(True), triples


def check_dm(f: FiniteMultiring, dm2_reading: str = "expanded") -> AxiomReport:
    """DM0 (hyperbolic), DM1 (a^2 = 1), DM2 and DM3.

    DM3 witnesses are (x, y, z, b, a): b in y+z and a in x+b, yet no v in x+z
    has a in y+v and v*b in x*y + a*z.  All carrier elements, zero included,
    are quantified over.
    """
    report = AxiomReport("dm", f.name)
    missing = f.full & ~f.minus(f.one, f.one)
    report.verdicts["DM0"] = Verdict(True) if not missing else Verdict(False, (next(iter_bits(missing)),))
    report.verdicts["DM1"] = _scan(((a,) for a in f.units), lambda a: _dm1(f, a))
    dm2 = _scan(((a,) for a in range(f.size)), lambda a: _dm2(f, a, dm2_reading))
    if not dm2.passed:
        (a,) = dm2.witness
        dm2.detail = {
            "reading": dm2_reading,
            "product": f.names(dm2_product(f, a, dm2_reading)),
            "one_minus_a": f.names(f.minus(f.one, a)),
        }
    report.verdicts["DM2"] = dm2
    report.verdicts["DM3"], triples = _scan_dm3(f)
    report.extras["dm2_reading"] = dm2_reading
    report.extras["dm3_triples"] = triples
    return report


def classify(f: FiniteMultiring, dm2_reading: str = "expanded") -> str:
    r = check_dm(f, dm2_reading)
    if not r["DM0"].passed:
        return "not hyperbolic"
    if not (r["DM1"].passed and r["DM2"].passed):
        return "hyperbolic"
    return "special" if r["DM3"].passed else "pre-special"


def at_least(classification: str, level: str) -> bool:
    return CLASSES.index(classification) >= CLASSES.index(level)


# --- morphisms --------------------------------------------------------------


def check_morphism(f: Sequence[int], a: FiniteMultiring, b: FiniteMultiring) -> AxiomReport:
    """Morphism conditions (i) addition, (ii) negation, (iii) f(0)=0,
    (iv) multiplication, (v) f(1)=1, plus the strong-morphism verdict."""
    report = AxiomReport("morphism", f"{a.name} -> {b.name}")
    if len(f) != a.size or any(not 0 <= y < b.size for y in f):
        raise MalformedStructure("map is not total on the source carrier")
    n = a.size

    def additive(x: int, y: int, z: int) -> bool:
        return not _has(a.add[x][y], z) or _has(b.add[f[x]][f[y]], f[z])

    report.verdicts["morphism.i"] = _scan(_cube(n, 3), additive)
    report.verdicts["morphism.ii"] = _scan(((x,) for x in range(n)), lambda x: f[a.neg[x]] == b.neg[f[x]])
    report.verdicts["morphism.iii"] = Verdict(f[0] == 0, None if f[0] == 0 else ())
    report.verdicts["morphism.iv"] = _scan(_cube(n, 2), lambda x, y: f[a.mul[x][y]] == b.mul[f[x]][f[y]])
    report.verdicts["morphism.v"] = Verdict(f[a.one] == b.one, None if f[a.one] == b.one else ())

    fibres: dict[int, int] = {}
    for x in range(n):
        fibres[f[x]] = fibres.get(f[x], 0) | (1 << x)
    lifted: dict[tuple[int, int, int], bool] = {}

    def strong(x: int, y: int, z: int) -> bool:
        fx, fy, fz = f[x], f[y], f[z]
        if not _has(b.add[fx][fy], fz):
            return True
        key = (fx, fy, fz)
        if key not in lifted:
            lifted[key] = any(
                a.add[x2][y2] & fibres[fz] for x2 in iter_bits(fibres[fx]) for y2 in iter_bits(fibres[fy])
            )
        return lifted[key]

    sv = _scan(_cube(n, 3), strong)
    report.extras["strong"] = sv.passed
    if not sv.passed:
        report.extras["strong_witness"] = list(sv.witness)
    return report


def is_isomorphism(f: Sequence[int], a: FiniteMultiring, b: FiniteMultiring) -> bool:
    if a.size != b.size or sorted(f) != list(range(b.size)):
        return False
    inv = [0] * b.size
    for x, y in enumerate(f):
        inv[y] = x
    return check_morphism(f, a, b).ok and check_morphism(inv, b, a).ok


def find_isomorphism(a: FiniteMultiring, b: FiniteMultiring) -> tuple[int, ...] | None:
    """Brute-force search for a table isomorphism (small carriers only)."""
    if a.size != b.size:
        return None
    n = a.size
    from itertools import permutations

    others = [x for x in range(n) if x not in (0, a.one)]
    targets = [y for y in range(n) if y not in (0, b.one)]
    for perm in permutations(targets):
        f = [0] * n
        f[a.one] = b.one
        for x, y in zip(others, perm):
            f[x] = y
        if all(f[a.mul[x][y]] == b.mul[f[x]][f[y]] for x in range(n) for y in range(n)):
            if all(
                sum(1 << f[z] for z in iter_bits(a.add[x][y])) == b.add[f[x]][f[y]]
                for x in range(n)
                for y in range(n)
            ) and all(f[a.neg[x]] == b.neg[f[x]] for x in range(n)):
                return tuple(f)
    return None


# --- single-instance re-checks ------------------------------------------------

_DM_RECHECK: dict[str, Callable[..., bool]] = {
    "DM1": _dm1,
    "DM3": _dm3,
}


def recheck(m: FiniteMultiring, key: str, witness: Sequence[int], **kw: Any) -> bool:
    """Re-evaluate a single axiom instance; True means the instance holds."""
    if key in _MULTIGROUP:
        return _MULTIGROUP[key][0](m, *witness)
    if key in _MULTIRING:
        return _MULTIRING[key][0](m, *witness)
    if key == "hyperfield.inverses":
        return _hf_inverse(m, *witness)
    if key == "hyperfield.no_zero_divisors":
        return _hf_no_zero_divisors(m, *witness)
    if key == "DM0":
        return _has(m.minus(m.one, m.one), witness[0])
    if key == "DM2":
        return _dm2(m, witness[0], kw.get("dm2_reading", "expanded"))
    if key in _DM_RECHECK:
        return _DM_RECHECK[key](m, *witness)
    raise KeyError(key)


# --- square-class coordinates ------------------------------------------------


@dataclass(frozen=True)
class UnitCoordinates:
    """F2 coordinates of the unit group modulo squares.

    ``basis`` lists the chosen generating elements; ``coords[a]`` is the
    coordinate bit vector of the class of unit ``a`` (``coords[0]`` is None).
    """

    dim: int
    basis: tuple[int, ...]
    coords: tuple[int | None, ...]
    squares: frozenset[int]

    def element_of(self, vector: int) -> int:
        """Least element whose class has the given coordinates."""
        for a in range(1, len(self.coords)):
            if self.coords[a] == vector:
                return a
        raise KeyError(vector)


def unit_coordinates(f: FiniteMultiring) -> UnitCoordinates:
    """Greedy basis of the F2-space of units modulo squares, in index order."""
    hf = as_hyperfield(f)
    units = list(hf.units)
    squares = frozenset(hf.mul[a][a] for a in units)
    # closure of squares under multiplication (already a subgroup for finite abelian groups)
    cosets: dict[int, int] = {s: 0 for s in squares}
    basis: list[int] = []
    for a in units:
        if a in cosets:
            continue
        bit = 1 << len(basis)
        basis.append(a)
        new = {hf.mul[a][x]: v | bit for x, v in cosets.items()}
        cosets.update(new)
    coords: list[int | None] = [None] + [cosets[a] for a in units]
    return UnitCoordinates(len(basis), tuple(basis), tuple(coords), squares)


# --- JSON ---------------------------------------------------------------------


def multiring_to_json(m: FiniteMultiring) -> dict:
    return {
        "name": m.name,
        "elements": list(m.elements),
        "zero": 0,
        "one": m.one,
        "neg": list(m.neg),
        "mul": [list(r) for r in m.mul],
        "add": [[list(iter_bits(s)) for s in r] for r in m.add],
    }


def multiring_from_json(doc: Any) -> FiniteMultiring:
    """Parse a hyperfield document; asymmetric tables are rejected."""
    try:
        if not isinstance(doc, dict):
            raise MalformedStructure("document must be an object")
        if doc.get("zero", 0) != 0:
            raise MalformedStructure("element 0 must be the additive zero")
        elements = tuple(str(e) for e in doc["elements"])
        n = len(elements)
        add_rows = []
        for row in doc["add"]:
            bits_row = []
            for cell in row:
                s = 0
                for c in cell:
                    if not isinstance(c, int) or not 0 <= c < n:
                        raise MalformedStructure(f"add entry {c!r} out of range")
                    s |= 1 << c
                bits_row.append(s)
            add_rows.append(tuple(bits_row))
        m = FiniteMultiring(
            str(doc.get("name", "")),
            elements,
            int(doc["one"]),
            tuple(int(x) for x in doc["neg"]),
            tuple(tuple(int(x) for x in r) for r in doc["mul"]),
            tuple(add_rows),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedStructure(f"missing or mistyped field: {exc}") from exc
    for a in range(m.size):
        for b in range(a + 1, m.size):
            if m.add[a][b] != m.add[b][a] or m.mul[a][b] != m.mul[b][a]:
                raise MalformedStructure(f"tables not symmetric at ({a}, {b})")
    if any(m.neg[m.neg[a]] != a for a in range(m.size)):
        raise MalformedStructure("neg is not an involution")
    try:
        return as_hyperfield(m)
    except NotAHyperfield:
        return m


def dumps(doc: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"
