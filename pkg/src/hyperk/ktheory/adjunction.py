"""Unit of the adjunction between pre-special hyperfields and Igr+, and the
factorization of morphisms F -> Gamma(R) through k(F)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from ..constructions import gamma_of_igr
from ..hyperstructures import (
    AxiomReport,
    FiniteHyperfield,
    FiniteMultiring,
    Verdict,
    as_hyperfield,
    at_least,
    check_morphism,
    classify,
)
from .graded import GradedKData, reduced_k
from .igr import IgrData, IgrMorphism, check_igr_morphism, igr_from_k, igr_plus_report

__all__ = ["AdjunctionError", "SharpResult", "UnitResult", "adjunction_unit", "f_sharp", "morphisms_into"]

UNIQUENESS_BOUND = 16


class AdjunctionError(ValueError):
    pass


@dataclass
class UnitResult:
    phi: tuple[int, ...]
    kdata: GradedKData
    igr: IgrData
    gamma: FiniteHyperfield
    report: AxiomReport


def _require_pre_special(f: FiniteMultiring, dm2_reading: str) -> FiniteHyperfield:
    hf = as_hyperfield(f)
    cls = classify(hf, dm2_reading)
    if not at_least(cls, "pre-special"):
        raise AdjunctionError(f"{hf.name} is {cls}, not pre-special")
    return hf


def adjunction_unit(f: FiniteMultiring, max_degree: int = 2, dm2_reading: str = "pointwise") -> UnitResult:
    """a -> e(rho(a)) from F into Gamma(k(F)), with morphism/bijectivity/iso verdicts."""
    hf = _require_pre_special(f, dm2_reading)
    data = reduced_k(hf, max(max_degree, 2))
    r = igr_from_k(data)
    gamma = gamma_of_igr(r)
    phi = [0] * hf.size
    for a in hf.units:
        phi[a] = 1 + data.compress(1, data.reduce(1, data.coords[a]))
    phi = tuple(phi)
    rep = AxiomReport("adjunction unit", hf.name)
    forward = check_morphism(phi, hf, gamma)
    rep.verdicts["morphism"] = Verdict(forward.ok, None, None if forward.ok else {"failed": forward.failed()})
    bijective = sorted(phi) == list(range(gamma.size))
    rep.verdicts["unit_bijection"] = Verdict(bijective)
    if bijective:
        inv = [0] * gamma.size
        for x, y in enumerate(phi):
            inv[y] = x
        backward = check_morphism(inv, gamma, hf)
        rep.extras["isomorphism"] = forward.ok and backward.ok
        if not backward.ok:
            rep.extras["inverse_failed"] = backward.failed()
    else:
        rep.extras["isomorphism"] = False
    return UnitResult(phi, data, r, gamma, rep)


@dataclass
class SharpResult:
    morphism: IgrMorphism | None
    report: AxiomReport
    degree_one: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)


def _rho_images(f: Sequence[int], hf: FiniteHyperfield) -> list[int]:
    # e_R^{-1}: unit index w + 1 of Gamma(R) is the R_1 vector w
    return [0] + [f[a] - 1 for a in hf.units]


def _extend(r: IgrData, data: GradedKData, degree_one: Sequence[int], n: int) -> tuple[int, ...]:
    """Images of the degree-n quotient basis: products of degree-one images."""
    d = data.k1_dim
    out = []
    for q in range(data.quotient_dim(n)):
        col = data.basis_columns(n)[q]
        slots = []
        for _ in range(n):
            col, t = divmod(col, d)
            slots.append(t)
        slots.reverse()
        out.append(_fold(r, [degree_one[t] for t in slots]))
    return tuple(out)


def _fold(r: IgrData, factors: Sequence[int]) -> int:
    acc = r.top[0]
    for k, x in enumerate(reversed(factors)):
        acc = r.product(1, x, k, acc)
    return acc


def f_sharp(
    f: Sequence[int],
    source: FiniteMultiring,
    r: IgrData,
    max_degree: int | None = None,
    dm2_reading: str = "pointwise",
    check_uniqueness: bool = True,
) -> SharpResult:
    """The Igr morphism k(F) -> R with f#(rho(a1)...rho(an)) = e^-1 f(a1) * ... * e^-1 f(an)."""
    hf = _require_pre_special(source, dm2_reading)
    big = r.max_degree if max_degree is None else min(max_degree, r.max_degree)
    rep = AxiomReport("f_sharp", f"{hf.name} -> {r.name}")
    gamma = gamma_of_igr(r, check=False)
    plus = igr_plus_report(r)
    rep.verdicts["target_in_igr_plus"] = Verdict(plus.ok, None, None if plus.ok else {"failed": plus.failed()})
    morph = check_morphism(f, hf, gamma)
    rep.verdicts["f_morphism"] = Verdict(morph.ok, None, None if morph.ok else {"failed": morph.failed()})

    data = reduced_k(hf, big)
    src = igr_from_k(data)
    images = _rho_images(f, hf)
    degree_one = [images[b] for b in data.basis_elements]

    # linearity on square classes: rho(ab) must go to the product of images
    bad = next(
        (
            a
            for a in hf.units
            if images[a] != _combine(degree_one, data.coords[a])
        ),
        None,
    )
    rep.verdicts["degree_one_linear"] = Verdict(bad is None, None if bad is None else (bad,))
    if bad is not None:
        rep.extras["violated_precondition"] = "f is not a morphism"
        return SharpResult(None, rep, tuple(degree_one))

    annihilated = True
    for n in range(big + 1):
        basis_images = _tensor_images(r, data, degree_one, n)
        for row in data.relations[n].rows:
            if _apply_cols(basis_images, row):
                annihilated = False
                rep.verdicts["relations_annihilated"] = Verdict(False, (n,))
                break
        if not annihilated:
            break
    if annihilated:
        rep.verdicts["relations_annihilated"] = Verdict(True)
    else:
        rep.extras["violated_precondition"] = "f is not a morphism" if not morph.ok else "R is not in Igr+"
        return SharpResult(None, rep, tuple(degree_one))
    if not morph.ok:
        # the linear extension may exist, but it is not the factorization of anything
        rep.extras["violated_precondition"] = "f is not a morphism"
        return SharpResult(None, rep, tuple(degree_one))

    maps = tuple(_extend(r, data, degree_one, n) for n in range(big + 1))
    sharp = IgrMorphism(src, r, maps)
    igr_check = check_igr_morphism(sharp, src, r)
    rep.verdicts["igr_morphism"] = Verdict(igr_check.ok, None, None if igr_check.ok else {"failed": igr_check.failed()})

    # triangle: Gamma(f#) o phi_F = f, pointwise on the carrier
    def gamma_sharp(a: int) -> int:
        if a == 0:
            return 0
        return 1 + sharp.apply(1, data.compress(1, data.reduce(1, data.coords[a])))

    bad_t = next((a for a in range(hf.size) if gamma_sharp(a) != f[a]), None)
    rep.verdicts["triangle"] = Verdict(bad_t is None, None if bad_t is None else (bad_t,))

    result = SharpResult(sharp, rep, tuple(degree_one))
    size_r1 = 1 << r.dims[1] if big >= 1 else 1
    if not check_uniqueness or size_r1 > UNIQUENESS_BOUND:
        rep.extras["uniqueness"] = "not checked"
        result.notes.append("uniqueness not checked: R_1 exceeds the exhaustive bound")
        return result
    count = 0
    for cand in product(range(size_r1), repeat=src.dims[1] if big >= 1 else 0):
        ok = all(
            1 + _apply_cols(cand, data.compress(1, data.reduce(1, data.coords[a]))) == f[a] for a in hf.units
        )
        if not ok:
            continue
        other = IgrMorphism(src, r, ((r.top[0],),) + tuple(_extend_q(r, src, data, cand, n) for n in range(1, big + 1)))
        if check_igr_morphism(other, src, r).ok:
            count += 1
    rep.extras["uniqueness"] = count
    rep.verdicts["unique"] = Verdict(count == 1, None, None if count == 1 else {"count": count})
    return result


def _combine(cols: Sequence[int], v: int | None) -> int:
    out = 0
    for i, c in enumerate(cols):
        if v is not None and (v >> i) & 1:
            out ^= c
    return out


def _apply_cols(cols: Sequence[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= cols[i]
        v >>= 1
        i += 1
    return out


def _tensor_images(r: IgrData, data: GradedKData, degree_one: Sequence[int], n: int) -> list[int]:
    d = data.k1_dim
    out = []
    for flat in range(d**n):
        slots = []
        col = flat
        for _ in range(n):
            col, t = divmod(col, d)
            slots.append(t)
        slots.reverse()
        out.append(_fold(r, [degree_one[t] for t in slots]))
    return out


def _extend_q(r: IgrData, src: IgrData, data: GradedKData, cand: Sequence[int], n: int) -> tuple[int, ...]:
    # cand is a map on the k_1 quotient basis; pull back to ambient degree-one coordinates
    d = data.k1_dim
    amb = [_apply_cols(cand, data.compress(1, data.reduce(1, 1 << i))) for i in range(d)]
    return _extend(r, data, amb, n)


def morphisms_into(f: FiniteMultiring, target: FiniteMultiring) -> list[tuple[int, ...]]:
    """All morphisms between two hyperfields whose units have exponent 2.

    Candidates are group homomorphisms on square-class coordinates.
    """
    from ..hyperstructures import unit_coordinates

    src = as_hyperfield(f)
    uc = unit_coordinates(src)
    out = []
    for images in product(target.units, repeat=uc.dim):
        phi = [0] * src.size
        for a in src.units:
            y = target.one
            for i in range(uc.dim):
                if (uc.coords[a] >> i) & 1:
                    y = target.mul[y][images[i]]
            phi[a] = y
        phi = tuple(phi)
        if check_morphism(phi, src, target).ok:
            out.append(phi)
    return out
