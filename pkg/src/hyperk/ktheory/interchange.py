"""Compare three K-theories attached to a prime field: of the field itself, of
its quotient by squares, of the extracted special group (Dickmann-Miraglia
style) and of the hyperfield rebuilt from that group."""

from __future__ import annotations

from ..constructions import gf, m_of_g, marshall_quotient, special_group_of, squares
from ..hyperstructures import classify
from ..specialgroups import check_sg, dm_ktheory
from .graded import graded_iso_exists, reduced_k

__all__ = ["InterchangeError", "interchange_report"]

PRIME_CAP = 101


class InterchangeError(ValueError):
    pass


def _odd_prime(p: int) -> bool:
    return p > 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def interchange_report(p: int, max_degree: int = 3, pair_mode: str = "distinct") -> dict:
    if not _odd_prime(p):
        raise InterchangeError(f"{p} is not an odd prime")
    if p > PRIME_CAP:
        raise InterchangeError(f"p = {p} exceeds the cap {PRIME_CAP}")
    field = gf(p)
    k_field = reduced_k(field, max_degree, pair_mode)
    q, _, _ = marshall_quotient(field, squares(field))
    k_quot = reduced_k(q, max_degree, pair_mode)
    g, _ = special_group_of(q)
    sg = check_sg(g)
    k_dm = dm_ktheory(g, max_degree)
    mg = m_of_g(g)
    k_mg = reduced_k(mg, max_degree, pair_mode)
    routes = {
        "field": k_field,
        "quotient": k_quot,
        "special_group": k_dm,
        "m_of_g": k_mg,
    }
    comparisons = {}
    for left, right in (("field", "quotient"), ("quotient", "special_group"), ("special_group", "m_of_g"), ("field", "m_of_g")):
        res = graded_iso_exists(routes[left], routes[right])
        comparisons[f"{left}~{right}"] = {
            "status": res.status,
            "witness": list(res.matrix) if res.matrix is not None else None,
        }
    return {
        "p": p,
        "max_degree": max_degree,
        "pair_mode": pair_mode,
        "quotient_size": q.size,
        "quotient_class": classify(q, "pointwise"),
        "special_group": {"order": g.order, "classification": sg.extras["classification"]},
        "dims": {name: data.dims() for name, data in routes.items()},
        "isomorphisms": comparisons,
        "ok": all(c["status"] == "iso" for c in comparisons.values()),
    }
