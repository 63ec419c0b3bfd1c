"""Reduced K-theory of finite hyperfields and the graded-ring machinery around it."""

from __future__ import annotations

from .adjunction import AdjunctionError, adjunction_unit, f_sharp, morphisms_into
from .fixsg3 import Fixsg3Error, Witness, fixsg3_backward, fixsg3_forward
from .graded import (
    GradedKData,
    GradedMap,
    KExpression,
    expr_is_zero,
    graded_iso_exists,
    induced_map,
    omega,
    reduced_k,
    smc_check,
)
from .igr import (
    IgrData,
    IgrMorphism,
    check_igr,
    check_igr_morphism,
    igr_from_k,
    igr_plus_report,
    one_subring,
    polynomial_igr,
    quotient_functor,
    tensor_algebra_igr,
    with_free_generator,
)
from .interchange import InterchangeError, interchange_report

__all__ = [
    "AdjunctionError",
    "Fixsg3Error",
    "InterchangeError",
    "GradedKData",
    "GradedMap",
    "IgrData",
    "IgrMorphism",
    "KExpression",
    "Witness",
    "adjunction_unit",
    "check_igr",
    "check_igr_morphism",
    "expr_is_zero",
    "f_sharp",
    "fixsg3_backward",
    "fixsg3_forward",
    "graded_iso_exists",
    "igr_from_k",
    "igr_plus_report",
    "induced_map",
    "interchange_report",
    "morphisms_into",
    "omega",
    "one_subring",
    "polynomial_igr",
    "quotient_functor",
    "reduced_k",
    "smc_check",
    "tensor_algebra_igr",
    "with_free_generator",
]
