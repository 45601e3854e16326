"""Exact computations with calibrated modules of affine Hecke algebras."""

from __future__ import annotations

from .calibration import build_graph, components_and_shapes, placed_shapes, tableaux, to_dot
from .hecke import (
    AffineHeckeAlgebra,
    MatrixRep,
    bernstein_commute,
    cyclic_closure,
    weight_closures,
    is_central,
    multiply,
    orbit_sum,
    principal_series,
    verify_defining_relations,
    weight_space_analysis,
)
from .roots import build_root_system, cartan_matrix
from .scalars import FieldElem, LaurentPoly, QContext, evaluate_numeric, make_context, q_power
from .skew import (
    build_skew_module,
    calibratable_detail,
    classify_calibrated,
    irreducibility_certificate,
    is_calibratable_rank2,
    is_placed_skew_shape,
    verify_tau_properties,
)
from .weights import Weight, orbit, real_weight, weyl_act, zero_pole_sets
from .weyl import WeylElement, enumerate_group, weyl_group

__all__ = [
    "AffineHeckeAlgebra",
    "FieldElem",
    "LaurentPoly",
    "MatrixRep",
    "QContext",
    "Weight",
    "WeylElement",
    "bernstein_commute",
    "build_graph",
    "build_root_system",
    "build_skew_module",
    "calibratable_detail",
    "cartan_matrix",
    "classify_calibrated",
    "components_and_shapes",
    "cyclic_closure",
    "enumerate_group",
    "evaluate_numeric",
    "irreducibility_certificate",
    "is_calibratable_rank2",
    "is_central",
    "is_placed_skew_shape",
    "make_context",
    "multiply",
    "orbit",
    "orbit_sum",
    "placed_shapes",
    "principal_series",
    "q_power",
    "real_weight",
    "tableaux",
    "to_dot",
    "verify_defining_relations",
    "verify_tau_properties",
    "weight_closures",
    "weight_space_analysis",
    "weyl_act",
    "weyl_group",
    "zero_pole_sets",
]
