"""Exact symbolic computation on Danielewski surfaces f(x)y = phi(z):
quotient-ring normal forms, locally nilpotent derivations, automorphism
generator families, and isotropy-group verification suites."""

from .exactnum import (CycScalar, Rational, cyclotomic_polynomial,
                       root_of_unity_order, zeta)
from .multipoly import MultiPoly
from .surface import SurfaceSpec, SurfaceElement, elements_equal, normal_form
from .diffmaps import (CapExceededError, CommutationResult, Derivation,
                       NilpotencyReport, RingMap, apply_derivation, apply_map,
                       check_derivation_well_defined, check_map_well_defined,
                       commutes, compose_maps, exp_derivation,
                       is_locally_nilpotent, kernel_contains, scale_by_kernel)
from .isotropy import (CanonicalLND, CheckRecord, GeneratorRequest, PhiShape,
                       SamplingPlan, ShapeMismatchError, VerifyReport,
                       canonical_lnd, classify_phi, hyperbolic_order_bound,
                       hyperbolic_rotation, involution, make_generator,
                       monomial_split, plane_example_suite, rescaling,
                       surface_class, symmetry, triangular,
                       verify_isotropy_theorem)
from .parsing import ParseError, parse_expression, parse_images, parse_surface

__all__ = [
    "CanonicalLND", "CapExceededError", "CheckRecord", "CommutationResult",
    "CycScalar", "Derivation", "GeneratorRequest", "MultiPoly",
    "NilpotencyReport", "ParseError", "PhiShape", "Rational", "RingMap",
    "SamplingPlan", "ShapeMismatchError", "SurfaceElement", "SurfaceSpec",
    "VerifyReport", "apply_derivation", "apply_map", "canonical_lnd",
    "check_derivation_well_defined", "check_map_well_defined", "classify_phi",
    "commutes", "compose_maps", "cyclotomic_polynomial", "elements_equal",
    "exp_derivation", "hyperbolic_order_bound", "hyperbolic_rotation",
    "involution", "is_locally_nilpotent", "kernel_contains", "make_generator",
    "monomial_split", "normal_form", "parse_expression", "parse_images",
    "parse_surface", "plane_example_suite", "rescaling", "root_of_unity_order",
    "scale_by_kernel", "surface_class", "symmetry", "triangular",
    "verify_isotropy_theorem", "zeta",
]

__version__ = "0.1.0"
