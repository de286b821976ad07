from .linalg import RatMatrix, rank, rank_kernel_image, solve
from .exterior import FormSyntaxError, Multivector, format_form, parse_form, wedge
from .complexes import ChainMap, ComplexError, GradedComplex, InternalInconsistency, cohomology, tensor
from .lie import LiePresentation, ce_complex, validate_presentation
from .torus import Character, WeightAssignment, check_weight_compatibility, invariant_complex
from .coeffective import (
    LefschetzError, SymplecticError, SymplecticForm, class_status, coeffective_cohomology,
    coeffective_complex, compare, compare_subcomplex, les_verify, lefschetz_profile,
    tilde_cohomology, validate_symplectic,
)
from .schema import ModelError, ModelFile, format_model, parse_model
from .model_runtime import load_model, model_complex, product_model, resolve_model
from .registry import builtin_example, verify_golden

__all__ = [
    "RatMatrix", "rank", "rank_kernel_image", "solve",
    "FormSyntaxError", "Multivector", "format_form", "parse_form", "wedge",
    "ChainMap", "ComplexError", "GradedComplex", "InternalInconsistency", "cohomology", "tensor",
    "LiePresentation", "ce_complex", "validate_presentation",
    "Character", "WeightAssignment", "check_weight_compatibility", "invariant_complex",
    "LefschetzError", "SymplecticError", "SymplecticForm", "class_status", "coeffective_cohomology",
    "coeffective_complex", "compare", "compare_subcomplex", "les_verify", "lefschetz_profile",
    "tilde_cohomology", "validate_symplectic",
    "ModelError", "ModelFile", "format_model", "parse_model",
    "load_model", "model_complex", "product_model", "resolve_model",
    "builtin_example", "verify_golden",
]
