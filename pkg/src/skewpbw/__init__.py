"""Exact arithmetic, centralizers, and annihilating curves for skew PBW extensions."""

from .algebra import Algebra, Element, MonomialOrder, ValidationIssue, ValidationReport
from .annihilator import Annihilator, BivariatePoly, BoundsConfig, \
    annihilating_polynomial, constants_field_probe, evaluate_bivariate, \
    fp_module_dependence
from .centralizer import CentralizerBasis, centralizer_bounded, commutes, \
    lc_identity_check, residue_class_profile
from .errors import CapExhaustedError, ContractError, NotDivisibleError, \
    NotInvertibleError, ParseError, RingMismatchError, SpecValidationError
from .exprs import format_element, parse_element
from .presets import PRESET_NAMES, preset, preset_document
from .rings import CoeffRing, Poly, RatFn, RingMap, SigmaDerivation
from .specfile import load_document, parse_document, unparse

__version__ = "0.1.0"

__all__ = [
    "Algebra", "Element", "MonomialOrder", "ValidationIssue", "ValidationReport",
    "Annihilator", "BivariatePoly", "BoundsConfig", "annihilating_polynomial",
    "constants_field_probe", "evaluate_bivariate", "fp_module_dependence",
    "CentralizerBasis", "centralizer_bounded", "commutes", "lc_identity_check",
    "residue_class_profile",
    "CapExhaustedError", "ContractError", "NotDivisibleError",
    "NotInvertibleError", "ParseError", "RingMismatchError", "SpecValidationError",
    "format_element", "parse_element",
    "PRESET_NAMES", "preset", "preset_document",
    "CoeffRing", "Poly", "RatFn", "RingMap", "SigmaDerivation",
    "load_document", "parse_document", "unparse",
    "__version__",
]
