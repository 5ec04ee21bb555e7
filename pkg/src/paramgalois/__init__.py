"""Parameterized differential Galois groups of y'' = r(z, t) y."""

from .errors import (
    InvalidCertificate,
    ParamGaloisError,
    ParseError,
    UnsupportedDenominator,
    UnsupportedError,
    UnsupportedRadicand,
    VerificationError,
)
from .galois import assemble_group, integrability_space, verify_integrability
from .kovacic import classify
from .params import Derivation, ParamField
from .parser import parse_expression, parse_form
from .pipeline import InputSpec, Report, run_dspace, run_pipeline
from .ratfunc import RatFunc
from .ratsolve import oracle_rational_solutions, rational_solutions

__all__ = [
    "Derivation",
    "InputSpec",
    "InvalidCertificate",
    "ParamField",
    "ParamGaloisError",
    "ParseError",
    "RatFunc",
    "Report",
    "UnsupportedDenominator",
    "UnsupportedError",
    "UnsupportedRadicand",
    "VerificationError",
    "assemble_group",
    "classify",
    "integrability_space",
    "oracle_rational_solutions",
    "parse_expression",
    "parse_form",
    "rational_solutions",
    "run_dspace",
    "run_pipeline",
    "verify_integrability",
]
