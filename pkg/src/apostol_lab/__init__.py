"""Exact computation and verification of Apostol-type Daehee and Changhee numbers attached to Dirichlet characters."""

from .apostol import (
    ChangheeContext,
    DaeheeContext,
    changhee_closed_form,
    changhee_numbers,
    changhee_polynomials,
    daehee_closed_form,
    daehee_numbers,
    daehee_polynomials,
)
from .classical import PoleError
from .dirichlet import (
    DirichletChar,
    conductor,
    enumerate_characters,
    kronecker_character,
    parse_character,
    trivial_character,
)
from .registry import THEOREM_IDS, IdentityReport, Sample, verify_identity
from .rings import CycQ, LogExpr
from .series import TruncSeries

__version__ = "0.1.0"

__all__ = [
    "ChangheeContext",
    "CycQ",
    "DaeheeContext",
    "DirichletChar",
    "IdentityReport",
    "LogExpr",
    "PoleError",
    "Sample",
    "THEOREM_IDS",
    "TruncSeries",
    "changhee_closed_form",
    "changhee_numbers",
    "changhee_polynomials",
    "conductor",
    "daehee_closed_form",
    "daehee_numbers",
    "daehee_polynomials",
    "enumerate_characters",
    "kronecker_character",
    "parse_character",
    "trivial_character",
    "verify_identity",
]
