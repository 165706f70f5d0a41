"""
gradreg Package

Exact computation of the homological regularities of graded modules over
N-graded algebras given by quivers with relations, with a theorem-checking
suite and a rich console interface.
"""

__version__ = "1.0.0"
__author__ = "gradreg Team"

from .scalar import FieldSpec
from .presentation import QuiverPresentation, parse_presentation
from .algebra import TruncatedAlgebra, build_truncated, opposite, a0_structure, endo_twist, hilbert
from .gmod import (GradedModule, FreeGradedModule, GradedMap, cokernel_module, kernel,
                   truncate_below, shift, matlis_dual, sdeg_ideg)
from .resolve import minimal_resolution, betti, check_minimality, is_linear
from .homology import ext_table, tor_table
from .gorenstein import ASGorensteinData, cmreg_duality, equalize_parameters
from .regularity import torreg_from_betti, regs_of_module, cmreg_limit, asreg, homogeneity_check
from .verify import SuiteConfig, random_module, run_theorem_suite
from .models import Bounds, ExtendedDegree, RegValue, RegularityReport, Verdict
from .main import GradregApp, main

__all__ = [
    "FieldSpec",
    "QuiverPresentation", "parse_presentation",
    "TruncatedAlgebra", "build_truncated", "opposite", "a0_structure", "endo_twist", "hilbert",
    "GradedModule", "FreeGradedModule", "GradedMap", "cokernel_module", "kernel",
    "truncate_below", "shift", "matlis_dual", "sdeg_ideg",
    "minimal_resolution", "betti", "check_minimality", "is_linear",
    "ext_table", "tor_table",
    "ASGorensteinData", "cmreg_duality", "equalize_parameters",
    "torreg_from_betti", "regs_of_module", "cmreg_limit", "asreg", "homogeneity_check",
    "SuiteConfig", "random_module", "run_theorem_suite",
    "Bounds", "ExtendedDegree", "RegValue", "RegularityReport", "Verdict",
    "GradregApp", "main",
]
