"""Strength, Box-Hunter aliasing/resolution and generalized wordlength
patterns of simple fractional factorial designs, in exact arithmetic."""

from .constructors import (
    full_factorial_design,
    juxtapose,
    modular_fraction,
    project,
    read_design,
    regular_fraction,
    write_design,
)
from .core import DesignError, FractionalDesign, FullFactorial, Partition, blocking_for, is_independent, join, pi
from .effects import (
    AliasReport,
    AliasStatus,
    ResourceGuard,
    ResourceGuardError,
    alias_table,
    classify_alias,
    interaction_space,
    pencil_alias_classes,
    resolution_max,
    restrict_space,
)
from .estimator import DesignAnalyzer, check_runs
from .strength import StrengthReport, cross_check_strength, strength_by_independence, strength_by_projection
from .verify import TheoremWitness, VerificationReport, theorem_witness, verify_identities
from .wordlength import GwlpVector, gwlp_characters, gwlp_krawtchouk, min_positive_index, regular_wlp

__version__ = "0.1.0"

__all__ = [
    "AliasReport",
    "AliasStatus",
    "DesignAnalyzer",
    "DesignError",
    "FractionalDesign",
    "FullFactorial",
    "GwlpVector",
    "Partition",
    "ResourceGuard",
    "ResourceGuardError",
    "StrengthReport",
    "TheoremWitness",
    "VerificationReport",
    "alias_table",
    "blocking_for",
    "check_runs",
    "classify_alias",
    "cross_check_strength",
    "full_factorial_design",
    "gwlp_characters",
    "gwlp_krawtchouk",
    "interaction_space",
    "is_independent",
    "join",
    "juxtapose",
    "min_positive_index",
    "modular_fraction",
    "pencil_alias_classes",
    "pi",
    "project",
    "read_design",
    "regular_fraction",
    "regular_wlp",
    "resolution_max",
    "restrict_space",
    "strength_by_independence",
    "strength_by_projection",
    "theorem_witness",
    "verify_identities",
    "write_design",
]
