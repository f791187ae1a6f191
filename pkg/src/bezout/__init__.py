"""Mixed volumes, mixed discriminants and Bezout-type inequalities for convex polytopes."""
from . import campaign, constants, constructions, discriminant, inequalities, mixed_volume, polytope, report
from .constants import b_bound, bound_table, c_lower_asymptotic, c_lower_binom, c_upper, root_Pm
from .constructions import asymptotic_ratio, build_cor_body, build_hyp_instance, verify_cor_ratio
from .discriminant import mixed_discriminant, mixed_discriminant_interp, random_psd
from .inequalities import random_polytope
from .mixed_volume import NumericalConsistencyError, mixed_volume, mixed_volume_interp
from .polytope import (
    Polytope,
    canonical_hull,
    cross_polytope,
    cube,
    minkowski_sum,
    project,
    scale,
    segment,
    simplex,
    volume,
)
from .report import InequalityReport

__version__ = "0.1.0"

__all__ = [
    "campaign", "constants", "constructions", "discriminant", "inequalities",
    "mixed_volume", "polytope", "report",
    "Polytope", "canonical_hull", "volume", "minkowski_sum", "scale", "project",
    "simplex", "cube", "segment", "cross_polytope",
    "mixed_volume", "mixed_volume_interp", "NumericalConsistencyError",
    "mixed_discriminant", "mixed_discriminant_interp", "random_psd",
    "random_polytope", "InequalityReport",
    "b_bound", "root_Pm", "c_upper", "c_lower_binom", "c_lower_asymptotic", "bound_table",
    "build_hyp_instance", "asymptotic_ratio", "build_cor_body", "verify_cor_ratio",
]
