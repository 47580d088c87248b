"""Exact analysis of real projective line arrangements.

Multiplicity profiles, region counts, incidence inequalities, and
linear-combination certificates for lower bounds on the number of regions.
"""

from .core import (
    Arrangement,
    ProjLine,
    ProjPoint,
    Rational,
    apply_projectivity,
    canonicalize,
    incident,
    intersect,
)
from .profile import MultiplicityProfile, compute_profile, is_pencil, region_count_oracle
from .generators import (
    gen_generic,
    gen_near_pencil,
    gen_pencil,
    gen_random,
    read_arrangement,
    write_arrangement,
)
from .inequalities import InequalityReport, InequalitySpec, builtin_inequalities, check_all, evaluate
from .certificates import (
    Certificate,
    check_certificate,
    derive_bound,
    optimize_certificate,
    theorem1_bound,
    theorem1_certificate,
)
from .bounds import all_bounds, crossover_scan, dominance_region_check, profile_vs_bounds

__version__ = "0.1.0"
