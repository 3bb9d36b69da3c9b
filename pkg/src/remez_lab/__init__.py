"""Numerical laboratory for Remez-type integral inequalities on log-concave measures."""

__version__ = "0.1.0"

from .bounds import (bg_bound, class_constant_from_R, classical_remez_bound,  # noqa: E402
                     cw_levelset_bound, negative_p_bound, theorem1_factor)
from .measures import MeasureSpec, hit_and_run, membership, quadrature_1d, sample_direct  # noqa: E402
from .norm_engine import (NormEstimate, levelset_measure, lp_norm,  # noqa: E402
                          restricted_lp_norm, set_measure)
from .poly_core import (Polynomial, PolynomialMap, TrigPolynomial, eval_map_norm,  # noqa: E402
                        eval_polynomial, eval_trig_modulus, random_polynomial,
                        restrict_to_line)
from .sets import (Complement, Halfspace, Intersection, IntervalUnion, SetSpec,  # noqa: E402
                   Sublevel, Union, Whole, indicator)

__all__ = [
    "MeasureSpec", "NormEstimate", "Polynomial", "PolynomialMap", "TrigPolynomial",
    "SetSpec", "Halfspace", "Sublevel", "IntervalUnion", "Complement", "Intersection",
    "Union", "Whole", "indicator", "eval_polynomial", "eval_map_norm", "eval_trig_modulus",
    "restrict_to_line", "random_polynomial", "sample_direct", "hit_and_run", "membership",
    "quadrature_1d", "lp_norm", "restricted_lp_norm", "levelset_measure", "set_measure",
    "classical_remez_bound", "bg_bound", "theorem1_factor", "cw_levelset_bound",
    "class_constant_from_R", "negative_p_bound",
]
