"""Zero-integral spline bases for density data: construction,
orthogonalization (including the dyadic splinet scheme), smoothing-spline
fitting under the centred log-ratio transform, and simplicial functional PCA.
"""

from .bayes import (
    DiscreteDensity,
    GridFunction,
    bayes_inner,
    clr,
    clr_discrete,
    inv_clr,
    l2_grid_inner,
    perturb,
    power,
)
from .bspline import design_matrix, eval_bspline
from .inner import InstrumentationContext, gram, l2_inner, nonzero_count, zb_gram
from .knots import KnotSequence, dyadic_inner_count, dyadic_levels, make_knots
from .ortho import (
    OrthoBasis,
    Strategy,
    orthogonalize,
    predicted_ip_count,
    predicted_support,
    relative_total_support,
)
from .sfpca import CoefficientDataset, FpcaResult, active_basis, fpca, sparse_fpca
from .smoothing import FitResult, SmoothingProblem, check_rank, fit, fit_density
from .spline import Basis, Spline, spline_integral
from .zbspline import eval_zbspline, zb_design_matrix, zb_dimension, zb_to_b

__all__ = [
    "Basis",
    "CoefficientDataset",
    "DiscreteDensity",
    "FitResult",
    "FpcaResult",
    "GridFunction",
    "InstrumentationContext",
    "KnotSequence",
    "OrthoBasis",
    "SmoothingProblem",
    "Spline",
    "Strategy",
    "active_basis",
    "bayes_inner",
    "check_rank",
    "clr",
    "clr_discrete",
    "design_matrix",
    "dyadic_inner_count",
    "dyadic_levels",
    "eval_bspline",
    "eval_zbspline",
    "fit",
    "fit_density",
    "fpca",
    "gram",
    "inv_clr",
    "l2_grid_inner",
    "l2_inner",
    "make_knots",
    "nonzero_count",
    "orthogonalize",
    "perturb",
    "power",
    "predicted_ip_count",
    "predicted_support",
    "relative_total_support",
    "sparse_fpca",
    "spline_integral",
    "zb_design_matrix",
    "zb_dimension",
    "zb_gram",
    "zb_to_b",
]

__version__ = "0.1.0"
