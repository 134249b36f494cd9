"""Shape-adjustable blending curves with monotonicity-preserving interpolation.

The kernel enhances any admissible blending system with an auxiliary function
and a shape weight sigma, keeping endpoint interpolation, nonnegativity and
the exact partition of unity while exposing a continuous slider between the
endpoint chord (sigma = 0) and the original system (sigma = 1).  On top of the
enhanced bases sit Bezier-like curve evaluation and C1/C2 monotone
interpolation schemes with closed-form feasible solutions.
"""

from .errors import (
    CurveCraftError,
    DomainError,
    InfeasibleParameterError,
    InvalidParameterError,
    SchemaError,
)
from .report import PropertyCheck, PropertyReport
from .blending import (
    BlendingSystem,
    bernstein,
    p_bezier,
    lambda_mu,
    yan_cubic,
    evaluate_all as blending_evaluate_all,
    derivative_all as blending_derivative_all,
    verify_blending_properties,
)
from .auxiliary import (
    AuxiliaryFunction,
    cubic,
    quintic,
    bernstein_tail,
    trig,
    expo_rational,
    pseudo_psi,
    validate_auxiliary,
)
from .basis import (
    EnhancedBasis,
    build,
    evaluate_all,
    derivative_all,
    collocation_matrix,
    collocation_rank,
    verify_theorem1,
)
from .curves import (
    ControlPolygon,
    ParametricCurve,
    evaluate_curve,
    hodograph,
    sample_curve,
    polygon_length,
    curve_length,
    convex_combination_residual,
    point_path,
    sigma_path_residual,
    monotone_combination_min_slope,
    tangent_cone_slack,
)
from .interpolation import (
    MonotoneDataset,
    random_monotone_dataset,
    ConstraintViolation,
    C1Solution,
    C2Solution,
    c1_s_bound,
    c2_s_bound,
    c2_zeta_eta_bound,
    c1_feasible_solution,
    c2_appendix_solution,
    c2_remark_solution,
    c1_constraint_check,
    c2_constraint_check,
    PiecewiseCurve,
    c1_interpolant,
    c2_interpolant,
    function_values,
    evaluate_as_function,
    sample_interpolant,
    continuity_report,
    ErrorProfile,
    error_profile,
)
from .datasets import demo_dataset, demo_reference

__version__ = "0.1.0"

__all__ = [
    "CurveCraftError",
    "DomainError",
    "InfeasibleParameterError",
    "InvalidParameterError",
    "SchemaError",
    "PropertyCheck",
    "PropertyReport",
    "BlendingSystem",
    "bernstein",
    "p_bezier",
    "lambda_mu",
    "yan_cubic",
    "blending_evaluate_all",
    "blending_derivative_all",
    "verify_blending_properties",
    "AuxiliaryFunction",
    "cubic",
    "quintic",
    "bernstein_tail",
    "trig",
    "expo_rational",
    "pseudo_psi",
    "validate_auxiliary",
    "EnhancedBasis",
    "build",
    "evaluate_all",
    "derivative_all",
    "collocation_matrix",
    "collocation_rank",
    "verify_theorem1",
    "ControlPolygon",
    "ParametricCurve",
    "evaluate_curve",
    "hodograph",
    "sample_curve",
    "polygon_length",
    "curve_length",
    "convex_combination_residual",
    "point_path",
    "sigma_path_residual",
    "monotone_combination_min_slope",
    "tangent_cone_slack",
    "MonotoneDataset",
    "random_monotone_dataset",
    "ConstraintViolation",
    "C1Solution",
    "C2Solution",
    "c1_s_bound",
    "c2_s_bound",
    "c2_zeta_eta_bound",
    "c1_feasible_solution",
    "c2_appendix_solution",
    "c2_remark_solution",
    "c1_constraint_check",
    "c2_constraint_check",
    "PiecewiseCurve",
    "c1_interpolant",
    "c2_interpolant",
    "function_values",
    "evaluate_as_function",
    "sample_interpolant",
    "continuity_report",
    "ErrorProfile",
    "error_profile",
    "demo_dataset",
    "demo_reference",
    "__version__",
]
