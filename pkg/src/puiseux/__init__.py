"""Term-by-term Puiseux series solutions of polynomial systems.

Exact rational arithmetic throughout: candidate first-term weights come from
the generator-level tropical prevariety, coefficients from lex Groebner
elimination with rational root extraction, and every emitted truncation
carries a residual-order certificate.
"""

from .expansion import (
    Branch,
    BranchBudgetExceeded,
    DeadBranch,
    ExpandOptions,
    ExpandResult,
    MonotonicityError,
    SeriesSolution,
    StepData,
    TraceStep,
    defining_data,
    denominator_lcm,
    expand,
    monomials_of,
    recenter,
    series_polys,
    starting_data,
    verify_residual,
)
from .lpoly import (
    LPoly,
    Term,
    active_set,
    at_x_one,
    initial_form,
    ramify,
    set_y_zero,
    shift_y,
    substitute_y,
    term_value,
    weighted_order,
)
from .problem import ProblemError, ProblemSpec, parse_problem, render_poly
from .solver import (
    BudgetExceeded,
    TorusSolutionSet,
    rational_roots,
    reduced_groebner,
    torus_solutions,
)
from .tropical import CandidateScan, EtaCandidate, candidate_etas, is_prevariety_point
from .values import INF, NotInImage, Rat, Val, WeightMatrix

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BranchBudgetExceeded",
    "BudgetExceeded",
    "CandidateScan",
    "DeadBranch",
    "EtaCandidate",
    "ExpandOptions",
    "ExpandResult",
    "INF",
    "LPoly",
    "MonotonicityError",
    "NotInImage",
    "ProblemError",
    "ProblemSpec",
    "Rat",
    "SeriesSolution",
    "StepData",
    "Term",
    "TorusSolutionSet",
    "TraceStep",
    "Val",
    "WeightMatrix",
    "active_set",
    "at_x_one",
    "candidate_etas",
    "defining_data",
    "denominator_lcm",
    "expand",
    "initial_form",
    "is_prevariety_point",
    "monomials_of",
    "parse_problem",
    "ramify",
    "rational_roots",
    "recenter",
    "reduced_groebner",
    "render_poly",
    "series_polys",
    "set_y_zero",
    "shift_y",
    "starting_data",
    "substitute_y",
    "term_value",
    "torus_solutions",
    "verify_residual",
    "weighted_order",
]
