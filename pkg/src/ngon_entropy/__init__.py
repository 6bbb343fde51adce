"""Regular polygon theories, perfect distinguishability and the entropy of mixing."""
from .distinguish import (
    EdgeSegment,
    Witness,
    closed_form_pair,
    is_distinguishable,
    lp_distinguishable,
    max_distinguishable_size,
)
from .entropy import (
    ConsistencyReport,
    Decomposition,
    EntropyExpr,
    Verdict,
    closed_form_S_A_first,
    closed_form_S_A_second,
    construct_omega_A,
    construct_omega_P,
    construct_omega_Q,
    construct_omega_R,
    entropy_disk,
    entropy_of_decomposition,
    entropy_trit,
    verify_theorem,
)
from .geometry import barycentric_triangle, chord_intersection, convex_combine, inner, shannon_entropy
from .lp import FeasibilityResult, LinearProgram, solve_feasibility
from .theory import (
    INFINITE,
    EffectVector,
    Measurement,
    PolygonSpec,
    StateVector,
    contains_effect,
    contains_state,
    evaluate,
    pure_effect,
    pure_effects,
    pure_state,
    radius,
    unit_effect,
)

__version__ = "0.1.0"
