"""Optimal ground jammer placement against two-way UAV relay chains."""

from .channel import ChannelParams, dbm_to_linear, mu_factor, sir_to_db
from .quadratic import Intersection, QuadraticCurve, intersect
from .scenario import Axis, CurveSet, Scenario, UavRelay, build_curves, dualhop_preset, load_scenario, validate
from .solver import (
    CandidatePoint,
    PlacementResult,
    enumerate_candidates,
    evaluate_sir_max,
    is_feasible,
    solve,
    solve_alternating,
    solve_dualhop,
)

__all__ = [
    "Axis", "CandidatePoint", "ChannelParams", "CurveSet", "Intersection", "PlacementResult", "QuadraticCurve",
    "Scenario", "UavRelay", "build_curves", "dbm_to_linear", "dualhop_preset", "enumerate_candidates",
    "evaluate_sir_max", "intersect", "is_feasible", "load_scenario", "mu_factor", "sir_to_db", "solve",
    "solve_alternating", "solve_dualhop", "validate",
]
