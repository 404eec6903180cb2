"""Brute-force reference minimiser and the three naive placement baselines."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .quadratic import intersect
from .scenario import Axis, CurveSet, Scenario, build_curves
from .solver import evaluate_sir_max

COARSE_POINTS = 10_001
REFINE_ITERS = 6
SHRINK = 10.0


@dataclass(frozen=True)
class OracleResult:
    x: float
    value: float
    grid_points: int
    refined: bool
    coarse_best: float  # best value seen on the coarse grid
    history: tuple[float, ...] = ()  # best value after each refinement round


def grid_minimize(curves: CurveSet, lo: float, hi: float, coarse_points: int = COARSE_POINTS,
                  refine_iters: int = REFINE_ITERS) -> OracleResult:
    """Uniform grid search over [lo, hi] followed by zoomed re-gridding.

    Each refinement round re-grids an interval one tenth as wide as the
    previous one, centred on (and clipped around) the incumbent best point.
    The incumbent is carried across rounds, so the best value never rises.
    """
    if coarse_points < 2:
        raise ValueError("coarse_points must be >= 2")
    if hi == lo:
        v = evaluate_sir_max(curves, float(lo))
        return OracleResult(float(lo), v, 1, False, v, (v,))
    xs = np.linspace(lo, hi, coarse_points)
    vals = evaluate_sir_max(curves, xs)
    k = int(np.argmin(vals))
    best_x, best_v = float(xs[k]), float(vals[k])
    coarse_best = best_v
    history = [best_v]
    width = hi - lo
    for _ in range(refine_iters):
        width /= SHRINK
        a = max(lo, best_x - width / 2)
        b = min(hi, best_x + width / 2)
        xs = np.linspace(a, b, coarse_points)
        vals = evaluate_sir_max(curves, xs)
        k = int(np.argmin(vals))
        if vals[k] < best_v:
            best_x, best_v = float(xs[k]), float(vals[k])
        history.append(best_v)
    return OracleResult(best_x, best_v, coarse_points * (refine_iters + 1), refine_iters > 0, coarse_best, tuple(history))


def grid_oracle(scenario: Scenario, coarse_points: int = COARSE_POINTS, refine_iters: int = REFINE_ITERS,
                axis: Axis | str = Axis.X, fixed_coordinate: float | None = None,
                bounds: tuple[float, float] | None = None) -> OracleResult:
    curves = build_curves(scenario, axis, fixed_coordinate)
    lo, hi = scenario.bounds if bounds is None else bounds
    return grid_minimize(curves, lo, hi, coarse_points, refine_iters)


def _sir_at(scenario: Scenario, x: float) -> float:
    return evaluate_sir_max(build_curves(scenario), float(x))


def baseline_chase(scenario: Scenario, uav_index: int) -> tuple[float, float]:
    """Jammer directly under relay ``uav_index`` (1-based)."""
    if not 1 <= uav_index <= scenario.n_uavs:
        raise IndexError(f"uav_index {uav_index} outside 1..{scenario.n_uavs}")
    x = scenario.uavs[uav_index - 1].x
    return x, _sir_at(scenario, x)


def baseline_random(scenario: Scenario, rng: np.random.Generator) -> tuple[float, float]:
    """Jammer uniform on [0, D]; consumes one draw from ``rng``."""
    x = float(rng.uniform(0.0, scenario.distance_D))
    return x, _sir_at(scenario, x)


def baseline_middle(scenario: Scenario) -> tuple[float, float]:
    x = scenario.distance_D / 2
    return x, _sir_at(scenario, x)


def _breakpoints(curves: CurveSet, lo: float, hi: float) -> list[float]:
    pts = {lo, hi}
    for ci, cj in combinations(curves.all_curves, 2):
        for r in intersect(ci, cj).roots:
            if lo < r < hi:
                pts.add(r)
    return sorted(pts)


def expected_sir_uniform(curves: CurveSet, lo: float, hi: float) -> float:
    """Mean of SIR_max for a jammer uniform on [lo, hi], integrated exactly.

    Between consecutive pairwise intersection roots no two curves cross, so
    SIR_max follows a single quadratic there and integrates in closed form.
    """
    if hi <= lo:
        return evaluate_sir_max(curves, float(lo))
    pts = _breakpoints(curves, lo, hi)
    all_curves = curves.all_curves
    n1 = len(curves.link1)
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        if b <= a:
            continue
        mid = 0.5 * (a + b)
        vals = [c(mid) for c in all_curves]
        i1 = min(range(n1), key=vals.__getitem__)
        i2 = min(range(n1, len(all_curves)), key=vals.__getitem__)
        c = all_curves[i1] if vals[i1] >= vals[i2] else all_curves[i2]
        ua, ub = a - c.vertex_x, b - c.vertex_x
        total += c.amplitude * ((ub ** 3 - ua ** 3) / 3.0 + c.vertex_offset * (b - a))
    return total / (hi - lo)


def baseline_random_expected(scenario: Scenario) -> tuple[float, float]:
    """Random baseline in expectation: (mean position D/2, mean SIR_max over [0, D])."""
    curves = build_curves(scenario)
    return scenario.distance_D / 2, expected_sir_uniform(curves, 0.0, scenario.distance_D)
