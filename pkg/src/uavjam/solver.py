"""Optimal jammer placement along one axis by critical-point enumeration.

``SIR_max(x) = max(min(link-1 curves), min(link-2 curves))`` is a maximum of
minima of convex quadratics. Its global minimum over an interval lies at a
curve vertex, at an intersection of two curves, or at an interval endpoint,
so inspecting that finite set (and keeping only points that actually lie on
``SIR_max``) gives the exact optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Union

import numpy as np

from .channel import dbm_to_linear, sir_to_db
from .quadratic import QuadraticCurve, curve_arrays, eval_many, intersect
from .scenario import Axis, CurveSet, Scenario, build_curves, check

EPS_FEAS = 1e-9
TIE_REL = 1e-12


@dataclass(frozen=True)
class Vertex:
    curve: int


@dataclass(frozen=True)
class WithinLink:
    i: int
    j: int
    root: Literal["-", "+"]


@dataclass(frozen=True)
class CrossLink:
    i: int  # link-1 curve
    j: int  # link-2 curve
    root: Literal["-", "+"]


@dataclass(frozen=True)
class Endpoint:
    side: Literal["lower", "upper"]


Provenance = Union[Vertex, WithinLink, CrossLink, Endpoint]


@dataclass(frozen=True)
class CandidatePoint:
    """A point of the candidate set.

    ``value`` is the value of the originating curve at ``x`` (for endpoints,
    SIR_max itself). For a feasible candidate it coincides with SIR_max(x).
    """

    x: float
    value: float
    provenance: Provenance


@dataclass(frozen=True)
class PlacementResult:
    x_opt: float
    sir_max_opt: float
    candidates_total: int
    candidates_realized: int
    candidates_feasible: int
    feasible_list: tuple[CandidatePoint, ...] = field(repr=False)
    axis: Axis = Axis.X
    fixed_coordinate: float = 0.0

    @property
    def sir_max_opt_db(self) -> float:
        return sir_to_db(self.sir_max_opt)


def candidate_slots(n_uavs: int) -> int:
    """Number of candidate slots for N relays: 4N^2 + 8N + 4."""
    return 4 * n_uavs * n_uavs + 8 * n_uavs + 4


def _arrays(curves: CurveSet):
    return curve_arrays(curves.link1), curve_arrays(curves.link2)


def link_sirs(curves: CurveSet, x):
    (a1, a2) = _arrays(curves)
    return eval_many(*a1, x).min(axis=0), eval_many(*a2, x).min(axis=0)


def evaluate_sir_max(curves: CurveSet, x):
    """max(min over link-1 curves, min over link-2 curves) at ``x`` (scalar or array)."""
    v1, v2 = link_sirs(curves, x)
    out = np.maximum(v1, v2)
    return float(out) if np.ndim(x) == 0 else out


def _pair_points(ci: QuadraticCurve, cj: QuadraticCurve, make):
    res = intersect(ci, cj)
    if res.kind != "pair":
        return []
    return [CandidatePoint(res.x_minus, float(ci(res.x_minus)), make("-")),
            CandidatePoint(res.x_plus, float(ci(res.x_plus)), make("+"))]


def enumerate_candidates(curves: CurveSet) -> list[CandidatePoint]:
    """Vertices of all curves, then within-link and cross-link intersection roots.

    Pairs without a real intersection, or that coincide as functions, add
    nothing; a coincident pair's vertices are already present.
    """
    n1 = len(curves.link1)
    ids1 = range(1, n1 + 1)
    ids2 = range(n1 + 1, 2 * n1 + 1)
    out = []
    for cid, c in enumerate(curves.all_curves, start=1):
        out.append(CandidatePoint(c.vertex_x, c.amplitude * c.vertex_offset, Vertex(cid)))
    for ids in (ids1, ids2):
        for i, j in combinations(ids, 2):
            out += _pair_points(curves.curve(i), curves.curve(j), lambda r, i=i, j=j: WithinLink(i, j, r))
    for i in ids1:
        for j in ids2:
            out += _pair_points(curves.curve(i), curves.curve(j), lambda r, i=i, j=j: CrossLink(i, j, r))
    return out


def count_slots(curves: CurveSet) -> int:
    """Candidate slots actually inspected by :func:`enumerate_candidates`."""
    n_curves = len(curves.all_curves)
    n1, n2 = len(curves.link1), len(curves.link2)
    within = n1 * (n1 - 1) // 2 + n2 * (n2 - 1) // 2
    return n_curves + 2 * within + 2 * n1 * n2


def _feasible_mask(cands: list[CandidatePoint], curves: CurveSet, eps: float) -> np.ndarray:
    if not cands:
        return np.zeros(0, dtype=bool)
    xs = np.array([c.x for c in cands])
    vals = eval_many(*curve_arrays(curves.all_curves), xs)  # (2N+2, k)
    n1 = len(curves.link1)
    m1 = vals[:n1].min(axis=0)
    m2 = vals[n1:].min(axis=0)
    mask = np.ones(len(cands), dtype=bool)
    for k, c in enumerate(cands):
        p = c.provenance
        if isinstance(p, Endpoint):
            continue
        if isinstance(p, CrossLink):
            vi, vj = vals[p.i - 1, k], vals[p.j - 1, k]
            mask[k] = vi <= m1[k] * (1 + eps) and vj <= m2[k] * (1 + eps)
            continue
        if isinstance(p, Vertex):
            own = vals[p.curve - 1, k]
            link = curves.link_of(p.curve)
        else:
            own = min(vals[p.i - 1, k], vals[p.j - 1, k])
            link = curves.link_of(p.i)
        mine, other = (m1[k], m2[k]) if link == 1 else (m2[k], m1[k])
        mask[k] = own <= mine * (1 + eps) and own >= other - eps * max(own, other)
    return mask


def is_feasible(candidate: CandidatePoint, curves: CurveSet, eps_feas: float = EPS_FEAS) -> bool:
    """Does the candidate lie on SIR_max?

    Vertex / within-link points must sit on their own link's minimum and that
    minimum must dominate the other link. Cross-link points must have each
    curve attaining its link's minimum.
    """
    return bool(_feasible_mask([candidate], curves, eps_feas)[0])


def _select(points: list[CandidatePoint], sirs: np.ndarray) -> int:
    best = float(sirs.min())
    tied = [k for k in range(len(points)) if sirs[k] <= best * (1 + TIE_REL)]
    return min(tied, key=lambda k: (points[k].x, sirs[k]))


def solve(
    scenario: Scenario,
    axis: Axis | str = Axis.X,
    fixed_coordinate: float | None = None,
    bounds: tuple[float, float] | None = None,
    endpoints: bool = True,
    eps_feas: float = EPS_FEAS,
) -> PlacementResult:
    """Minimise SIR_max along ``axis`` inside ``bounds`` (default: the scenario's jam bounds).

    ``endpoints=False`` reproduces the bare candidate scheme with no interval
    endpoints; it raises if no feasible candidate falls inside the bounds.
    """
    curves = build_curves(scenario, axis, fixed_coordinate)
    lo, hi = scenario.bounds if bounds is None else bounds
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    cands = enumerate_candidates(curves)
    mask = _feasible_mask(cands, curves, eps_feas)
    feasible = [c for c, ok in zip(cands, mask) if ok and lo <= c.x <= hi]
    if endpoints:
        for side, x in (("lower", lo), ("upper", hi)):
            feasible.append(CandidatePoint(float(x), evaluate_sir_max(curves, float(x)), Endpoint(side)))
    if not feasible:
        raise ValueError("no feasible candidate inside the jam bounds; enable endpoint candidates")
    sirs = evaluate_sir_max(curves, np.array([c.x for c in feasible]))
    k = _select(feasible, sirs)
    return PlacementResult(
        x_opt=feasible[k].x,
        sir_max_opt=float(sirs[k]),
        candidates_total=count_slots(curves),
        candidates_realized=len(cands),
        candidates_feasible=len(feasible),
        feasible_list=tuple(feasible),
        axis=curves.axis,
        fixed_coordinate=curves.fixed_coordinate,
    )


# ---------------------------------------------------------------------------
# dual-hop special case, written out receiver by receiver


def _dualhop_sirs(s: Scenario, x: float) -> tuple[float, float, float, float]:
    u = s.uavs[0]
    D, y = s.distance_D, s.y_msi
    ch = s.channel
    ratio = ch.eta / ch.mu_nlos
    p1, p2 = dbm_to_linear(s.tr1_power_dbm), dbm_to_linear(s.tr2_power_dbm)
    pm, pu = dbm_to_linear(s.msi_power_dbm), u.power_mw
    near1 = u.x ** 2 + u.y ** 2 + u.h ** 2
    near2 = (D - u.x) ** 2 + u.y ** 2 + u.h ** 2
    jam_u = (u.x - x) ** 2 + (y - u.y) ** 2 + u.h ** 2
    sir1 = p1 * jam_u / (pm * near1)
    sir2 = pu * (y * y + (D - x) ** 2) / (pm * near2 * ratio)
    sir3 = p2 * jam_u / (pm * near2)
    sir4 = pu * (y * y + x * x) / (pm * near1 * ratio)
    return sir1, sir2, sir3, sir4


def solve_dualhop(scenario: Scenario, endpoints: bool = True, eps_feas: float = EPS_FEAS) -> PlacementResult:
    """Single-relay placement following the four-curve procedure step by step.

    Independent of :func:`build_curves`: the curve coefficients are written
    directly in terms of the relay geometry (powers shared by every curve,
    like the jammer power, are dropped from the coefficients since they do
    not move any intersection).
    """
    s = check(scenario)
    if s.n_uavs != 1:
        raise ValueError("solve_dualhop needs exactly one relay")
    u = s.uavs[0]
    D, y = s.distance_D, s.y_msi
    ch = s.channel
    ratio = ch.eta / ch.mu_nlos
    p1, p2, pu = dbm_to_linear(s.tr1_power_dbm), dbm_to_linear(s.tr2_power_dbm), u.power_mw
    near1 = u.x ** 2 + u.y ** 2 + u.h ** 2
    near2 = (D - u.x) ** 2 + u.y ** 2 + u.h ** 2
    off_u = (y - u.y) ** 2 + u.h ** 2
    q1 = QuadraticCurve(p1 / near1, u.x, off_u)
    q2 = QuadraticCurve(pu / (near2 * ratio), D, y * y)
    q3 = QuadraticCurve(p2 / near2, u.x, off_u)
    q4 = QuadraticCurve(pu / (near1 * ratio), 0.0, y * y)

    def close_min(val, m):
        return val <= m * (1 + eps_feas)

    def dominates(val, m):
        return val >= m - eps_feas * max(val, m)

    found: list[CandidatePoint] = []
    for i, xv in ((1, u.x), (2, D)):
        s_ = _dualhop_sirs(s, xv)
        own = s_[i - 1]
        if close_min(own, min(s_[0], s_[1])) and dominates(own, min(s_[2], s_[3])):
            found.append(CandidatePoint(xv, own, Vertex(i)))
    for i, xv in ((3, u.x), (4, 0.0)):
        s_ = _dualhop_sirs(s, xv)
        own = s_[i - 1]
        if close_min(own, min(s_[2], s_[3])) and dominates(own, min(s_[0], s_[1])):
            found.append(CandidatePoint(xv, own, Vertex(i)))

    for (i, j, qa, qb, own_idx, other) in ((1, 2, q1, q2, 0, (2, 3)), (3, 4, q3, q4, 2, (0, 1))):
        res = intersect(qa, qb)
        for sign, xr in zip("-+", res.roots):
            s_ = _dualhop_sirs(s, xr)
            if dominates(s_[own_idx], min(s_[other[0]], s_[other[1]])):
                found.append(CandidatePoint(xr, s_[own_idx], WithinLink(i, j, sign)))

    pairs = ((1, 4, q1, q4), (2, 3, q2, q3), (2, 4, q2, q4))
    for i, j, qa, qb in pairs:
        res = intersect(qa, qb)
        for sign, xr in zip("-+", res.roots):
            s_ = _dualhop_sirs(s, xr)
            if close_min(s_[i - 1], min(s_[0], s_[1])) and close_min(s_[j - 1], min(s_[2], s_[3])):
                found.append(CandidatePoint(xr, s_[i - 1], CrossLink(i, j, sign)))

    lo, hi = s.bounds
    found = [c for c in found if lo <= c.x <= hi]
    if endpoints:
        for side, xe in (("lower", lo), ("upper", hi)):
            s_ = _dualhop_sirs(s, xe)
            found.append(CandidatePoint(float(xe), max(min(s_[:2]), min(s_[2:])), Endpoint(side)))
    if not found:
        raise ValueError("no feasible candidate inside the jam bounds; enable endpoint candidates")
    vals = np.array([c.value for c in found])
    k = _select(found, vals)
    x_opt = found[k].x
    s_ = _dualhop_sirs(s, x_opt)
    return PlacementResult(
        x_opt=x_opt,
        sir_max_opt=max(min(s_[:2]), min(s_[2:])),
        candidates_total=candidate_slots(1),
        candidates_realized=4 + sum(len(intersect(a, b).roots) for a, b in
                                    ((q1, q2), (q3, q4), (q1, q3), (q1, q4), (q2, q3), (q2, q4))),
        candidates_feasible=len(found),
        feasible_list=tuple(found),
        axis=Axis.X,
        fixed_coordinate=y,
    )


# ---------------------------------------------------------------------------
# coordinate-wise refinement over (x, y)


@dataclass(frozen=True)
class AlternatingResult:
    x: float
    y: float
    sir: float
    history: tuple[tuple[str, float, float, float], ...]  # (axis, x, y, sir) per half-round


def default_y_bounds(scenario: Scenario) -> tuple[float, float]:
    w = max(abs(scenario.jam_lower), abs(scenario.jam_upper))
    return -w, w


def solve_alternating(
    scenario: Scenario,
    initial_y: float | None = None,
    max_rounds: int = 20,
    tol: float = 1e-12,
    y_bounds: tuple[float, float] | None = None,
    endpoints: bool = True,
) -> AlternatingResult:
    """Alternate exact 1-D solves: x with y fixed, then y with x fixed, and so on.

    Each half-round counts as one round, so ``max_rounds=1`` is a single
    solve over x. Stops early once a round improves SIR_max by less than
    ``tol`` (relative). SIR_max never increases since each solve includes the
    current coordinate in its search interval.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    ylo, yhi = default_y_bounds(scenario) if y_bounds is None else y_bounds
    y = scenario.y_msi if initial_y is None else float(initial_y)
    y = min(max(y, ylo), yhi)
    x = None
    sir = math.inf
    history = []
    for rnd in range(max_rounds):
        if rnd % 2 == 0:
            res = solve(scenario, Axis.X, y, endpoints=endpoints)
            x = res.x_opt
            step_axis = "x"
        else:
            res = solve(scenario, Axis.Y, x, bounds=(ylo, yhi), endpoints=endpoints)
            y = res.x_opt
            step_axis = "y"
        prev, sir = sir, res.sir_max_opt
        history.append((step_axis, x, y, sir))
        if rnd > 0 and prev - sir <= tol * prev:
            break
    return AlternatingResult(x, y, sir, tuple(history))
