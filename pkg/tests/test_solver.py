import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gen import mirror, random_dualhop, random_multihop
from uavjam.quadratic import QuadraticCurve
from uavjam.scenario import Axis, CurveSet, build_curves, dualhop_preset
from uavjam.solver import (
    CandidatePoint,
    CrossLink,
    Endpoint,
    Vertex,
    WithinLink,
    candidate_slots,
    count_slots,
    enumerate_candidates,
    evaluate_sir_max,
    is_feasible,
    solve,
    solve_alternating,
    solve_dualhop,
)
from uavjam.solver import _select


def test_sir_max_symmetric_identical_links():
    c = QuadraticCurve(1.0, 50.0, 1.0)
    cs = CurveSet((c,), (c,), Axis.X, 0.0)
    assert evaluate_sir_max(cs, 50.0) == 1.0


def test_sir_max_preset_at_relay():
    s = dualhop_preset()
    cs = build_curves(s)
    sir1, sir2 = (c(50.0) for c in cs.link1)
    sir3, sir4 = (c(50.0) for c in cs.link2)
    assert evaluate_sir_max(cs, 50.0) == max(min(sir1, sir2), min(sir3, sir4))
    # SIR_1 = 4.47514 dominates SIR_3 = 0.447514 on the other link
    assert evaluate_sir_max(cs, 50.0) == pytest.approx(4.47514, rel=1e-6)


def test_sir_max_at_least_overall_min():
    rng = np.random.default_rng(0)
    for _ in range(50):
        cs = build_curves(random_multihop(rng, int(rng.integers(1, 10))))
        xs = rng.uniform(-500, 5500, 200)
        lo = np.min([c(xs) for c in cs.all_curves], axis=0)
        assert np.all(evaluate_sir_max(cs, xs) >= lo)


@pytest.mark.parametrize("n", range(1, 21))
def test_slot_count(n):
    cs = build_curves(random_multihop(np.random.default_rng(n), n))
    assert count_slots(cs) == candidate_slots(n) == 4 * n * n + 8 * n + 4
    assert len(enumerate_candidates(cs)) <= candidate_slots(n)


def test_dualhop_generic_has_at_most_14():
    rng = np.random.default_rng(1)
    for _ in range(200):
        cs = build_curves(random_dualhop(rng))
        cands = enumerate_candidates(cs)
        assert len(cands) <= 14
        assert not any(isinstance(c.provenance, CrossLink) and (c.provenance.i, c.provenance.j) == (1, 3)
                       for c in cands)


def test_symmetric_sir1_sir3_contribute_nothing():
    s = dualhop_preset(x_u=50.0, tr1_power_dbm=20.0, tr2_power_dbm=20.0)
    cands = enumerate_candidates(build_curves(s))
    assert not any(isinstance(c.provenance, CrossLink) and (c.provenance.i, c.provenance.j) == (1, 3)
                   for c in cands)


def test_candidate_provenance_layout():
    cs = build_curves(random_multihop(np.random.default_rng(4), 3))
    cands = enumerate_candidates(cs)
    vertices = [c for c in cands if isinstance(c.provenance, Vertex)]
    assert [v.provenance.curve for v in vertices] == list(range(1, 9))
    assert all(v.x == cs.curve(v.provenance.curve).vertex_x for v in vertices)
    for c in cands:
        p = c.provenance
        if isinstance(p, WithinLink):
            assert cs.link_of(p.i) == cs.link_of(p.j)
        elif isinstance(p, CrossLink):
            assert (cs.link_of(p.i), cs.link_of(p.j)) == (1, 2)


def test_vertex_at_tr2_infeasible_when_not_link_minimum():
    s = dualhop_preset(x_u=95.0, y_msi=40.0)
    cs = build_curves(s)
    sir1, sir2 = (c(100.0) for c in cs.link1)
    assert sir2 > sir1  # SIR_2 is not the link-1 minimum at x = D
    assert not is_feasible(CandidatePoint(100.0, sir2, Vertex(2)), cs)


def test_crosslink_feasible_point_equals_sir_max():
    s = dualhop_preset()
    cs = build_curves(s)
    hits = [c for c in enumerate_candidates(cs) if isinstance(c.provenance, CrossLink) and is_feasible(c, cs)]
    assert hits
    for c in hits:
        v1 = min(cv(c.x) for cv in cs.link1)
        v2 = min(cv(c.x) for cv in cs.link2)
        assert v1 == pytest.approx(v2, rel=1e-9)
        assert evaluate_sir_max(cs, c.x) == pytest.approx(c.value, rel=1e-9)


def test_endpoint_always_feasible():
    cs = build_curves(dualhop_preset())
    assert is_feasible(CandidatePoint(-1e6, 0.0, Endpoint("lower")), cs)


def test_feasible_candidates_lie_on_sir_max():
    rng = np.random.default_rng(21)
    for k in range(1000):
        s = random_dualhop(rng) if k % 2 else random_multihop(rng, int(rng.integers(2, 12)))
        cs = build_curves(s)
        for c in enumerate_candidates(cs):
            if is_feasible(c, cs):
                ref = evaluate_sir_max(cs, c.x)
                assert abs(c.value - ref) <= 1e-9 * max(ref, 1e-300)


def test_preset_solution():
    r = solve(dualhop_preset())
    assert 0.0 <= r.x_opt <= 100.0
    assert r.sir_max_opt == evaluate_sir_max(build_curves(dualhop_preset()), r.x_opt)
    assert r.sir_max_opt < 4.47514  # beats jamming straight under the relay
    assert r.candidates_total == 16
    assert r.sir_max_opt_db == pytest.approx(10 * math.log10(r.sir_max_opt))


def test_symmetric_solution_mirror_value():
    s = dualhop_preset(x_u=50.0, tr1_power_dbm=20.0, tr2_power_dbm=20.0)
    r = solve(s)
    cs = build_curves(s)
    assert evaluate_sir_max(cs, 100.0 - r.x_opt) == pytest.approx(r.sir_max_opt, rel=1e-9)


def test_solution_is_a_candidate():
    rng = np.random.default_rng(8)
    for _ in range(100):
        s = random_multihop(rng, int(rng.integers(1, 10)))
        r = solve(s)
        cs = build_curves(s)
        pts = [c.x for c in enumerate_candidates(cs)] + list(s.bounds)
        assert min(abs(p - r.x_opt) for p in pts) <= 1e-9


def test_tight_bounds_use_endpoints():
    s = dualhop_preset(jam_lower=20.0, jam_upper=40.0)
    r = solve(s)
    xs = np.linspace(20, 40, 20001)
    brute = evaluate_sir_max(build_curves(s), xs).min()
    assert r.sir_max_opt <= brute * (1 + 1e-12)
    assert 20.0 <= r.x_opt <= 40.0


def test_strict_mode_without_feasible_candidate_raises():
    # the relay at 50 m and the TRs are the only vertices; [20, 30] contains none of the feasible ones
    s = dualhop_preset(jam_lower=20.0, jam_upper=30.0)
    with pytest.raises(ValueError):
        solve(s, endpoints=False)


def test_strict_mode_matches_default_on_full_bounds():
    rng = np.random.default_rng(13)
    for _ in range(100):
        s = random_multihop(rng, int(rng.integers(1, 8)))
        assert solve(s, endpoints=False).sir_max_opt == pytest.approx(solve(s).sir_max_opt, rel=1e-12)


def test_ties_break_to_smallest_x():
    pts = [CandidatePoint(x, 1.0, Vertex(1)) for x in (80.0, 20.0, 50.0)]
    assert _select(pts, np.array([1.0, 1.0 + 1e-13, 2.0])) == 1
    assert _select(pts, np.array([1.0, 1.0 + 1e-9, 2.0])) == 0


def test_dualhop_literal_path_matches_generic():
    rng = np.random.default_rng(17)
    for _ in range(50):
        s = random_dualhop(rng)
        a, b = solve(s), solve_dualhop(s)
        assert b.x_opt == pytest.approx(a.x_opt, rel=1e-12, abs=1e-12 * s.distance_D)
        assert b.sir_max_opt == pytest.approx(a.sir_max_opt, rel=1e-12)


def test_dualhop_literal_requires_one_relay():
    with pytest.raises(ValueError):
        solve_dualhop(random_multihop(np.random.default_rng(0), 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(-30, 30))
def test_msi_power_invariance(seed, gamma_db):
    s = random_multihop(np.random.default_rng(seed), 1 + seed % 7)
    a = solve(s)
    b = solve(s.with_(msi_power_dbm=s.msi_power_dbm + gamma_db))
    gamma = 10 ** (gamma_db / 10)
    assert b.x_opt == pytest.approx(a.x_opt, abs=1e-9 * s.distance_D)
    assert b.sir_max_opt == pytest.approx(a.sir_max_opt / gamma, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_mirror_invariance(seed):
    s = random_multihop(np.random.default_rng(seed), 1 + seed % 6)
    a, b = solve(s), solve(mirror(s))
    assert b.sir_max_opt == pytest.approx(a.sir_max_opt, rel=1e-9)
    assert evaluate_sir_max(build_curves(mirror(s)), s.distance_D - a.x_opt) == pytest.approx(a.sir_max_opt, rel=1e-9)


# --- alternating refinement -------------------------------------------------


def test_alternating_single_round_is_x_solve():
    s = random_multihop(np.random.default_rng(3), 4)
    alt = solve_alternating(s, initial_y=s.y_msi, max_rounds=1)
    r = solve(s)
    assert (alt.x, alt.y, alt.sir) == (r.x_opt, s.y_msi, r.sir_max_opt)


def test_alternating_symmetric_y_stays_zero():
    s = dualhop_preset(x_u=50.0, tr1_power_dbm=20.0, tr2_power_dbm=20.0)
    alt = solve_alternating(s, initial_y=0.0, max_rounds=6)
    assert alt.y == 0.0


def test_alternating_monotone():
    rng = np.random.default_rng(5)
    for _ in range(30):
        s = random_multihop(rng, int(rng.integers(1, 8)))
        alt = solve_alternating(s, max_rounds=8)
        sirs = [h[3] for h in alt.history]
        assert all(b <= a * (1 + 1e-12) for a, b in zip(sirs, sirs[1:]))
        assert alt.sir <= solve(s).sir_max_opt * (1 + 1e-12)
        # each reported point really has that SIR
        assert evaluate_sir_max(build_curves(s, Axis.X, alt.y), alt.x) == pytest.approx(alt.sir, rel=1e-12)


def test_alternating_rejects_zero_rounds():
    with pytest.raises(ValueError):
        solve_alternating(dualhop_preset(), max_rounds=0)
