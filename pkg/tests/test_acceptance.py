"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import numpy as np
import pytest

from gen import mirror, random_dualhop, random_multihop
from uavjam.experiments import BASELINES, RealizationSpec, rows_to_csv, run_dualhop_sweep, run_multihop_realizations
from uavjam.oracle import baseline_chase, baseline_middle, baseline_random, grid_oracle
from uavjam.quadratic import QuadraticCurve, intersect
from uavjam.scenario import UavRelay, build_curves
from uavjam.solver import candidate_slots, count_slots, enumerate_candidates, evaluate_sir_max, solve, solve_dualhop

pytestmark = pytest.mark.acceptance

REPORTED_BAND = (65.0, 97.0)  # reported range of mean reductions, for manual comparison


def _oracle_scenarios():
    rng = np.random.default_rng(20240601)
    out = [random_dualhop(rng) for _ in range(500)]
    out += [random_multihop(rng, int(rng.integers(2, 21))) for _ in range(200)]
    return out


@pytest.fixture(scope="module")
def oracle_scenarios():
    return _oracle_scenarios()


def test_c1_oracle_equivalence(oracle_scenarios, report):
    worst, worst_k = 0.0, -1
    for k, s in enumerate(oracle_scenarios):
        r = solve(s)
        o = grid_oracle(s, coarse_points=10_001, refine_iters=6)
        gap = abs(o.value - r.sir_max_opt) / r.sir_max_opt
        if gap > worst:
            worst, worst_k = gap, k
    ok = worst <= 1e-6
    report("C1 oracle equivalence (500 dual-hop + 200 multi-hop, rel 1e-6)", ok,
           f"worst relative gap {worst:.3e} (scenario {worst_k})")
    assert ok


def test_c2_candidate_count(report):
    rng = np.random.default_rng(2)
    slots_ok = all(
        count_slots(build_curves(random_multihop(rng, n))) == candidate_slots(n) == 4 * n * n + 8 * n + 4
        for n in range(1, 21)
    )
    most = max(len(enumerate_candidates(build_curves(random_dualhop(rng)))) for _ in range(500))
    ok = slots_ok and most <= 14
    report("C2 candidate count 4N^2+8N+4 (N=1..20), <= 14 realized for N=1", ok,
           f"slot formula {'holds' if slots_ok else 'BROKEN'}; max realized for N=1 over 500 draws: {most}")
    assert ok


def test_c3_baseline_dominance(oracle_scenarios, report):
    rng = np.random.default_rng(3)
    bad = 0
    for s in oracle_scenarios:
        opt = solve(s).sir_max_opt
        chase = baseline_chase(s, int(rng.integers(1, s.n_uavs + 1)))[1]
        for v in (chase, baseline_random(s, rng)[1], baseline_middle(s)[1]):
            bad += opt > v * (1 + 1e-12)
    for row in run_dualhop_sweep():
        bad += sum(row.sir_opt > row.baselines[n][1] * (1 + 1e-12) for n in BASELINES)
    ok = bad == 0
    report("C3 baseline dominance (criterion-1 scenarios + dual-hop sweep)", ok, f"{bad} violations")
    assert ok


def test_c4_intersection_round_trip(report):
    rng = np.random.default_rng(4)
    n = 100_000
    amp = 10 ** rng.uniform(-6, 2, (n, 2))
    vx = rng.uniform(-5000, 5000, (n, 2))
    off = np.where(rng.random((n, 2)) < 0.2, 0.0, rng.uniform(0, 1e4, (n, 2)))
    worst = 0.0
    nones = []
    for k in range(n):
        c1 = QuadraticCurve(amp[k, 0], vx[k, 0], off[k, 0])
        c2 = QuadraticCurve(amp[k, 1], vx[k, 1], off[k, 1])
        r = intersect(c1, c2)
        if r.kind == "none":
            nones.append(k)
        for x in r.roots:
            f1, f2 = c1(x), c2(x)
            scale = max(f1, f2)
            if scale > 0:
                worst = max(worst, abs(f1 - f2) / scale)
    # a pair reported as non-intersecting must keep one sign over a dense grid spanning both vertices
    crossings = 0
    idx = np.array(nones)
    t = np.linspace(-1.0, 2.0, 4001)
    for chunk in np.array_split(idx, max(1, len(idx) // 2000)):
        lo = vx[chunk].min(axis=1)[:, None]
        hi = vx[chunk].max(axis=1)[:, None]
        span = np.maximum(hi - lo, 100.0)
        xs = lo + t[None, :] * span
        d = (amp[chunk, :1] * ((xs - vx[chunk, :1]) ** 2 + off[chunk, :1])
             - amp[chunk, 1:] * ((xs - vx[chunk, 1:]) ** 2 + off[chunk, 1:]))
        crossings += int(np.sum(np.any(d > 0, axis=1) & np.any(d < 0, axis=1)))
    ok = worst <= 1e-9 and crossings == 0
    report("C4 intersection round trip (1e5 pairs, rel 1e-9)", ok,
           f"worst residual {worst:.3e}; {len(nones)} no-intersection pairs, {crossings} sign changes on grid")
    assert ok


def _scale_tx(s, g_db):
    uavs = tuple(UavRelay(u.x, u.y, u.h, u.power_dbm + g_db) for u in s.uavs)
    return s.with_(uavs=uavs, tr1_power_dbm=s.tr1_power_dbm + g_db, tr2_power_dbm=s.tr2_power_dbm + g_db)


def test_c5_invariances(report):
    rng = np.random.default_rng(5)
    worst = {"msi": 0.0, "tx": 0.0, "mirror": 0.0}
    for k in range(300):
        s = random_dualhop(rng) if k % 3 == 0 else random_multihop(rng, int(rng.integers(2, 15)))
        D = s.distance_D
        base = solve(s)
        g_db = float(rng.uniform(-20, 20))
        g = 10 ** (g_db / 10)
        m = solve(s.with_(msi_power_dbm=s.msi_power_dbm + g_db))
        t = solve(_scale_tx(s, g_db))
        worst["msi"] = max(worst["msi"], abs(m.sir_max_opt * g / base.sir_max_opt - 1), abs(m.x_opt - base.x_opt) / D)
        worst["tx"] = max(worst["tx"], abs(t.sir_max_opt / g / base.sir_max_opt - 1), abs(t.x_opt - base.x_opt) / D)
        ms = mirror(s)
        r = solve(ms)
        at_mirror = evaluate_sir_max(build_curves(ms), D - base.x_opt)
        worst["mirror"] = max(worst["mirror"], abs(r.sir_max_opt / base.sir_max_opt - 1),
                              abs(at_mirror / base.sir_max_opt - 1))
    ok = max(worst.values()) <= 1e-9
    report("C5 invariance suite (MSI power, transmit power, mirror; 1e-9)", ok,
           ", ".join(f"{k} {v:.2e}" for k, v in worst.items()))
    assert ok


def test_c6a_dualhop_sweep(report):
    rows = run_dualhop_sweep()
    gaps, chase_best = [], 0
    for r in rows:
        best = min(BASELINES, key=lambda n: r.baselines[n][1])
        chase_best += best == "chase"
        gaps.append(10 * np.log10(r.baselines[best][1] / r.sir_opt))
    ok = len(rows) == 17 and min(gaps) > 0 and chase_best == 17
    report("C6a dual-hop sweep: positive gap and chasing best at all 17 points", ok,
           f"gap {min(gaps):.2f}..{max(gaps):.2f} dB (reported 3.1..10.8 dB); chasing best at {chase_best}/17")
    assert ok


@pytest.fixture(scope="module")
def fig4_means():
    means = {}
    for n in (5, 10, 15, 20):
        rows = run_multihop_realizations(RealizationSpec(n_uavs=n, count=300), jobs=4)
        means[n] = {b: float(np.mean([r.reduction_pct(b) for r in rows])) for b in BASELINES}
    return means


def _table(means):
    return "; ".join(f"N={n}: " + " ".join(f"{b} {v:.1f}%" for b, v in m.items()) for n, m in means.items())


def test_c6b_multihop_trend(fig4_means, report):
    ns = sorted(fig4_means)
    col = {b: [fig4_means[n][b] for n in ns] for b in BASELINES}
    chase_dec = all(b < a for a, b in zip(col["chase"], col["chase"][1:]))
    others_inc = all(all(b > a for a, b in zip(col[name], col[name][1:])) for name in ("random", "middle"))
    ok = chase_dec and others_inc
    report("C6b multi-hop trend over N (chase decreasing, random/middle increasing)", ok, _table(fig4_means))
    assert ok


def test_c6c_mean_reductions_in_range(fig4_means, report):
    vals = [v for m in fig4_means.values() for v in m.values()]
    ok = all(0.0 < v < 100.0 for v in vals)
    inside = sum(REPORTED_BAND[0] <= v <= REPORTED_BAND[1] for v in vals)
    report("C6c mean reductions in (0%, 100%)", ok,
           f"range {min(vals):.1f}..{max(vals):.1f}%; {inside}/{len(vals)} inside reported band "
           f"{REPORTED_BAND[0]:.0f}-{REPORTED_BAND[1]:.0f}%")
    assert ok


def test_c7_dualhop_consistency(report):
    rng = np.random.default_rng(7)
    worst_x = worst_v = 0.0
    for _ in range(200):
        s = random_dualhop(rng)
        a, b = solve(s), solve_dualhop(s)
        worst_x = max(worst_x, abs(a.x_opt - b.x_opt) / max(abs(a.x_opt), s.distance_D))
        worst_v = max(worst_v, abs(a.sir_max_opt - b.sir_max_opt) / a.sir_max_opt)
    ok = worst_x <= 1e-12 and worst_v <= 1e-12
    report("C7 generic vs dual-hop path on 200 N=1 scenarios (rel 1e-12)", ok,
           f"worst x {worst_x:.2e}, worst SIR_max {worst_v:.2e}")
    assert ok


def test_c8_determinism(report):
    spec = RealizationSpec(n_uavs=20, count=20, master_seed=123)
    first = rows_to_csv(run_multihop_realizations(spec))
    again = rows_to_csv(run_multihop_realizations(spec))
    par = rows_to_csv(run_multihop_realizations(spec, jobs=4))
    ok = first == again == par
    report("C8 byte-identical CSV (repeat, serial vs parallel)", ok, f"{len(first)} bytes")
    assert ok
