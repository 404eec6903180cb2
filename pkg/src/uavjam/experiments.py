"""Simulation harness: dual-hop relay sweep and random multi-hop realizations.

Percentage reductions are taken on linear SIR:
``100 * (baseline - optimal) / baseline``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import sir_to_db
from .oracle import baseline_chase, baseline_middle, baseline_random, baseline_random_expected
from .scenario import Scenario, UavRelay, dualhop_preset
from .solver import solve

BASELINES = ("chase", "random", "middle")


@dataclass(frozen=True)
class RealizationSpec:
    n_uavs: int = 20
    distance_D: float = 5000.0
    x_range: tuple[float, float] = (0.0, 5000.0)
    h_range: tuple[float, float] = (45.0, 65.0)
    y_range: tuple[float, float] = (-10.0, 10.0)
    power_range: tuple[float, float] = (20.0, 25.0)  # dBm
    count: int = 20
    master_seed: int = 0
    y_msi: float = 0.0
    tr1_power_dbm: float = 30.0
    tr2_power_dbm: float = 20.0
    msi_power_dbm: float = 20.0

    def __post_init__(self):
        if self.n_uavs < 1:
            raise ValueError("n_uavs must be >= 1")
        if self.count < 0:
            raise ValueError("count must be >= 0")
        for name in ("x_range", "h_range", "y_range", "power_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is inverted: {lo} > {hi}")
        if self.h_range[0] <= 0:
            raise ValueError("altitudes must be positive")


@dataclass
class ExperimentRow:
    ident: dict
    x_opt: float
    sir_opt: float
    baselines: dict = field(default_factory=dict)  # name -> (x, sir linear)

    def reduction_pct(self, name: str) -> float:
        return reduction_pct(self.baselines[name][1], self.sir_opt)


def reduction_pct(baseline: float, optimal: float) -> float:
    if baseline <= 0:
        return 0.0
    pct = 100.0 * (baseline - optimal) / baseline
    # baseline sitting exactly on the optimum can come out a hair negative
    if -1e-7 < pct < 0:
        pct = 0.0
    return pct


def _rng(*key: int) -> np.random.Generator:
    return np.random.default_rng([int(k) for k in key])


# ---------------------------------------------------------------------------
# dual-hop sweep


def sweep_points(start: float = 10.0, stop: float = 90.0, step: float = 5.0) -> list[float]:
    if not step > 0:
        raise ValueError("step must be > 0")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(n)]


def run_dualhop_sweep(step: float = 5.0, seed: int = 0, random_draws: int = 0, start: float = 10.0,
                      stop: float = 90.0, **preset_overrides) -> list[ExperimentRow]:
    """One row per relay position x_u in [start, stop].

    ``random_draws == 0`` scores the random baseline by its exact expectation
    over a uniform jammer on [0, D]; ``k > 0`` averages ``k`` seeded draws
    (the stream for sweep point i is keyed by ``(seed, i)``).
    """
    rows = []
    for i, xu in enumerate(sweep_points(start, stop, step)):
        s = dualhop_preset(x_u=xu, **preset_overrides)
        res = solve(s)
        base = {"chase": baseline_chase(s, 1), "middle": baseline_middle(s)}
        if random_draws == 0:
            base["random"] = baseline_random_expected(s)
        else:
            rng = _rng(seed, i)
            draws = [baseline_random(s, rng) for _ in range(random_draws)]
            base["random"] = (float(np.mean([d[0] for d in draws])), float(np.mean([d[1] for d in draws])))
        rows.append(ExperimentRow({"x_u": xu, "seed": seed}, res.x_opt, res.sir_max_opt, base))
    return rows


# ---------------------------------------------------------------------------
# multi-hop realizations


def sample_realization(spec: RealizationSpec, index: int) -> tuple[Scenario, np.random.Generator]:
    """Draw one network; returns the scenario and its stream for the baselines.

    The stream is keyed by ``(master_seed, n_uavs, index)`` so realizations are
    independent of execution order. UAV x-coordinates are sorted into chain order.
    """
    rng = _rng(spec.master_seed, spec.n_uavs, index)
    n = spec.n_uavs
    xs = np.sort(rng.uniform(*spec.x_range, n))
    hs = rng.uniform(*spec.h_range, n)
    ys = rng.uniform(*spec.y_range, n)
    ps = rng.uniform(*spec.power_range, n)
    uavs = tuple(UavRelay(float(x), float(y), float(h), float(p)) for x, y, h, p in zip(xs, ys, hs, ps))
    s = Scenario(
        distance_D=spec.distance_D, uavs=uavs, tr1_power_dbm=spec.tr1_power_dbm,
        tr2_power_dbm=spec.tr2_power_dbm, msi_power_dbm=spec.msi_power_dbm, y_msi=spec.y_msi,
    )
    return s, rng


def run_realization(spec: RealizationSpec, index: int) -> ExperimentRow:
    s, rng = sample_realization(spec, index)
    res = solve(s)
    chase_idx = int(rng.integers(1, spec.n_uavs + 1))
    base = {
        "chase": baseline_chase(s, chase_idx),
        "random": baseline_random(s, rng),
        "middle": baseline_middle(s),
    }
    ident = {"n_uavs": spec.n_uavs, "realization": index, "seed": spec.master_seed, "chase_index": chase_idx}
    return ExperimentRow(ident, res.x_opt, res.sir_max_opt, base)


def _run_one(args):
    return run_realization(*args)


def run_multihop_realizations(spec: RealizationSpec, jobs: int = 1) -> list[ExperimentRow]:
    tasks = [(spec, i) for i in range(spec.count)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_run_one(t) for t in tasks]


# ---------------------------------------------------------------------------
# CSV


def _fmt(v: float, digits: int) -> str:
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {v} in CSV output")
    return f"{v:.{digits}g}"


def _db(v: float) -> str:
    return _fmt(sir_to_db(v), 6)


def row_columns(ident_keys: list[str]) -> list[str]:
    cols = list(ident_keys) + ["x_opt", "sir_opt_db"]
    for name in BASELINES:
        cols += [f"{name}_x", f"{name}_sir_db", f"{name}_reduction_pct"]
    return cols + ["best_baseline", "gap_best_db"]


def format_row(row: ExperimentRow) -> list[str]:
    out = [str(v) if isinstance(v, int) else _fmt(float(v), 12) for v in row.ident.values()]
    out += [_fmt(row.x_opt, 12), _db(row.sir_opt)]
    for name in BASELINES:
        x, sir = row.baselines[name]
        out += [_fmt(x, 12), _db(sir), _fmt(row.reduction_pct(name), 12)]
    best = min(BASELINES, key=lambda n: row.baselines[n][1])
    gap = sir_to_db(row.baselines[best][1]) - sir_to_db(row.sir_opt)
    out += [best, _fmt(gap, 6)]
    return out


def rows_to_csv(rows: list[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(row_columns(list(rows[0].ident)))
        for r in rows:
            w.writerow(format_row(r))
    return buf.getvalue()


def summarize(csv_text: str, group_by: str | None = None) -> list[dict]:
    """Mean reduction per baseline (and mean dB gap), computed from the emitted CSV values."""
    reader = list(csv.DictReader(io.StringIO(csv_text)))
    groups: dict = {}
    for r in reader:
        groups.setdefault(r[group_by] if group_by else "all", []).append(r)
    out = []
    for key, rs in groups.items():
        entry = {"group": key, "rows": len(rs)}
        for name in BASELINES:
            entry[f"mean_{name}_reduction_pct"] = float(np.mean([float(r[f"{name}_reduction_pct"]) for r in rs]))
        entry["mean_gap_best_db"] = float(np.mean([float(r["gap_best_db"]) for r in rs]))
        out.append(entry)
    return out


def summary_to_csv(summary: list[dict]) -> str:
    buf = io.StringIO()
    if summary:
        w = csv.DictWriter(buf, fieldnames=list(summary[0]), lineterminator="\n")
        w.writeheader()
        for e in summary:
            w.writerow({k: (_fmt(v, 12) if isinstance(v, float) else v) for k, v in e.items()})
    return buf.getvalue()
