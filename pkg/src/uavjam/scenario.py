"""Network data model and construction of the per-hop SIR curves.

Transceivers sit at ``(0, 0, 0)`` (TR_1) and ``(D, 0, 0)`` (TR_2). The N UAV
relays are ordered along the chain TR_1 -> UAV_1 -> ... -> UAV_N -> TR_2.

Link_1 (TR_1 -> TR_2) has receivers UAV_1..UAV_N, TR_2; Link_2 (TR_2 -> TR_1)
has receivers UAV_N..UAV_1, TR_1. Each receiver yields one curve in the
jammer coordinate along the chosen axis. Curves are numbered globally as
1..N+1 for Link_1 and N+2..2N+2 for Link_2.
"""

from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .channel import ChannelParams, dbm_to_linear
from .quadratic import QuadraticCurve, eval_curve

log = logging.getLogger(__name__)


class Axis(str, Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class UavRelay:
    x: float
    y: float
    h: float
    power_dbm: float

    @property
    def power_mw(self) -> float:
        return dbm_to_linear(self.power_dbm)


@dataclass(frozen=True)
class Scenario:
    distance_D: float
    uavs: tuple[UavRelay, ...]
    tr1_power_dbm: float = 30.0
    tr2_power_dbm: float = 20.0
    msi_power_dbm: float = 20.0
    y_msi: float = 0.0
    jam_lower: float = 0.0
    jam_upper: float | None = None  # None means distance_D
    channel: ChannelParams = field(default_factory=ChannelParams)

    def __post_init__(self):
        object.__setattr__(self, "uavs", tuple(self.uavs))
        if self.jam_upper is None:
            object.__setattr__(self, "jam_upper", float(self.distance_D))

    @property
    def n_uavs(self) -> int:
        return len(self.uavs)

    @property
    def bounds(self) -> tuple[float, float]:
        return self.jam_lower, self.jam_upper

    def with_(self, **changes) -> Scenario:
        return replace(self, **changes)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


def validate(scenario: Scenario) -> list[Violation]:
    """Return every violated invariant; an empty list means the scenario is usable.

    Jam bounds that do not enclose ``[0, D]`` are legal but logged, since the
    solver still handles them through endpoint candidates.
    """
    out: list[Violation] = []
    s = scenario
    nums = [s.distance_D, s.tr1_power_dbm, s.tr2_power_dbm, s.msi_power_dbm, s.y_msi, s.jam_lower, s.jam_upper]
    if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in nums):
        out.append(Violation("non-finite", "scalar fields must be finite numbers"))
        return out
    if not s.distance_D > 0:
        out.append(Violation("distance-nonpositive", f"distance_D must be > 0, got {s.distance_D}"))
    if s.n_uavs < 1:
        out.append(Violation("no-uavs", "at least one UAV relay is required"))
    if s.jam_lower > s.jam_upper:
        out.append(Violation("jam-bounds-inverted", f"jam_lower {s.jam_lower} > jam_upper {s.jam_upper}"))
    for i, u in enumerate(s.uavs, start=1):
        if not all(math.isfinite(v) for v in (u.x, u.y, u.h, u.power_dbm)):
            out.append(Violation("uav-non-finite", f"UAV_{i} has a non-finite field"))
            continue
        if not u.h > 0:
            out.append(Violation("uav-altitude-nonpositive", f"UAV_{i} altitude must be > 0, got {u.h}"))
    if out:
        return out

    for name, d2 in _hop_distances_sq(s):
        if not d2 > 0:
            out.append(Violation("zero-hop-distance", f"hop {name} has zero length"))
    if not out and (s.jam_lower > 0 or s.jam_upper < s.distance_D):
        log.warning("jam bounds [%g, %g] do not enclose [0, D=%g]", s.jam_lower, s.jam_upper, s.distance_D)
    return out


class ScenarioError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))


def check(scenario: Scenario) -> Scenario:
    bad = validate(scenario)
    if bad:
        raise ScenarioError(bad)
    return scenario


def _hop_distances_sq(s: Scenario):
    nodes = [(0.0, 0.0, 0.0)] + [(u.x, u.y, u.h) for u in s.uavs] + [(s.distance_D, 0.0, 0.0)]
    names = ["TR_1"] + [f"UAV_{i}" for i in range(1, s.n_uavs + 1)] + ["TR_2"]
    for k in range(len(nodes) - 1):
        (x0, y0, h0), (x1, y1, h1) = nodes[k], nodes[k + 1]
        yield f"{names[k]}->{names[k + 1]}", (x1 - x0) ** 2 + (y1 - y0) ** 2 + (h1 - h0) ** 2


@dataclass(frozen=True)
class CurveSet:
    link1: tuple[QuadraticCurve, ...]
    link2: tuple[QuadraticCurve, ...]
    axis: Axis
    fixed_coordinate: float

    @property
    def n_uavs(self) -> int:
        return len(self.link1) - 1

    @property
    def all_curves(self) -> tuple[QuadraticCurve, ...]:
        return self.link1 + self.link2

    def curve(self, curve_id: int) -> QuadraticCurve:
        """Curve by global 1-based id (1..N+1 Link_1, N+2..2N+2 Link_2)."""
        return self.all_curves[curve_id - 1]

    def link_of(self, curve_id: int) -> int:
        return 1 if curve_id <= len(self.link1) else 2


def _receiver_geometry(s: Scenario):
    """Per-receiver (signal strength numerator, receiver position) for both links.

    Signal strength is transmit power over path loss, up to the interference
    path-loss factor of the receiver: for UAV receivers the jammer link is
    air-to-ground (eta), for TR receivers it is ground-to-ground (mu_NLoS).
    Returns lists of (gain, rx_x, rx_y, rx_h) where ``gain`` multiplies
    the squared jammer-receiver distance to give SIR * p_MSI.
    """
    ch = s.channel
    mu_los, mu_nlos, eta = ch.mu_los, ch.mu_nlos, ch.eta
    u = s.uavs
    n = len(u)
    D = s.distance_D

    def d2(a, b):
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2

    tr1 = (0.0, 0.0, 0.0)
    tr2 = (float(D), 0.0, 0.0)
    pos = [(r.x, r.y, r.h) for r in u]
    p = [r.power_mw for r in u]
    p_tr1 = dbm_to_linear(s.tr1_power_dbm)
    p_tr2 = dbm_to_linear(s.tr2_power_dbm)

    link1 = [(p_tr1 / d2(tr1, pos[0]), *pos[0])]
    for k in range(1, n):
        link1.append((p[k - 1] * eta / (mu_los * d2(pos[k - 1], pos[k])), *pos[k]))
    link1.append((p[n - 1] * mu_nlos / (eta * d2(pos[n - 1], tr2)), *tr2))

    link2 = [(p_tr2 / d2(tr2, pos[n - 1]), *pos[n - 1])]
    for k in range(n - 1, 0, -1):
        link2.append((p[k] * eta / (mu_los * d2(pos[k], pos[k - 1])), *pos[k - 1]))
    link2.append((p[0] * mu_nlos / (eta * d2(pos[0], tr1)), *tr1))
    return link1, link2


def build_curves(scenario: Scenario, axis: Axis | str = Axis.X, fixed_coordinate: float | None = None) -> CurveSet:
    """Build the 2N+2 SIR curves along ``axis`` with the other ground coordinate fixed.

    For ``axis="x"`` the fixed coordinate defaults to ``scenario.y_msi``; for
    ``axis="y"`` it must be supplied (the jammer's x).
    """
    check(scenario)
    axis = Axis(axis)
    if fixed_coordinate is None:
        if axis is Axis.Y:
            raise ValueError("fixed_coordinate (jammer x) is required for axis='y'")
        fixed_coordinate = scenario.y_msi
    fixed = float(fixed_coordinate)
    p_msi = dbm_to_linear(scenario.msi_power_dbm)
    link1, link2 = _receiver_geometry(scenario)

    def make(gain, rx, ry, rh):
        if axis is Axis.X:
            vx, off = rx, (fixed - ry) ** 2 + rh * rh
        else:
            vx, off = ry, (fixed - rx) ** 2 + rh * rh
        return QuadraticCurve(gain / p_msi, vx, off)

    return CurveSet(
        link1=tuple(make(*g) for g in link1),
        link2=tuple(make(*g) for g in link2),
        axis=axis,
        fixed_coordinate=fixed,
    )


def direct_sir(scenario: Scenario, x_msi: float, y_msi: float) -> tuple[list[float], list[float]]:
    """Per-receiver SIRs for a ground jammer at (x_msi, y_msi), from the ratio form.

    Written out receiver by receiver as received signal power over received
    jammer power; independent of :func:`build_curves`.
    """
    ch = scenario.channel
    mu_los, mu_nlos, eta = ch.mu_los, ch.mu_nlos, ch.eta
    D = scenario.distance_D
    p_msi = dbm_to_linear(scenario.msi_power_dbm)
    nodes = [(0.0, 0.0, 0.0, dbm_to_linear(scenario.tr1_power_dbm), "ground")]
    nodes += [(u.x, u.y, u.h, u.power_mw, "air") for u in scenario.uavs]
    nodes += [(float(D), 0.0, 0.0, dbm_to_linear(scenario.tr2_power_dbm), "ground")]

    def loss(a, b):
        d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
        kinds = {a[4], b[4]}
        if kinds == {"air"}:
            factor = mu_los
        elif kinds == {"ground"}:
            factor = mu_nlos
        else:
            factor = eta
        return factor * d2

    jam = (x_msi, y_msi, 0.0, p_msi, "ground")

    def sir(tx, rx):
        return (tx[3] / loss(tx, rx)) / (jam[3] / loss(jam, rx))

    link1 = [sir(nodes[k - 1], nodes[k]) for k in range(1, len(nodes))]
    link2 = [sir(nodes[k + 1], nodes[k]) for k in range(len(nodes) - 2, -1, -1)]
    return link1, link2


def curve_values(curves: CurveSet, x: float) -> tuple[list[float], list[float]]:
    return [eval_curve(c, x) for c in curves.link1], [eval_curve(c, x) for c in curves.link2]


# ---------------------------------------------------------------------------
# presets


def dualhop_preset(x_u: float = 50.0, y_u: float = 0.0, h_u: float = 45.0, p_u_dbm: float = 20.0, **overrides) -> Scenario:
    """Dual-hop simulation setting: D = 100 m, TR powers 30/20 dBm, jammer 20 dBm."""
    base = dict(distance_D=100.0, uavs=(UavRelay(x_u, y_u, h_u, p_u_dbm),))
    base.update(overrides)
    return Scenario(**base)


# ---------------------------------------------------------------------------
# scenario files

_TOP_KEYS = {"distance_m", "tr1_power_dbm", "tr2_power_dbm", "msi_power_dbm", "y_msi_m", "jam_bounds_m", "channel", "uavs"}
_REQUIRED_TOP = {"distance_m", "uavs"}
_CHANNEL_KEYS = {"fc_hz", "c_mps", "exp", "c_los_db", "c_nlos_db", "eta_nlos_mode"}
_UAV_KEYS = {"x_m", "y_m", "h_m", "power_dbm"}


class ScenarioFileError(ValueError):
    """Malformed scenario document. ``field`` names the offending key path."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def _line_of(text: str | None, key: str) -> int | None:
    if not text:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _number(value, path: str, text: str | None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScenarioFileError(f"field '{path}' must be a finite number, got {value!r}", path, _line_of(text, path.split(".")[-1].split("[")[0]))
    return float(value)


def _reject_unknown(obj: dict, allowed: set, prefix: str, text: str | None):
    for key in obj:
        if key not in allowed:
            path = f"{prefix}{key}"
            raise ScenarioFileError(f"unknown field '{path}'", path, _line_of(text, key))


def scenario_from_dict(doc: dict, text: str | None = None) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioFileError("scenario document must be a JSON object")
    _reject_unknown(doc, _TOP_KEYS, "", text)
    missing = sorted(_REQUIRED_TOP - doc.keys())
    if missing:
        raise ScenarioFileError(f"missing required field '{missing[0]}'", missing[0])

    kw: dict = {"distance_D": _number(doc["distance_m"], "distance_m", text)}
    for key, name in (("tr1_power_dbm", "tr1_power_dbm"), ("tr2_power_dbm", "tr2_power_dbm"),
                      ("msi_power_dbm", "msi_power_dbm"), ("y_msi_m", "y_msi")):
        if key in doc:
            kw[name] = _number(doc[key], key, text)
    if "jam_bounds_m" in doc:
        jb = doc["jam_bounds_m"]
        if not isinstance(jb, list) or len(jb) != 2:
            raise ScenarioFileError("field 'jam_bounds_m' must be a [lower, upper] pair", "jam_bounds_m", _line_of(text, "jam_bounds_m"))
        kw["jam_lower"] = _number(jb[0], "jam_bounds_m", text)
        kw["jam_upper"] = _number(jb[1], "jam_bounds_m", text)

    if "channel" in doc:
        ch = doc["channel"]
        if not isinstance(ch, dict):
            raise ScenarioFileError("field 'channel' must be an object", "channel", _line_of(text, "channel"))
        _reject_unknown(ch, _CHANNEL_KEYS, "channel.", text)
        ckw = {}
        for key, name in (("fc_hz", "carrier_frequency"), ("c_mps", "light_speed"), ("exp", "path_loss_exponent"),
                          ("c_los_db", "excess_los_db"), ("c_nlos_db", "excess_nlos_db")):
            if key in ch:
                ckw[name] = _number(ch[key], f"channel.{key}", text)
        mode = ch.get("eta_nlos_mode", "equal_mu_los")
        if mode != "equal_mu_los":
            ckw["eta_nlos"] = _number(mode, "channel.eta_nlos_mode", text)
        try:
            kw["channel"] = ChannelParams(**ckw)
        except ValueError as exc:
            raise ScenarioFileError(f"field 'channel': {exc}", "channel", _line_of(text, "channel")) from None

    uavs = doc["uavs"]
    if not isinstance(uavs, list):
        raise ScenarioFileError("field 'uavs' must be a list", "uavs", _line_of(text, "uavs"))
    relays = []
    for i, u in enumerate(uavs):
        prefix = f"uavs[{i}]."
        if not isinstance(u, dict):
            raise ScenarioFileError(f"field 'uavs[{i}]' must be an object", f"uavs[{i}]", _line_of(text, "uavs"))
        _reject_unknown(u, _UAV_KEYS, prefix, text)
        missing = sorted(_UAV_KEYS - u.keys())
        if missing:
            raise ScenarioFileError(f"missing required field '{prefix}{missing[0]}'", prefix + missing[0], _line_of(text, "uavs"))
        relays.append(UavRelay(*(_number(u[k], prefix + k, text) for k in ("x_m", "y_m", "h_m", "power_dbm"))))
    kw["uavs"] = tuple(relays)
    return Scenario(**kw)


def scenario_to_dict(s: Scenario) -> dict:
    ch = s.channel
    return {
        "distance_m": s.distance_D,
        "tr1_power_dbm": s.tr1_power_dbm,
        "tr2_power_dbm": s.tr2_power_dbm,
        "msi_power_dbm": s.msi_power_dbm,
        "y_msi_m": s.y_msi,
        "jam_bounds_m": [s.jam_lower, s.jam_upper],
        "channel": {
            "fc_hz": ch.carrier_frequency,
            "c_mps": ch.light_speed,
            "exp": ch.path_loss_exponent,
            "c_los_db": ch.excess_los_db,
            "c_nlos_db": ch.excess_nlos_db,
            "eta_nlos_mode": "equal_mu_los" if ch.eta_nlos is None else ch.eta_nlos,
        },
        "uavs": [{"x_m": u.x, "y_m": u.y, "h_m": u.h, "power_dbm": u.power_dbm} for u in s.uavs],
    }


def loads_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(f"invalid JSON: {exc.msg}", None, exc.lineno) from None
    return scenario_from_dict(doc, text)


def load_scenario(path: str | Path) -> Scenario:
    return loads_scenario(Path(path).read_text(encoding="utf-8"))


def dump_scenario(s: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n", encoding="utf-8")
