"""Curves of the form ``f(x) = A * ((x - B)**2 + C)`` and their intersections.

Every per-hop SIR, viewed as a function of one jammer coordinate with the
other held fixed, has this shape: ``A`` collects powers and the fixed
transmitter distance, ``B`` is the receiver coordinate along the moving axis
and ``C`` the squared offset along the fixed axis plus the receiver altitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

DEFAULT_EPS_REL = 1e-12


@dataclass(frozen=True)
class QuadraticCurve:
    amplitude: float
    vertex_x: float
    vertex_offset: float

    def __post_init__(self):
        if not (self.amplitude > 0 and math.isfinite(self.amplitude)):
            raise ValueError(f"amplitude must be positive and finite, got {self.amplitude}")
        if not math.isfinite(self.vertex_x):
            raise ValueError(f"vertex_x must be finite, got {self.vertex_x}")
        if not (self.vertex_offset >= 0 and math.isfinite(self.vertex_offset)):
            raise ValueError(f"vertex_offset must be non-negative, got {self.vertex_offset}")

    def __call__(self, x):
        return eval_curve(self, x)

    def scaled(self, factor: float) -> QuadraticCurve:
        return QuadraticCurve(self.amplitude * factor, self.vertex_x, self.vertex_offset)


@dataclass(frozen=True)
class Intersection:
    """Outcome of intersecting two curves.

    ``kind`` is ``"none"``, ``"pair"`` or ``"coincident"``. For a tangency or
    the linear (equal amplitude) case, ``x_minus == x_plus``.
    """

    kind: Literal["none", "pair", "coincident"]
    x_minus: float | None = None
    x_plus: float | None = None

    @property
    def roots(self) -> tuple[float, ...]:
        if self.kind != "pair":
            return ()
        return (self.x_minus, self.x_plus)


NO_INTERSECTION = Intersection("none")
COINCIDENT = Intersection("coincident")


def eval_curve(curve: QuadraticCurve, x):
    """Evaluate ``A((x-B)^2 + C)``; works on scalars and numpy arrays."""
    d = x - curve.vertex_x
    return curve.amplitude * (d * d + curve.vertex_offset)


def vertex(curve: QuadraticCurve) -> tuple[float, float]:
    return curve.vertex_x, curve.amplitude * curve.vertex_offset


def _close(a: float, b: float, eps: float) -> bool:
    return abs(a - b) <= eps * (abs(a) + abs(b))


def intersect(c1: QuadraticCurve, c2: QuadraticCurve, eps_rel: float = DEFAULT_EPS_REL) -> Intersection:
    """Solve ``A((x-B)^2+C) = D((x-E)^2+F)``.

    The roots are the closed-form pair ``(AB - DE +- sqrt(Delta)) / (A - D)``
    with ``Delta = (AB-DE)^2 + (D-A)(A(B^2+C) - D(F+E^2))``. Both are computed
    in coordinates centred on ``B``, where ``Delta`` simplifies to
    ``AD(B-E)^2 - (A-D)(AC - DF)``, and the smaller-magnitude root comes from
    Vieta's product to avoid cancellation.
    """
    if not eps_rel > 0:
        raise ValueError("eps_rel must be positive")
    a_, b_, c_ = c1.amplitude, c1.vertex_x, c1.vertex_offset
    d_, e_, f_ = c2.amplitude, c2.vertex_x, c2.vertex_offset
    shift = e_ - b_  # E in centred coordinates; B becomes 0

    if abs(a_ - d_) <= eps_rel * max(a_, d_):
        if _close(b_, e_, eps_rel):
            return COINCIDENT if _close(c_, f_, eps_rel) else NO_INTERSECTION
        u = (c_ - f_ - shift * shift) / (-2.0 * shift)
        x = b_ + u
        return Intersection("pair", x, x)

    lead = a_ - d_
    half_b = -d_ * shift  # AB' - DE' with B' = 0
    const = a_ * c_ - d_ * (shift * shift + f_)
    t1 = a_ * d_ * shift * shift
    t2 = lead * (a_ * c_ - d_ * f_)
    delta = t1 - t2
    tol = eps_rel * (abs(t1) + abs(a_ * c_ * lead) + abs(d_ * f_ * lead))
    if delta < -tol:
        return NO_INTERSECTION
    if delta <= tol:
        x = b_ + half_b / lead
        return Intersection("pair", x, x)

    q = half_b + math.copysign(math.sqrt(delta), half_b)
    u1 = q / lead
    u2 = const / q
    lo, hi = sorted((b_ + u1, b_ + u2))
    return Intersection("pair", lo, hi)


def curve_arrays(curves) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack coefficients of a curve sequence into (A, B, C) arrays."""
    amp = np.array([c.amplitude for c in curves], dtype=float)
    vx = np.array([c.vertex_x for c in curves], dtype=float)
    off = np.array([c.vertex_offset for c in curves], dtype=float)
    return amp, vx, off


def eval_many(amp: np.ndarray, vx: np.ndarray, off: np.ndarray, x) -> np.ndarray:
    """Matrix of curve values, shape ``(len(amp),) + np.shape(x)``."""
    x = np.asarray(x, dtype=float)
    expand = (slice(None),) + (None,) * x.ndim
    d = x[None, ...] - vx[expand]
    return amp[expand] * (d * d + off[expand])
