"""Zalgaller's heuristic escape path and its 2- and 3-segment fits."""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InvalidStrategyError
from .objectives import strip2_expected, strip3_expected
from .strip import Strategy2, Strategy3

VERTICES = {
    "A": (0.0, 0.0),
    "B": (0.814, 0.0),
    "C": (0.8460, 0.0005),
    "D": (1.3017, 0.0151),
    "E": (0.814, 1.0),
}
ARC_RADIUS = 1.0
ARC_ANGLE = 0.032

# Reported values the fit is compared against.
ZALGALLER_ESTIMATE = 0.9523
OPTIMUM_2SEG = 0.8869669056
OPTIMUM_3SEG = 0.8835534788


@dataclass(frozen=True)
class ZalgallerPath:
    vertices: dict
    arc_center: tuple
    arc_radius: float
    arc_angle: float
    polyline: np.ndarray

    @property
    def length(self):
        return float(np.sum(np.hypot(*np.diff(self.polyline, axis=0).T)))


def build_zalgaller(max_step=1e-3):
    """The path A-B, arc B-C about E, then C-D-E, with the arc densified."""
    ex, ey = VERTICES["E"]
    n = max(1, math.ceil(ARC_ANGLE / max_step))
    angles = -np.pi / 2 + np.linspace(0.0, ARC_ANGLE, n + 1)
    arc = np.column_stack([ex + ARC_RADIUS * np.cos(angles), ey + ARC_RADIUS * np.sin(angles)])
    # the printed C is rounded; the arc ends at the printed point
    arc[-1] = VERTICES["C"]
    pts = np.vstack([VERTICES["A"], arc, VERTICES["D"], VERTICES["E"]])
    return ZalgallerPath(dict(VERTICES), (ex, ey), ARC_RADIUS, ARC_ANGLE, pts)


def _turn(u, v):
    """Signed angle from direction u to direction v, in (-pi, pi]."""
    return math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])


def _as_polyline(path):
    pts = path.polyline if isinstance(path, ZalgallerPath) else np.asarray(path, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("need a polyline of at least two planar points")
    return pts


def fit_two_segment(path):
    """Chord pair through the interior vertex farthest from the start.

    ``r`` is the length of the first chord and ``alpha = pi - |turn|`` at the
    pivot vertex. A polyline without interior vertices gives ``alpha = pi``
    and ``r`` equal to its length.
    """
    pts = _as_polyline(path)
    start, end = pts[0], pts[-1]
    if len(pts) == 2:
        return Strategy2(float(np.hypot(*(end - start))), math.pi)
    dist = np.hypot(*(pts[1:-1] - start).T)
    pivot = pts[1 + int(np.argmax(dist))]
    r = float(np.hypot(*(pivot - start)))
    turn = _turn(pivot - start, end - pivot)
    return Strategy2(r, math.pi - abs(turn))


def _segment_distance(p, a, b):
    ab = b - a
    t = np.clip(((p - a) @ ab) / (ab @ ab), 0.0, 1.0)
    return np.hypot(*(p - (a + t[:, None] * ab)).T)


def fit_three_segment(path):
    """Three chords through the pair of vertices minimising the worst deviation.

    Returns ``(r, alpha, s, beta)`` as a tuple; it is not wrapped in a
    Strategy3 because the fit need not satisfy that type's domain.
    """
    pts = _as_polyline(path)
    if len(pts) < 4:
        raise ValueError("need at least two interior vertices")
    best = None
    for i, j in itertools.combinations(range(1, len(pts) - 1), 2):
        p, q = pts[i], pts[j]
        dev = max(_segment_distance(pts[:i + 1], pts[0], p).max(),
                  _segment_distance(pts[i:j + 1], p, q).max(),
                  _segment_distance(pts[j:], q, pts[-1]).max())
        if best is None or dev < best[0]:
            best = (dev, i, j)
    _, i, j = best
    a0, p, q, e = pts[0], pts[i], pts[j], pts[-1]
    r = float(np.hypot(*(p - a0)))
    s = float(np.hypot(*(q - p)))
    t1 = _turn(p - a0, q - p)
    t2 = _turn(q - p, e - q)
    # fold both turns to one side when they agree in sign
    return r, math.pi - abs(t1), s, math.pi - abs(t2) if t1 * t2 >= 0 else math.pi + abs(t2)


def evaluate_zalgaller():
    """Fit Zalgaller's path and score the fits with the strip objectives."""
    path = build_zalgaller()
    two = fit_two_segment(path)
    expected2 = strip2_expected(two).value
    r3, a3, s3, b3 = fit_three_segment(path)
    try:
        expected3 = strip3_expected(Strategy3(r3, a3, s3, b3)).value
    except (DomainError, InvalidStrategyError):
        expected3 = None
    return {
        "r": two.r,
        "alpha": two.alpha,
        "alpha_deg": math.degrees(two.alpha),
        "expected": expected2,
        "three_segment_fit": {"r": r3, "alpha": a3, "s": s3, "beta": b3,
                              "expected": expected3},
        "zalgaller_estimate": ZALGALLER_ESTIMATE,
        "optimum_2seg": OPTIMUM_2SEG,
        "optimum_3seg": OPTIMUM_3SEG,
        "dominated": bool(expected2 > OPTIMUM_2SEG > OPTIMUM_3SEG),
    }
