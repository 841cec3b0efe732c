"""Ground-truth path tracing by direct segment/boundary intersection.

The analytic length formulas are fast paths; whenever they disagree with
:func:`raycast` the tracer is right.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .disk import DiskStrategy
from .exceptions import NoEscapeError
from .strip import NoPivot, Strategy2, Strategy3


class Region(enum.Enum):
    STRIP = "strip"
    DISK = "disk"


@dataclass
class EscapeRealization:
    vertices: list = field(default_factory=list)
    total_length: float = 0.0
    escaped: bool = False
    exit_side: str = None

    def to_dict(self):
        return {
            "vertices": [list(map(float, v)) for v in self.vertices],
            "total_length": self.total_length,
            "escaped": self.escaped,
            "exit_side": self.exit_side,
        }


def _boundary_hit(region, px, py, dx, dy):
    """Distance along a unit direction to the boundary, and which side."""
    if region is Region.STRIP:
        if dx > 0:
            return (1.0 - px) / dx, "right"
        if dx < 0:
            return -px / dx, "left"
        return math.inf, None
    b = px * dx + py * dy
    c = 1.0 - (px * px + py * py)
    disc = b * b + c
    if disc < 0:
        disc = 0.0
    root = math.sqrt(disc)
    # pick the cancellation-free form of the positive root
    t = c / (b + root) if b > 0 else root - b
    return max(t, 0.0), "circle"


def raycast(region, start, headings=None, caps=None, directions=None):
    """Walk a piecewise-linear path until it first meets the boundary.

    Parameters
    ----------
    region : Region
    start : (x, y) point inside the closed region.
    headings : absolute heading angles, one per segment.
    caps : maximum length of each segment; the last one should be ``inf``.
    directions : alternatively, unit direction vectors, one per segment.
        These bypass the rounding of ``pi`` in pivot headings, which matters
        when a leg runs nearly parallel to a shore.

    Returns
    -------
    EscapeRealization
    """
    if directions is None:
        if headings is None:
            raise ValueError("give headings or directions")
        directions = [(math.cos(h), math.sin(h)) for h in headings]
    if caps is None:
        caps = [math.inf] * len(directions)
    if len(caps) != len(directions) or not directions:
        raise ValueError("headings and caps must have the same non-zero length")

    px, py = float(start[0]), float(start[1])
    verts = [(px, py)]
    total = 0.0
    for (dx, dy), cap in zip(directions, caps):
        t, side = _boundary_hit(region, px, py, dx, dy)
        if side is None and math.isinf(cap):
            raise NoEscapeError("unbounded segment runs parallel to both shores")
        if t <= cap:
            if t > 0:
                px, py = px + t * dx, py + t * dy
                verts.append((px, py))
                total += t
            return EscapeRealization(verts, total, True, side)
        if cap > 0:
            px, py = px + cap * dx, py + cap * dy
            verts.append((px, py))
            total += cap
    if math.isinf(caps[-1]):
        raise NoEscapeError("final unbounded segment never meets the boundary")
    return EscapeRealization(verts, total, False, None)


def strategy_to_headings(state, strat):
    """Absolute headings and caps for a strategy started from ``state = (x, theta)``.

    Each pivot by ``g`` maps heading ``h`` to ``h + g - pi``.
    """
    theta = float(state[1])
    if isinstance(strat, NoPivot):
        return [theta], [math.inf]
    if isinstance(strat, Strategy3):
        return ([theta, theta + strat.alpha - math.pi,
                 theta + strat.alpha + strat.beta - 2 * math.pi],
                [strat.r, strat.s, math.inf])
    if isinstance(strat, (Strategy2, DiskStrategy)):
        return [theta, theta + strat.alpha - math.pi], [strat.r, math.inf]
    raise TypeError(f"unsupported strategy {strat!r}")


def strategy_to_directions(state, strat):
    """Unit directions for the same legs as :func:`strategy_to_headings`.

    Uses ``exp(i(h + g - pi)) = -exp(i(h + g))`` so that no rounded ``pi``
    enters the direction vectors.
    """
    theta = float(state[1])
    if isinstance(strat, NoPivot):
        return [(math.cos(theta), math.sin(theta))], [math.inf]
    d1 = (math.cos(theta), math.sin(theta))
    ta = theta + strat.alpha
    d2 = (-math.cos(ta), -math.sin(ta))
    if isinstance(strat, Strategy3):
        tab = ta + strat.beta
        return [d1, d2, (math.cos(tab), math.sin(tab))], [strat.r, strat.s, math.inf]
    if isinstance(strat, (Strategy2, DiskStrategy)):
        return [d1, d2], [strat.r, math.inf]
    raise TypeError(f"unsupported strategy {strat!r}")


def realize(region, state, strat):
    """Trace the realization of ``strat`` from ``state = (x, theta)``."""
    dirs, caps = strategy_to_directions(state, strat)
    return raycast(region, (float(state[0]), 0.0), directions=dirs, caps=caps)
