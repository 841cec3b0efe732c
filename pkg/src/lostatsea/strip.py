"""Escape paths in the unit-width strip ``0 <= x <= 1``.

The swimmer starts at ``(x, 0)`` with heading ``theta`` measured from the
positive x axis. A k-segment strategy walks a first leg of length ``r``,
pivots, and so on. A pivot by angle ``g`` turns the absolute heading ``h``
into ``h + g - pi``: ``g = pi`` keeps going straight, ``g = 0`` reverses.

All functions here are vectorised over ``x`` and ``theta``.
"""
import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import DomainError, InvalidStrategyError, SingularEvaluationError

PI = np.pi
SINGULAR_EPS = 1e-12


class CaseLabel(enum.IntEnum):
    """Branch of the case taxonomy a (state, strategy) pair falls in."""

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    SUB31 = 31
    SUB32 = 32
    DISK1 = 101
    DISK2 = 102

    @property
    def title(self):
        return {
            31: "Subcase 3.1",
            32: "Subcase 3.2",
            101: "Case 1'",
            102: "Case 2'",
        }.get(int(self), f"Case {int(self)}")


class StripState(NamedTuple):
    x: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class NoPivot:
    """Never turn: the limiting ``r = inf`` strategy (a straight ray)."""


@dataclass(frozen=True)
class Strategy2:
    r: float
    alpha: float

    def __post_init__(self):
        if not (self.r >= 0 and np.isfinite(self.r)):
            raise DomainError(f"r must be finite and >= 0, got {self.r!r}")
        if not 0 <= self.alpha <= PI:
            raise DomainError(f"alpha must lie in [0, pi], got {self.alpha!r}")

    @property
    def closed_form_valid(self):
        """True when only Cases 1, 3 and 5 can occur (``r > 1`` and
        ``0 < pi/2 - alpha < arccos(1/r)``)."""
        return bool(self.r > 1 and 0 < PI / 2 - self.alpha < np.arccos(1 / self.r))


@dataclass(frozen=True)
class Strategy3:
    r: float
    alpha: float
    s: float
    beta: float

    def __post_init__(self):
        if not (self.r > 1 and np.isfinite(self.r)):
            raise DomainError(f"r must exceed 1, got {self.r!r}")
        if not 0 < PI / 2 - self.alpha < np.arccos(1 / self.r):
            raise DomainError(
                f"need 0 < pi/2 - alpha < arccos(1/r); got r={self.r!r}, alpha={self.alpha!r}")
        if not (self.s >= 0 and np.isfinite(self.s)):
            raise DomainError(f"s must be finite and >= 0, got {self.s!r}")
        if not 0 <= self.beta <= PI:
            raise DomainError(f"beta must lie in [0, pi], got {self.beta!r}")

    @property
    def first(self):
        return Strategy2(self.r, self.alpha)


def normalize_state(x, theta):
    """Fold ``theta in [-pi, 0)`` onto ``[0, pi]`` with ``(x, theta) -> (1 - x, theta + pi)``.

    The map is the reflection across the horizontal axis followed by the
    reflection across the vertical axis, which leaves every path length
    unchanged.
    """
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((x < 0) | (x > 1)) or np.any(np.isnan(x)):
        raise DomainError("x must lie in [0, 1]")
    if np.any((theta < -PI) | (theta > PI)) or np.any(np.isnan(theta)):
        raise DomainError("theta must lie in [-pi, pi]")
    flip = theta < 0
    return StripState(np.where(flip, 1 - x, x), np.where(flip, theta + PI, theta))


def _check_normalized(x, theta):
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((x < 0) | (x > 1)) or np.any((theta < 0) | (theta > PI)):
        raise DomainError("state must satisfy 0 <= x <= 1 and 0 <= theta <= pi; "
                          "use normalize_state first")
    return x, theta


def _thresholds(x, r):
    """Headings at which a first leg of length ``r`` just reaches a shore.

    Returns ``(reach_right, t_right, reach_left, t_left)``. The angles are
    only meaningful where the matching ``reach_*`` mask holds.
    """
    reach_right = x + r >= 1
    reach_left = x - r <= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        t_right = np.arccos(np.clip(np.where(r > 0, (1 - x) / r, 0.0), -1, 1))
        t_left = PI - np.arccos(np.clip(np.where(r > 0, x / r, 0.0), -1, 1))
    return reach_right, t_right, reach_left, t_left


def strip2_conditions(x, theta, strat):
    """Truth values of the five printed case conditions, stacked on axis 0."""
    x, theta = _check_normalized(x, theta)
    r, a = strat.r, strat.alpha
    rr, tr, rl, tl = _thresholds(x, r)
    not_right = (rr & (tr < theta)) | ~rr
    c1 = rr & (theta <= tr)
    c2 = not_right & (theta < PI / 2 - a)
    c3 = (((rr & rl & (tr < theta) & (theta < tl))
           | (~rr & rl & (theta < tl))
           | (rr & ~rl & (tr < theta))
           | (~rr & ~rl))
          & (PI / 2 - a <= theta) & (theta <= 3 * PI / 2 - a))
    c4 = ((rl & (theta < tl)) | ~rl) & (3 * PI / 2 - a < theta)
    c5 = rl & (tl <= theta)
    return np.stack(np.broadcast_arrays(c1, c2, c3, c4, c5))


def classify_strip2(x, theta, strat):
    """Case label (1..5) for a normalised strip state under a 2-segment strategy.

    Ties on the measure-zero boundaries go to the lowest-numbered case.
    """
    conds = strip2_conditions(x, theta, strat)
    hit = conds.any(axis=0)
    if not np.all(hit):
        raise AssertionError("case conditions are not exhaustive at some state")
    labels = np.argmax(conds, axis=0) + 1
    return labels if labels.ndim else CaseLabel(int(labels))


def _guard(den, mask, eps):
    bad = mask & (np.abs(den) < eps)
    if np.any(bad):
        raise SingularEvaluationError(
            f"{int(np.count_nonzero(bad))} state(s) have a heading parallel to the shore")


def strip2_path_length(x, theta, strat, eps=SINGULAR_EPS):
    """Escape length under a 2-segment strategy ``(r, alpha)``.

    Raises SingularEvaluationError where the relevant cosine is below ``eps``.
    """
    x, theta = _check_normalized(x, theta)
    labels = np.asarray(classify_strip2(x, theta, strat))
    r, a = strat.r, strat.alpha
    ct = np.cos(theta)
    cta = np.cos(theta + a)
    straight = (labels == 1) | (labels == 5)
    _guard(ct, straight, eps)
    _guard(cta, ~straight, eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.select(
            [labels == 1, (labels == 2) | (labels == 4), labels == 3, labels == 5],
            [(1 - x) / ct,
             r + (x + r * ct) / cta,
             r + (x - 1 + r * ct) / cta,
             -x / ct])
    return out if out.ndim else float(out)


def straight_path_length(x, theta, eps=SINGULAR_EPS):
    """Length of a path that never turns: ``(1-x)/cos`` rightwards, ``-x/cos`` leftwards."""
    x, theta = _check_normalized(x, theta)
    ct = np.cos(theta)
    _guard(ct, np.ones_like(ct, dtype=bool), eps)
    out = np.where(theta < PI / 2, (1 - x) / ct, -x / ct)
    return out if out.ndim else float(out)


def theta0(x, r, s, alpha):
    """Heading at which the end of the second leg lands exactly on the right shore.

    Implements ``arcsin(s sin a / k) + arccos((1 - x) / k)`` with
    ``k = sqrt(r^2 + s^2 - 2 r s cos a)``. The arcsin branch is only the
    correct phase when ``r >= s cos(alpha)``; outside that a DomainError is
    raised, as it is when ``(1 - x) / k`` leaves ``[-1, 1]``.
    """
    x = np.asarray(x, dtype=float)
    kappa = np.sqrt(r * r + s * s - 2 * r * s * np.cos(alpha))
    if kappa == 0:
        raise DomainError("kappa = 0: the second leg returns to the start")
    if r - s * np.cos(alpha) < 0:
        raise DomainError("r < s cos(alpha): arcsin branch does not give the phase")
    arg = (1 - x) / kappa
    if np.any(np.abs(arg) > 1):
        raise DomainError("(1 - x)/kappa outside [-1, 1]: the second leg never "
                          "reaches the right shore")
    out = np.arcsin(np.clip(s * np.sin(alpha) / kappa, -1, 1)) + np.arccos(arg)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ThreeSegIntermediates:
    theta0: np.ndarray
    kappa: float
    rho: float
    u1: float
    u2: float
    v1: float
    v2: float
    xi1: np.ndarray
    xi2: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray


def three_seg_intermediates(x, strat):
    """Quantities the 3-segment objective is written in, vectorised over ``x``."""
    r, a, s, b = strat.r, strat.alpha, strat.s, strat.beta
    x = np.asarray(x, dtype=float)
    kappa = float(np.sqrt(r * r + s * s - 2 * r * s * np.cos(a)))
    t0 = np.asarray(theta0(x, r, s, a))
    rho = float(np.arcsin(np.clip(s * np.sin(a) / kappa, -1, 1)))
    acr = np.arccos(np.clip((1 - x) / kappa, -1, 1))
    return ThreeSegIntermediates(
        theta0=t0,
        kappa=kappa,
        rho=rho,
        u1=r * np.sin(a),
        u2=s * np.sin(b) - r * np.sin(a + b),
        v1=r * (1 + np.cos(a)),
        v2=r + s + s * np.cos(b) - r * np.cos(a + b),
        xi1=a + np.arccos(np.clip((1 - x) / r, -1, 1)),
        xi2=a + b + rho + acr,
        eta1=a + rho + acr,
        eta2=a + b + PI - np.arccos(np.clip(x / r, -1, 1)),
    )


def _theta0_general(x, strat):
    """Root of ``1 - x - r cos t + s cos(t + a) = 0`` on the rising branch.

    Uses the atan2 phase so it is defined for every strategy; NaN where the
    end of the second leg never reaches the right shore.
    """
    r, a, s = strat.r, strat.alpha, strat.s
    kappa = np.hypot(r - s * np.cos(a), s * np.sin(a))
    phase = np.arctan2(s * np.sin(a), r - s * np.cos(a))
    with np.errstate(invalid="ignore", divide="ignore"):
        return phase + np.arccos(np.where((1 - x) <= kappa, (1 - x) / kappa, np.nan))


def classify_strip3(x, theta, strat):
    """Label among Case1, Sub31, Sub32, Case5 under a valid 3-segment strategy."""
    x, theta = _check_normalized(x, theta)
    _, tr, _, tl = _thresholds(x, strat.r)
    t0 = _theta0_general(x, strat)
    # no root: the second leg never lands on the right shore, Sub31 is empty
    t0 = np.where(np.isnan(t0), tr, t0)
    labels = np.select(
        [theta <= tr, theta >= tl, theta <= t0],
        [CaseLabel.CASE1, CaseLabel.CASE5, CaseLabel.SUB31],
        CaseLabel.SUB32)
    return labels if labels.ndim else CaseLabel(int(labels))


def sub32_valid(x, theta, strat):
    """Whether a Subcase 3.2 state really ends on the right shore.

    The second leg must not cross the left shore and the third leg must head
    rightwards. Only meaningful on states labelled SUB32.
    """
    r, a, s, b = strat.r, strat.alpha, strat.s, strat.beta
    x2 = x + r * np.cos(theta) - s * np.cos(theta + a)
    return (x2 >= 0) & (np.cos(theta + a + b) > 0)


def strip3_path_length(x, theta, strat, eps=SINGULAR_EPS):
    """Escape length under a 3-segment strategy ``(r, alpha, s, beta)``.

    Raises InvalidStrategyError when a Subcase 3.2 state does not exit
    through the right shore, and SingularEvaluationError on vanishing
    denominators.
    """
    x, theta = _check_normalized(x, theta)
    labels = np.asarray(classify_strip3(x, theta, strat))
    r, a, s, b = strat.r, strat.alpha, strat.s, strat.beta
    ct = np.cos(theta)
    cta = np.cos(theta + a)
    ctab = np.cos(theta + a + b)
    sub32 = labels == CaseLabel.SUB32
    if np.any(sub32 & ~sub32_valid(x, theta, strat)):
        raise InvalidStrategyError(
            "third leg does not exit through the right shore for some states "
            f"(r={r}, alpha={a}, s={s}, beta={b})")
    _guard(ct, (labels == CaseLabel.CASE1) | (labels == CaseLabel.CASE5), eps)
    _guard(cta, labels == CaseLabel.SUB31, eps)
    _guard(ctab, sub32, eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.select(
            [labels == CaseLabel.CASE1, labels == CaseLabel.SUB31, sub32],
            [(1 - x) / ct,
             r + (x - 1 + r * ct) / cta,
             r + s + (1 - x + s * cta - r * ct) / ctab],
            -x / ct)
    return out if out.ndim else float(out)
