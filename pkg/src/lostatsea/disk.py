"""Escape paths in the unit disk.

The swimmer starts at ``(x, 0)``, ``0 <= x <= 1``, with heading
``theta in [-pi, pi]``, walks ``r``, pivots by ``alpha`` (same convention as
the strip: ``alpha = pi`` continues straight) and walks to the circle.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import DomainError
from .strip import CaseLabel, PI

CLAMP_TOL = 1e-12


class DiskState(NamedTuple):
    x: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class DiskStrategy:
    r: float
    alpha: float

    def __post_init__(self):
        if not 0 <= self.r <= 2:
            raise DomainError(f"r must lie in [0, 2], got {self.r!r}")
        if not 0 <= self.alpha <= PI:
            raise DomainError(f"alpha must lie in [0, pi], got {self.alpha!r}")


@dataclass(frozen=True)
class DiskGeometry:
    phi: np.ndarray
    psi: np.ndarray
    y: np.ndarray
    omega: np.ndarray
    q: np.ndarray
    s: np.ndarray


def _clamped(v, what):
    v = np.asarray(v, dtype=float)
    if np.any(np.abs(v) > 1 + CLAMP_TOL):
        raise DomainError(f"{what} argument outside [-1, 1] beyond tolerance")
    return np.clip(v, -1.0, 1.0)


def _check_state(x, theta):
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((x < 0) | (x > 1)) or np.any(np.isnan(x)):
        raise DomainError("x must lie in [0, 1]")
    if np.any((theta < -PI) | (theta > PI)) or np.any(np.isnan(theta)):
        raise DomainError("theta must lie in [-pi, pi]")
    return x, theta


def disk_phi(x, r):
    """Half-width of the heading fan that reaches the circle within distance ``r``."""
    x = np.asarray(x, dtype=float)
    if r <= 0 or np.any(x <= 0):
        raise DomainError("disk_phi needs x > 0 and r > 0")
    if np.any(x < abs(r - 1)):
        raise DomainError("phi exists only for x >= |r - 1|")
    out = np.arccos(_clamped((1 - x * x - r * r) / (2 * x * r), "phi"))
    return out if out.ndim else float(out)


def disk_psi(x, r):
    """``arccos(-r / x)``: where the auxiliary angle omega passes pi/2."""
    x = np.asarray(x, dtype=float)
    if r < 0 or np.any(x <= 0) or np.any(r > x):
        raise DomainError("disk_psi needs 0 <= r <= x and x > 0")
    out = np.arccos(_clamped(-r / x, "psi"))
    return out if out.ndim else float(out)


def straight_length(x, theta):
    """Distance from ``(x, 0)`` to the circle along heading ``theta``."""
    x, theta = _check_state(x, theta)
    out = -x * np.cos(theta) + np.sqrt(np.maximum(1 - x * x * np.sin(theta) ** 2, 0.0))
    return out if out.ndim else float(out)


def disk_classify(x, theta, strat):
    """CaseLabel.DISK1 when the circle is reached within the first leg, else DISK2."""
    x, theta = _check_state(x, theta)
    r = strat.r
    if r == 0:
        labels = np.full(np.broadcast(x, theta).shape, int(CaseLabel.DISK2))
    else:
        x_, theta_ = np.broadcast_arrays(x, theta)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            cosphi = (1 - x_ * x_ - r * r) / (2 * x_ * r)
        phi = np.arccos(np.clip(np.nan_to_num(cosphi, nan=2.0), -1, 1))
        fan = (x_ >= abs(r - 1)) & (x_ > 0) & (np.abs(theta_) <= phi)
        # at the centre every heading escapes after exactly 1
        centre = (x_ == 0) & (r >= 1)
        case1 = fan | (x_ < r - 1) | centre
        labels = np.where(case1, int(CaseLabel.DISK1), int(CaseLabel.DISK2))
    return labels if labels.ndim else CaseLabel(int(labels))


def disk_geometry(x, theta, strat):
    """All auxiliary quantities of the second leg, vectorised.

    ``phi`` and ``psi`` are NaN where they do not exist; ``omega`` follows the
    two-branch rule, with the ``theta = +-psi`` boundary on the first branch.
    """
    x, theta = _check_state(x, theta)
    x, theta = np.broadcast_arrays(x, theta)
    r, a = strat.r, strat.alpha
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cosphi = (1 - x * x - r * r) / (2 * x * r)
        phi = np.where((x >= abs(r - 1)) & (x > 0) & (r > 0),
                       np.arccos(np.clip(cosphi, -1, 1)), np.nan)
        psi = np.where((x >= r) & (x > 0), np.arccos(np.clip(-r / x, -1, 1)), np.nan)
    # y^2 - (x sin theta)^2 = (x cos theta + r)^2, so arcsin(x sin theta / y) is an
    # atan2 without the cancellation that the printed form suffers near y = 0
    along = x * np.cos(theta) + r
    across = x * np.sin(theta)
    y = np.hypot(across, along)
    base = np.arctan2(across, np.abs(along))
    outer = (x >= r) & ((theta < -psi) | (psi < theta))
    omega = np.where(outer, PI - base, base)
    q = -x * np.cos(theta) + np.sqrt(np.maximum(1 - x * x * np.sin(theta) ** 2, 0.0))
    sw = np.sin(a + omega)
    # s is undefined when the first leg already left the disk (Case 1')
    inside = y <= 1 + CLAMP_TOL
    disc = np.maximum(1 - y * y * sw * sw, 0.0)
    s = np.where(inside, y * np.cos(a + omega) + np.sqrt(disc), np.nan)
    return DiskGeometry(phi=phi, psi=psi, y=y, omega=omega, q=q, s=s)


def disk_path_length(x, theta, strat):
    """Escape length: ``q`` in Case 1', ``r + s`` in Case 2'."""
    labels = np.asarray(disk_classify(x, theta, strat))
    g = disk_geometry(x, theta, strat)
    out = np.where(labels == CaseLabel.DISK1, g.q, strat.r + g.s)
    return out if out.ndim else float(out)
