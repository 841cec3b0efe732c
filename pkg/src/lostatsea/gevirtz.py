"""Lower-bound machinery for nearly straight escape curves in the unit disk.

A curve starts at the origin and is parametrised by arclength, with heading
``phi(s)`` piecewise linear in ``s`` (constant past the last knot). For a
start point ``w`` in the disk the swimmer follows ``w + gamma(s)``; by the
symmetry of the disk the escape time is the first ``s`` with
``|gamma(s) - z| = 1`` for ``z = -w``.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from .montecarlo import McEstimate, _chunks
from .numerics import QuadratureSpec, integrate_with_error

BOUND = 8 / (3 * math.pi)
ARC_SPEC = QuadratureSpec(abs_tol=1e-11, rel_tol=1e-13)


class DisjointnessError(ValueError):
    """The arc family overlaps, so the arc formula for A(gamma) does not apply."""


@dataclass(frozen=True)
class TurningCurve:
    knots_s: tuple
    knots_phi: tuple
    phi_max: float = 0.4

    def __post_init__(self):
        s = np.asarray(self.knots_s, dtype=float)
        p = np.asarray(self.knots_phi, dtype=float)
        if s.ndim != 1 or s.shape != p.shape or s.size < 1:
            raise ValueError("knots_s and knots_phi must be equal-length sequences")
        if s[0] != 0 or p[0] != 0:
            raise ValueError("curve must start at s = 0 with phi = 0")
        if np.any(np.diff(s) <= 0):
            raise ValueError("knots_s must be strictly increasing")
        if not 0 <= self.phi_max < math.pi / 2:
            raise ValueError("phi_max must lie in [0, pi/2)")
        if np.any(np.abs(p) > self.phi_max + 1e-15):
            raise ValueError("|phi| exceeds phi_max")

    @classmethod
    def straight(cls):
        return cls((0.0,), (0.0,), 0.0)

    @classmethod
    def constant_curvature(cls, k, phi_max=0.4):
        """``phi(s) = k s`` until it reaches ``phi_max``, straight afterwards."""
        if k == 0:
            return cls((0.0,), (0.0,), phi_max)
        return cls((0.0, phi_max / abs(k)), (0.0, math.copysign(phi_max, k)), phi_max)

    @classmethod
    def from_text(cls, text, phi_max=None):
        """Parse ``s phi`` knot pairs, one per line; ``#`` starts a comment.

        An optional line ``phi_max <value>`` sets the heading bound, which
        otherwise defaults to the largest ``|phi|`` (at least 0.4).
        """
        ss, ps = [], []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if parts[0] == "phi_max":
                phi_max = float(parts[1])
                continue
            if len(parts) != 2:
                raise ValueError(f"bad knot line: {raw!r}")
            ss.append(float(parts[0]))
            ps.append(float(parts[1]))
        if phi_max is None:
            phi_max = max([0.4] + [abs(p) for p in ps])
        return cls(tuple(ss), tuple(ps), phi_max)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.from_text(fh.read())

    def phi(self, s):
        s = np.asarray(s, dtype=float)
        return np.interp(s, self.knots_s, self.knots_phi)


class CurveFrame:
    """A traced curve: ``gamma``, ``lam = |gamma|``, its argument, and ``s_star``."""

    def __init__(self, curve, s_budget=50.0):
        self.curve = curve
        ks = np.asarray(curve.knots_s, dtype=float)
        kp = np.asarray(curve.knots_phi, dtype=float)
        self._ks, self._kp = ks, kp
        # gamma at each knot, exactly, from the closed form of each linear piece
        g = [0j]
        for j in range(len(ks) - 1):
            g.append(g[-1] + self._piece(kp[j], kp[j + 1], ks[j + 1] - ks[j], ks[j + 1] - ks[j]))
        self._kg = np.array(g)
        self.s_star = self._find_s_star(s_budget)

    @staticmethod
    def _piece(p0, p1, length, t):
        """Integral of ``exp(i phi)`` over the first ``t`` of a linear piece."""
        half = 0.5 * (p1 - p0) / length * t
        return t * np.exp(1j * (p0 + half)) * np.sinc(half / np.pi)

    def gamma(self, s):
        s = np.asarray(s, dtype=float)
        ks, kp = self._ks, self._kp
        j = np.clip(np.searchsorted(ks, s, side="right") - 1, 0, len(ks) - 1)
        t = s - ks[j]
        last = j == len(ks) - 1
        jn = np.minimum(j + 1, len(ks) - 1)
        length = np.where(last, 1.0, ks[jn] - ks[j])
        p0 = kp[j]
        p1 = np.where(last, kp[j], kp[jn])
        return self._kg[j] + self._piece(p0, p1, length, t)

    def phi(self, s):
        return self.curve.phi(s)

    def lam(self, s):
        return np.abs(self.gamma(s))

    def arg(self, s):
        s = np.asarray(s, dtype=float)
        g = self.gamma(s)
        # at s = 0 the argument is the limit of the chord direction, phi(0) = 0
        return np.where(s > 0, np.angle(g), self.phi(s))

    def _find_s_star(self, budget):
        hi = 2.0
        while self.lam(hi) < 2:
            hi *= 1.5
            if hi > budget:
                raise ValueError(f"|gamma(s)| stays below 2 for s <= {budget}")
        lo = 0.0
        return brentq(lambda s: float(self.lam(s)) - 2.0, lo, hi, xtol=1e-14, rtol=1e-15)

    @cached_property
    def grid(self):
        return np.linspace(0.0, self.s_star, 4001)

    def lam_increasing(self):
        """Sampled check that ``s -> |gamma(s)|`` is strictly increasing up to s*."""
        lam = self.lam(self.grid)
        return bool(np.all(np.diff(lam) > 0))


def trace_curve(curve, s_budget=50.0):
    return CurveFrame(curve, s_budget)


def _frame(curve_or_frame):
    return curve_or_frame if isinstance(curve_or_frame, CurveFrame) else trace_curve(curve_or_frame)


def arcs_disjoint(curve, n_probe=100_000, seed=0):
    """Probe pairs of unit circles centred on the curve for crossings inside the disk.

    Probabilistic: ``n_probe`` random pairs ``s1 < s2`` in ``(0, s*]`` are
    tested. True when none of their intersection points lies strictly inside
    the unit disk.
    """
    fr = _frame(curve)
    rng = np.random.default_rng(seed)
    s = np.sort(rng.uniform(0.0, fr.s_star, (n_probe, 2)), axis=1)
    c1, c2 = fr.gamma(s[:, 0]), fr.gamma(s[:, 1])
    d = np.abs(c2 - c1)
    meet = (d > 0) & (d < 2)
    c1, c2, d = c1[meet], c2[meet], d[meet]
    mid = 0.5 * (c1 + c2)
    h = np.sqrt(1 - (d / 2) ** 2)
    normal = 1j * (c2 - c1) / d
    inside = (np.abs(mid + h * normal) < 1 - 1e-12) | (np.abs(mid - h * normal) < 1 - 1e-12)
    return not bool(np.any(inside))


def a_gamma_arc(curve, spec=ARC_SPEC, check=True, n_probe=100_000):
    """Mean escape length from the arc formula (flat curves only).

    Integrates ``(2/pi) s sqrt(1 - (|gamma|/2)^2) cos(phi - arg gamma)`` over
    ``[0, s*]``. With ``check`` the arc family must pass
    :func:`arcs_disjoint` and ``|gamma|`` must be increasing, else
    DisjointnessError is raised.
    """
    fr = _frame(curve)
    if check and not (fr.lam_increasing() and arcs_disjoint(fr, n_probe)):
        raise DisjointnessError("arc family is not disjoint; the arc formula does not hold")

    def f(s):
        lam = fr.lam(s)
        return s * np.sqrt(np.maximum(1 - (lam / 2) ** 2, 0.0)) * np.cos(fr.phi(s) - fr.arg(s))

    kinks = tuple(k for k in fr.curve.knots_s if 0 < k < fr.s_star)
    v, _ = integrate_with_error(f, 0.0, fr.s_star, spec.with_(split_points=kinks))
    return 2 / math.pi * v


def _sigma(fr, z, step=0.02, iters=60):
    """First ``s`` with ``|gamma(s) - z| >= 1`` for each z, by marching then bisection."""
    grid = np.arange(0.0, fr.s_star + step, step)
    g = fr.gamma(grid)
    out = np.full(z.shape, np.nan)
    lo = np.zeros(z.shape)
    hi = np.full(z.shape, np.nan)
    pending = np.ones(z.shape, dtype=bool)
    for k in range(1, len(grid)):
        if not pending.any():
            break
        idx = np.flatnonzero(pending)
        hit = np.abs(g[k] - z[idx]) >= 1
        done = idx[hit]
        lo[done] = grid[k - 1]
        hi[done] = grid[k]
        pending[done] = False
    ok = ~np.isnan(hi)
    zl, a, b = z[ok], lo[ok], hi[ok]
    for _ in range(iters):
        m = 0.5 * (a + b)
        out_m = np.abs(fr.gamma(m) - zl) >= 1
        b = np.where(out_m, m, b)
        a = np.where(out_m, a, m)
    out[ok] = 0.5 * (a + b)
    return out


def a_gamma_mc(curve, n, seed):
    """Monte Carlo estimate of ``(1/pi) * integral over the disk of sigma(z)``.

    Works for any curve. Points where the curve never gets distance 1 from
    ``z`` make the estimate fail with a ValueError.
    """
    fr = _frame(curve)
    parts = []
    for size, rng in _chunks(n, seed):
        rad = np.sqrt(rng.random(size))
        ang = rng.uniform(-np.pi, np.pi, size)
        parts.append(_sigma(fr, rad * np.exp(1j * ang)))
    sig = np.concatenate(parts)
    failures = int(np.count_nonzero(np.isnan(sig)))
    if failures:
        raise ValueError(f"sigma undefined for {failures} sample(s)")
    mean = math.fsum(sig) / n
    se = float(np.std(sig, ddof=1) / math.sqrt(n))
    return McEstimate(mean, se, n, seed)


def check_lower_bound(curve, spec=ARC_SPEC):
    """Evaluate the arc formula and report the slack above ``8/(3 pi)``."""
    a = a_gamma_arc(curve, spec)
    return {
        "a_gamma": a,
        "bound": BOUND,
        "slack": a - BOUND,
        "holds": bool(a >= BOUND - 1e-9),
    }
