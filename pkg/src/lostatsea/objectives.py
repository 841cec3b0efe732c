"""Expected escape length as a function of the strategy parameters.

Values are expected lengths in units of the strip width (or disk radius),
i.e. already divided by pi where the formulas are written for pi times the
mean.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .disk import DiskStrategy, disk_geometry
from .exceptions import DomainError, InvalidStrategyError
from .numerics import QuadratureSpec, integrate_with_error
from .strip import PI, Strategy2, Strategy3, three_seg_intermediates

DISK_STRAIGHT_MEAN = 8 / (3 * PI)

# Inner integrals run 10x tighter than the outer one.
OUTER_SPEC = QuadratureSpec(abs_tol=1e-9)
INNER_SPEC = QuadratureSpec(abs_tol=1e-10)
LINE_SPEC = QuadratureSpec(abs_tol=1e-10)


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class ObjectiveValue:
    value: float
    method: Method
    est_error: float = 0.0

    def __float__(self):
        return float(self.value)


def _log(arg, what):
    if arg <= 0:
        raise DomainError(f"log argument {what} = {arg!r} is not positive")
    return np.log(arg)


def strip2_expected(strat):
    """Closed-form mean escape length for a 2-segment strip strategy.

    Valid for ``r > 1`` and ``0 < pi/2 - alpha < arccos(1/r)``, where only
    Cases 1, 3 and 5 occur.
    """
    if not strat.closed_form_valid:
        raise DomainError(f"closed form needs r > 1 and 0 < pi/2 - alpha < arccos(1/r), "
                          f"got {strat}")
    r, a = strat.r, strat.alpha
    q = np.sqrt(r * r - 1)
    sa, ca = np.sin(a), np.cos(a)
    r2s2 = r * r * sa * sa
    total = (
        r * ((1 + ca) * (PI / 2 + q - r) - (2 + ca) * np.arccos(1 / r) + PI / 2)
        + _log(q + r, "sqrt(r^2-1)+r")
        + 0.5 * r * r * _log(1 - ca, "1-cos(a)") * sa * sa
        + r * sa * _log((q * sa - ca) / (r * sa), "(q sin a - cos a)/(r sin a)")
        + 0.25 * (r2s2 + 1) * _log(q * ca + sa + r, "q cos a + sin a + r")
        + 0.25 * (r2s2 - 1) * _log(q * ca - sa + r, "q cos a - sin a + r")
        - 0.25 * (r2s2 + 1) * _log(-q * ca * ca - (sa + q - r) * ca - sa + r, "L5")
        - 0.25 * (r2s2 - 1) * _log(-q * ca * ca + (sa - q + r) * ca + sa + r, "L6")
    )
    return ObjectiveValue(float(total / PI), Method.CLOSED_FORM, 0.0)


def _strip2_inner(x, strat, spec):
    r, a = strat.r, strat.alpha
    t1 = np.arccos((1 - x) / r)
    t5 = PI - np.arccos(x / r)
    v1, e1 = integrate_with_error(lambda t: (1 - x) / np.cos(t), 0.0, t1, spec)
    v3, e3 = integrate_with_error(
        lambda t: r + (x - 1 + r * np.cos(t)) / np.cos(t + a), t1, t5, spec)
    v5, e5 = integrate_with_error(lambda t: -x / np.cos(t), t5, PI, spec)
    return v1 + v3 + v5, e1 + e3 + e5


def _outer(inner, a, b, outer_spec, inner_spec):
    errs = []

    def f(xs):
        out = np.empty(len(xs))
        for i, x in enumerate(xs):
            out[i], e = inner(float(x), inner_spec)
            errs.append(e)
        return out

    v, e = integrate_with_error(f, a, b, outer_spec)
    return v, e


def strip2_expected_quad(strat, spec=OUTER_SPEC, inner_spec=None):
    """Mean escape length by nested quadrature of the Case 1/3/5 integrand."""
    if not strat.closed_form_valid:
        raise DomainError(f"integral form needs r > 1 and 0 < pi/2 - alpha < arccos(1/r), "
                          f"got {strat}")
    inner_spec = inner_spec or spec.with_(abs_tol=spec.abs_tol / 10)
    v, e = _outer(lambda x, sp: _strip2_inner(x, strat, sp), 0.0, 1.0, spec, inner_spec)
    return ObjectiveValue(v / PI, Method.QUADRATURE, e / PI)


def _cos_positive_on(lo, hi):
    """Whether cos > 0 on every interval ``[lo_i, hi_i]`` (lengths below pi)."""
    k_lo = np.floor((lo + PI / 2) / (2 * PI))
    k_hi = np.floor((hi + PI / 2) / (2 * PI))
    return (k_lo == k_hi) & (np.mod(lo + PI / 2, 2 * PI) <= PI) & (np.mod(hi + PI / 2, 2 * PI) <= PI)


def strip3_check(strat, x):
    """Raise InvalidStrategyError unless Subcase 3.2 paths exit right for these ``x``.

    Checks that the Subcase 3.2 heading range is non-empty and ordered, that
    the third leg heads rightwards over all of it, and that the second leg
    never crosses the left shore.
    """
    r, a, s = strat.r, strat.alpha, strat.s
    x = np.asarray(x, dtype=float)
    im = three_seg_intermediates(x, strat)
    t_right = np.arccos((1 - x) / r)
    t_left = PI - np.arccos(x / r)
    if np.any(im.theta0 < t_right) or np.any(im.theta0 > t_left):
        raise InvalidStrategyError("theta0 falls outside the Case 3 heading range")
    if not np.all(_cos_positive_on(im.xi2, im.eta2)):
        raise InvalidStrategyError("third leg turns toward the left shore for some states")
    # x-coordinate after two legs is x + kappa cos(theta - rho); minimise it over the range
    rho = np.arctan2(s * np.sin(a), r - s * np.cos(a))

    def x2(t):
        return x + im.kappa * np.cos(t - rho)

    lowest = np.minimum(x2(im.theta0), x2(t_left))
    trough = rho + PI
    inside = (im.theta0 < trough) & (trough < t_left)
    lowest = np.where(inside, x - im.kappa, lowest)
    if np.any(lowest < -1e-12):
        raise InvalidStrategyError("second leg crosses the left shore for some states")


def _p_sum(x, strat):
    """``p_1 + p_2`` of the 3-segment objective, vectorised over ``x``."""
    im = three_seg_intermediates(x, strat)
    total = 0.0
    for j, (u, v, xi, eta) in enumerate(
            [(im.u1, im.v1, im.xi1, im.eta1), (im.u2, im.v2, im.xi2, im.eta2)], start=1):
        sx, se = np.sin(xi), np.sin(eta)
        ratio = (sx * (se + 1) - se - 1) / (sx * (se - 1) + se - 1)
        if np.any(ratio <= 0):
            bad = np.asarray(x)[np.asarray(ratio <= 0)]
            raise DomainError(f"p_{j} log argument not positive at x = {bad[:3]}")
        total = total + (u * np.log(np.abs(np.cos(xi) / np.cos(eta)))
                         + (-1) ** j * (1 - x) / 2 * np.log(ratio)
                         + v * (eta - xi))
    return total


def strip3_expected(strat, spec=LINE_SPEC, check=True):
    """Mean escape length of a 3-segment strip strategy.

    The heading integral is done in closed form, leaving one quadrature over
    the starting position. With ``check`` the Subcase 3.2 geometry is
    verified at every quadrature node.
    """
    r = strat.r
    kappa = np.sqrt(r * r + strat.s ** 2 - 2 * r * strat.s * np.cos(strat.alpha))
    if kappa < 1:
        raise DomainError(f"kappa = {kappa:.6g} < 1: theta0 undefined near x = 0")
    if r < strat.s * np.cos(strat.alpha):
        raise DomainError("r < s cos(alpha): arcsin phase of rho is wrong")

    def f(x):
        if check:
            strip3_check(strat, x)
        return _p_sum(x, strat)

    q = np.sqrt(r * r - 1)
    v, e = integrate_with_error(f, 0.0, 1.0, spec)
    total = np.log(q + r) + r * (r - q) + v
    return ObjectiveValue(float(total / PI), Method.QUADRATURE, e / PI)


def strip3_expected_quad(strat, spec=OUTER_SPEC, inner_spec=None):
    """Twin of :func:`strip3_expected` that integrates the path length in both variables."""
    from .strip import strip3_path_length

    r = strat.r
    inner_spec = inner_spec or spec.with_(abs_tol=spec.abs_tol / 10)

    def inner(x, sp):
        t1 = np.arccos((1 - x) / r)
        t5 = PI - np.arccos(x / r)
        t0 = float(three_seg_intermediates(x, strat).theta0)
        total = err = 0.0
        for lo, hi in [(0.0, t1), (t1, t0), (t0, t5), (t5, PI)]:
            v, e = integrate_with_error(
                lambda t: strip3_path_length(np.full_like(t, x), t, strat), lo, hi, sp)
            total += v
            err += e
        return total, err

    v, e = _outer(inner, 0.0, 1.0, spec, inner_spec)
    return ObjectiveValue(v / PI, Method.QUADRATURE, e / PI)


def _disk_leg2(x, strat):
    def f(t):
        return strat.r + disk_geometry(np.full_like(t, x), t, strat).s
    return f


def _disk_q(x):
    def f(t):
        return -x * np.cos(t) + np.sqrt(1 - x * x * np.sin(t) ** 2)
    return f


def _disk_cuts(x, r):
    """Interior heading cuts: the omega branch switch and the x = r kink."""
    cuts = []
    if x > 0 and x >= r:
        psi = float(np.arccos(np.clip(-r / x, -1, 1)))
        cuts += [-psi, psi]
    return tuple(cuts)


def _disk_f(x, strat, sp):
    r = strat.r
    phi = float(np.arccos(np.clip((1 - x * x - r * r) / (2 * x * r), -1, 1)))
    cuts = _disk_cuts(x, r)
    sp2 = sp.with_(split_points=cuts)
    v1, e1 = integrate_with_error(_disk_q(x), -phi, phi, sp)
    v2, e2 = integrate_with_error(_disk_leg2(x, strat), phi, PI, sp2)
    v3, e3 = integrate_with_error(_disk_leg2(x, strat), -PI, -phi, sp2)
    return x * (v1 + v2 + v3), e1 + e2 + e3


def _disk_g(x, strat, sp):
    v, e = integrate_with_error(_disk_q(x), -PI, PI, sp)
    return x * v, e


def _disk_h(x, strat, sp):
    sp2 = sp.with_(split_points=_disk_cuts(x, strat.r))
    v, e = integrate_with_error(_disk_leg2(x, strat), -PI, PI, sp2)
    return x * v, e


def disk_expected(strat, spec=OUTER_SPEC, inner_spec=None):
    """Mean escape length ``I + J`` of a 2-segment strategy in the unit disk."""
    r = strat.r
    inner_spec = inner_spec or spec.with_(abs_tol=spec.abs_tol / 10)
    lo = abs(r - 1)
    i_val = i_err = 0.0
    if lo < 1 and r > 0:
        i_val, i_err = _outer(lambda x, sp: _disk_f(x, strat, sp), lo, 1.0, spec, inner_spec)
    if r >= 1:
        j_val, j_err = _outer(lambda x, sp: _disk_g(x, strat, sp), 0.0, r - 1, spec, inner_spec)
    else:
        # x = r is where the second leg can start at the centre
        jspec = spec.with_(split_points=(r,))
        j_val, j_err = _outer(lambda x, sp: _disk_h(x, strat, sp), 0.0, 1 - r, jspec, inner_spec)
    return ObjectiveValue(float((i_val + j_val) / PI), Method.QUADRATURE, (i_err + j_err) / PI)


PENALTY = 1e3


def penalized(objective, make_strategy):
    """Wrap ``objective(strategy)`` as a function of a parameter vector.

    Parameters outside the objective's domain score ``PENALTY``.
    """
    def f(params):
        try:
            return float(objective(make_strategy(*params)))
        except (DomainError, InvalidStrategyError, FloatingPointError):
            return PENALTY
    return f


def strip2_objective():
    return penalized(strip2_expected, Strategy2)


def strip3_objective(spec=LINE_SPEC):
    return penalized(lambda st: strip3_expected(st, spec), Strategy3)


def disk_objective(spec=OUTER_SPEC):
    return penalized(lambda st: disk_expected(st, spec), DiskStrategy)
