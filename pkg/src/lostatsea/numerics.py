"""Quadrature and derivative-free minimisation engines."""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import QuadratureError

logger = logging.getLogger(__name__)

# Gauss-Kronrod 7/15 pair on [-1, 1] (positive half, centre last).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    max_subdivisions: int = 4000
    split_points: tuple = ()

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def with_(self, **changes):
        d = dict(abs_tol=self.abs_tol, rel_tol=self.rel_tol,
                 max_subdivisions=self.max_subdivisions, split_points=self.split_points)
        d.update(changes)
        return QuadratureSpec(**d)


DEFAULT_SPEC = QuadratureSpec()


def _gk15(f, a, b):
    """Kronrod estimates and |K - G| error for each panel ``[a_i, b_i]``."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[:, None] + half[:, None] * NODES[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand returned a non-finite value")
    k = half * (vals @ KRONROD_WEIGHTS)
    g = half * (vals @ GAUSS_WEIGHTS)
    return k, np.abs(k - g)


def integrate_with_error(f, a, b, spec=DEFAULT_SPEC):
    """Adaptive Gauss-Kronrod integral of a vectorised ``f`` over ``[a, b]``.

    ``f`` receives a 1-D array of abscissae and must return values of the same
    shape. Declared ``spec.split_points`` start the partition, so integrable
    endpoint singularities there are never sampled. Every panel whose error
    exceeds its length-weighted share of the tolerance is bisected at once.

    Returns ``(value, error_bound)``.
    """
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    cuts = sorted({float(p) for p in spec.split_points if a < p < b})
    edges = np.array([a, *cuts, b], dtype=float)
    lo, hi = edges[:-1], edges[1:]
    val, err = _gk15(f, lo, hi)
    done_val = 0.0
    done_err = 0.0
    width = b - a
    while True:
        total = done_val + val.sum()
        total_err = done_err + err.sum()
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            return sign * total, total_err
        if lo.size + 1 > spec.max_subdivisions:
            raise QuadratureError(
                f"no convergence within {spec.max_subdivisions} subdivisions "
                f"(estimate {sign * total!r}, error {total_err:.3g})",
                sign * total, total_err)
        share = tol * (hi - lo) / width
        split = err > share
        if not split.any():
            split[np.argmax(err)] = True
        # retire panels that are already good enough so they are not re-examined
        keep = ~split
        done_val += val[keep].sum()
        done_err += err[keep].sum()
        mid = 0.5 * (lo[split] + hi[split])
        tiny = mid <= lo[split]
        if tiny.any():
            raise QuadratureError("panel width reached machine precision",
                                  sign * total, total_err)
        lo = np.concatenate([lo[split], mid])
        hi = np.concatenate([mid, hi[split]])
        val, err = _gk15(f, lo, hi)


def integrate(f, a, b, spec=DEFAULT_SPEC):
    """Like :func:`integrate_with_error` but returns only the value."""
    return integrate_with_error(f, a, b, spec)[0]


def scalar_integrand(g):
    """Lift a scalar function to the vectorised form :func:`integrate` wants."""
    def f(xs):
        return np.fromiter((g(float(t)) for t in xs), dtype=float, count=len(xs))
    return f


@dataclass
class OptimizationResult:
    params: np.ndarray
    value: float
    evaluations: int
    converged: bool
    start_index: int = 0
    history: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "params": [float(p) for p in self.params],
            "value": float(self.value),
            "evaluations": int(self.evaluations),
            "converged": bool(self.converged),
            "start_index": int(self.start_index),
        }


def minimize(f, x0, bounds, tol=1e-8, max_evals=5000, step=0.05):
    """Nelder-Mead simplex search confined to a box.

    Trial points are projected onto ``bounds`` (a sequence of ``(lo, hi)``).
    Stops once every vertex lies within ``tol`` of the best one, or after
    ``max_evals`` evaluations (``converged`` is then False). ``step`` is the
    initial edge length as a fraction of each box side.
    """
    bounds = np.asarray(bounds, dtype=float)
    lo, hi = bounds[:, 0], bounds[:, 1]
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 < lo) or np.any(x0 > hi):
        raise ValueError("x0 must lie inside the bounds")
    n = x0.size
    nevals = 0

    def ev(x):
        nonlocal nevals
        nevals += 1
        return float(f(x))

    simplex = [x0.copy()]
    for i in range(n):
        v = x0.copy()
        h = step * (hi[i] - lo[i])
        v[i] = v[i] + h if v[i] + h <= hi[i] else v[i] - h
        simplex.append(v)
    simplex = np.array(simplex)
    fs = np.array([ev(v) for v in simplex])
    history = []
    converged = False

    while nevals < max_evals:
        order = np.argsort(fs, kind="stable")
        simplex, fs = simplex[order], fs[order]
        history.append(fs[0])
        if np.max(np.abs(simplex[1:] - simplex[0])) < tol:
            converged = True
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = np.clip(centroid + (centroid - worst), lo, hi)
        fr = ev(xr)
        if fr < fs[0]:
            xe = np.clip(centroid + 2.0 * (centroid - worst), lo, hi)
            fe = ev(xe)
            if fe < fr:
                simplex[-1], fs[-1] = xe, fe
            else:
                simplex[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-2]:
            simplex[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-1]:
            xc = np.clip(centroid + 0.5 * (xr - centroid), lo, hi)
            fc = ev(xc)
            if fc <= fr:
                simplex[-1], fs[-1] = xc, fc
                continue
        else:
            xc = np.clip(centroid + 0.5 * (worst - centroid), lo, hi)
            fc = ev(xc)
            if fc < fs[-1]:
                simplex[-1], fs[-1] = xc, fc
                continue
        # shrink toward the best vertex
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        fs[1:] = [ev(v) for v in simplex[1:]]

    best = int(np.argmin(fs))
    return OptimizationResult(simplex[best].copy(), float(fs[best]), nevals,
                              converged, 0, history)


def worker_count():
    """Worker cap from ``ESCAPE_OPTIM_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("ESCAPE_OPTIM_THREADS", "1")))
    except ValueError:
        return 1


def multistart(f, bounds, n_starts, seed, x0=None, feasible=None, tol=1e-8,
               max_evals=5000, step=0.05, max_draws=10000):
    """Best of ``n_starts`` simplex runs from seeded random starts.

    Starts are drawn uniformly in the box; when ``feasible`` is given, draws
    failing it are rejected. If ``x0`` is given it is used as start 0. The
    result is the lowest value, ties broken by start index, so the outcome
    does not depend on how many workers ran the starts.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    bounds = np.asarray(bounds, dtype=float)
    rng = np.random.default_rng(seed)
    starts = [] if x0 is None else [np.asarray(x0, dtype=float)]
    draws = 0
    while len(starts) < n_starts:
        if draws >= max_draws:
            raise RuntimeError("could not draw enough feasible starting points")
        draws += 1
        cand = bounds[:, 0] + (bounds[:, 1] - bounds[:, 0]) * rng.random(len(bounds))
        if feasible is None or feasible(cand):
            starts.append(cand)

    def run(i):
        res = minimize(f, starts[i], bounds, tol=tol, max_evals=max_evals, step=step)
        res.start_index = i
        return res

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, range(n_starts)))
    else:
        results = [run(i) for i in range(n_starts)]
    for res in results:
        logger.debug("start %d: value %.12g after %d evals", res.start_index,
                     res.value, res.evaluations)
    best = min(results, key=lambda res: (res.value, res.start_index))
    best.evaluations = sum(res.evaluations for res in results)
    return best


def finite_diff_gradient(f, x, h=1e-5):
    """Central-difference gradient, error O(h^2) per component."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g
