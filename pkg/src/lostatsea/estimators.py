"""scikit-learn style estimators over escape strategies.

``fit`` searches the strategy parameters for the least expected escape
length (the sample matrix is not needed for that and is ignored).
``predict`` maps a matrix of start states ``[x, theta]`` to escape lengths,
``classify`` to case labels, and ``score`` returns the negated expected
length, so that higher is better as elsewhere in scikit-learn.
"""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .disk import DiskStrategy, disk_classify, disk_path_length
from .numerics import minimize, multistart
from .objectives import (PENALTY, OUTER_SPEC, disk_expected, disk_objective, strip2_expected,
                         strip2_objective, strip3_expected, strip3_objective)
from .strip import (PI, Strategy2, Strategy3, classify_strip2, classify_strip3,
                    normalize_state, strip2_path_length, strip3_path_length)


def check_states(X, region="strip"):
    """Validate an ``(n, 2)`` state matrix; strip states are folded onto ``theta >= 0``."""
    X = check_array(X, dtype=np.float64, ensure_min_features=2)
    if X.shape[1] != 2:
        raise ValueError(f"expected 2 columns (x, theta), got {X.shape[1]}")
    x, theta = X[:, 0], X[:, 1]
    if np.any((x < 0) | (x > 1)):
        raise ValueError("x must lie in [0, 1]")
    if np.any((theta < -PI) | (theta > PI)):
        raise ValueError("theta must lie in [-pi, pi]")
    if region == "strip":
        return normalize_state(x, theta)
    return x, theta


class _EscapeEstimator(BaseEstimator):
    _region = "strip"

    def _lengths(self, x, theta, strat):
        raise NotImplementedError

    def _labels(self, x, theta, strat):
        raise NotImplementedError

    def _expected(self, strat):
        raise NotImplementedError

    def predict(self, X):
        """Escape length for each row ``[x, theta]`` under the fitted strategy."""
        check_is_fitted(self, "strategy_")
        x, theta = check_states(X, self._region)
        return np.asarray(self._lengths(x, theta, self.strategy_), dtype=float)

    def classify(self, X):
        check_is_fitted(self, "strategy_")
        x, theta = check_states(X, self._region)
        return np.asarray(self._labels(x, theta, self.strategy_))

    def score(self, X=None, y=None):
        """Negative expected length: exact when ``X`` is None, else the sample mean."""
        check_is_fitted(self, "strategy_")
        if X is None:
            return -float(self._expected(self.strategy_))
        return -float(np.mean(self.predict(X)))


class StripTwoSegment(_EscapeEstimator):
    """Best 2-segment strip strategy (first leg ``r``, pivot ``alpha``).

    Parameters
    ----------
    r, alpha : float
        Starting point of the search.
    tol : float
        Simplex size at which the search stops.
    max_evals : int
    """

    def __init__(self, r=1.2, alpha=1.2, tol=1e-9, max_evals=5000):
        self.r = r
        self.alpha = alpha
        self.tol = tol
        self.max_evals = max_evals

    def fit(self, X=None, y=None):
        bounds = [(1.0, 3.0), (0.0, PI / 2)]
        res = minimize(strip2_objective(), [self.r, self.alpha], bounds,
                       tol=self.tol, max_evals=self.max_evals)
        self.result_ = res
        self.strategy_ = Strategy2(*res.params)
        self.expected_length_ = res.value
        self.converged_ = res.converged
        return self

    def _lengths(self, x, theta, strat):
        return strip2_path_length(x, theta, strat)

    def _labels(self, x, theta, strat):
        return classify_strip2(x, theta, strat)

    def _expected(self, strat):
        return strip2_expected(strat)


STRIP3_BOUNDS = [(1.0, 2.0), (0.0, PI / 2), (0.0, 2.0), (0.0, PI)]


class StripThreeSegment(_EscapeEstimator):
    """Best 3-segment strip strategy ``(r, alpha, s, beta)`` by seeded multistart.

    Starts are drawn uniformly from the feasible part of the search box.
    If all four parameters are given they are used as start 0 instead of a
    random draw.
    """

    def __init__(self, r=None, alpha=None, s=None, beta=None, n_starts=32, random_state=7,
                 tol=1e-9, max_evals=6000):
        self.r = r
        self.alpha = alpha
        self.s = s
        self.beta = beta
        self.n_starts = n_starts
        self.random_state = random_state
        self.tol = tol
        self.max_evals = max_evals

    def fit(self, X=None, y=None):
        f = strip3_objective()
        x0 = [self.r, self.alpha, self.s, self.beta]
        if any(v is None for v in x0):
            x0 = None
        elif f(x0) >= PENALTY:
            raise ValueError(f"initial strategy {x0} is outside the objective's domain")
        res = multistart(f, STRIP3_BOUNDS, self.n_starts, self.random_state, x0=x0,
                         feasible=lambda p: f(p) < PENALTY, tol=self.tol,
                         max_evals=self.max_evals)
        self.result_ = res
        self.strategy_ = Strategy3(*res.params)
        self.expected_length_ = res.value
        self.converged_ = res.converged
        return self

    def _lengths(self, x, theta, strat):
        return strip3_path_length(x, theta, strat)

    def _labels(self, x, theta, strat):
        return classify_strip3(x, theta, strat)

    def _expected(self, strat):
        return strip3_expected(strat)


class DiskTwoSegment(_EscapeEstimator):
    """2-segment strategy in the unit disk.

    ``search="grid"`` scores every ``(r, alpha)`` pair on the grid and keeps
    the best; ``search="simplex"`` runs a bounded simplex search from
    ``(r, alpha)``.
    """

    _region = "disk"

    def __init__(self, r=1.0, alpha=PI / 2, search="grid", r_grid=(0.25, 0.5, 1.0, 1.5, 1.75),
                 alpha_grid=(0.0, PI / 4, PI / 2, 3 * PI / 4, PI), tol=1e-6, max_evals=400):
        self.r = r
        self.alpha = alpha
        self.search = search
        self.r_grid = r_grid
        self.alpha_grid = alpha_grid
        self.tol = tol
        self.max_evals = max_evals

    def fit(self, X=None, y=None):
        if self.search == "grid":
            table = []
            for r in self.r_grid:
                for a in self.alpha_grid:
                    table.append((float(disk_expected(DiskStrategy(r, a), OUTER_SPEC)), r, a))
            # lowest value; ties go to the first grid point
            value, r, a = min(table, key=lambda row: row[0])
            self.grid_values_ = np.array(table)
            self.strategy_ = DiskStrategy(r, a)
            self.expected_length_ = value
            self.converged_ = True
        elif self.search == "simplex":
            res = minimize(disk_objective(), [self.r, self.alpha], [(0.0, 2.0), (0.0, PI)],
                           tol=self.tol, max_evals=self.max_evals)
            self.result_ = res
            self.strategy_ = DiskStrategy(*res.params)
            self.expected_length_ = res.value
            self.converged_ = res.converged
        else:
            raise ValueError(f"search must be 'grid' or 'simplex', got {self.search!r}")
        return self

    def _lengths(self, x, theta, strat):
        return disk_path_length(x, theta, strat)

    def _labels(self, x, theta, strat):
        return disk_classify(x, theta, strat)

    def _expected(self, strat):
        return disk_expected(strat)

