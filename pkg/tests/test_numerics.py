import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from lostatsea import QuadratureError, QuadratureSpec, integrate, minimize, multistart
from lostatsea.numerics import (GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, finite_diff_gradient,
                                integrate_with_error, scalar_integrand)
from lostatsea.objectives import strip2_objective, strip3_objective

from conftest import OPT2, OPT3


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod is exact for degree 22, Gauss for degree 13
    assert KRONROD_WEIGHTS @ NODES ** 22 == pytest.approx(2 / 23, abs=1e-15)
    assert GAUSS_WEIGHTS @ NODES ** 12 == pytest.approx(2 / 13, abs=1e-15)


def test_spec_examples():
    assert integrate(lambda x: x, 0, 1) == pytest.approx(0.5, abs=1e-15)
    eps = 1e-6
    exact = math.log(1 / math.cos(math.pi / 2 - eps) + math.tan(math.pi / 2 - eps))
    got = integrate(lambda t: 1 / np.cos(t), 0, math.pi / 2 - eps,
                    QuadratureSpec(abs_tol=1e-10, rel_tol=1e-13))
    assert got == pytest.approx(exact, abs=1e-9)
    got = integrate(lambda l: l * np.sqrt(1 - l * l / 4), 0, 2)
    assert got == pytest.approx(4 / 3, abs=1e-10)


@pytest.mark.parametrize("f,a,b,exact", [
    (lambda x: x ** 5 - 2 * x, -1.0, 2.0, (64 - 1) / 6 - 3.0),
    (lambda x: np.sqrt(x), 0.0, 1.0, 2 / 3),
    (lambda x: 1 / np.sqrt(x), 0.0, 1.0, 2.0),
    (lambda x: np.log(x), 0.0, 1.0, -1.0),
    (lambda x: np.abs(x - 0.3), 0.0, 1.0, 0.29),
])
def test_error_bound_honoured(f, a, b, exact):
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-14, split_points=(0.3,))
    val, err = integrate_with_error(f, a, b, spec)
    assert abs(val - exact) <= max(err, 1e-10)


def test_split_points_reach_singularity():
    # log|x - 0.5| is integrable but infinite at the declared split
    spec = QuadratureSpec(abs_tol=1e-10, split_points=(0.5,))
    val, err = integrate_with_error(lambda x: np.log(np.abs(x - 0.5)), 0, 1, spec)
    assert val == pytest.approx(math.log(0.5) - 1, abs=1e-10)
    assert err <= 1e-10


def test_left_endpoint_inverse_sqrt():
    # abscissae resolve distances to 0 far below those to a non-zero point
    val = integrate(lambda x: 1 / np.sqrt(x), 0, 0.5, QuadratureSpec(abs_tol=1e-9))
    assert val == pytest.approx(math.sqrt(2), abs=1e-9)


def test_reversed_and_empty_interval():
    assert integrate(np.sin, 1.0, 0.0) == pytest.approx(-(1 - math.cos(1.0)))
    assert integrate(np.sin, 0.4, 0.4) == 0.0


def test_agrees_with_scipy_quad():
    f = lambda x: np.exp(-x) * np.cos(5 * x)
    ours = integrate(f, 0, 3)
    ref, _ = sp_integrate.quad(f, 0, 3, epsabs=1e-13)
    assert ours == pytest.approx(ref, abs=1e-11)


def test_nonconvergence_reports_estimate():
    spec = QuadratureSpec(max_subdivisions=3)
    with pytest.raises(QuadratureError) as info:
        integrate_with_error(lambda x: np.sin(1 / x), 1e-4, 1.0, spec)
    assert np.isfinite(info.value.estimate) and info.value.error > 0


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)
    assert QuadratureSpec().with_(abs_tol=1e-5).abs_tol == 1e-5


def test_scalar_integrand():
    assert integrate(scalar_integrand(math.cos), 0, math.pi / 2) == pytest.approx(1.0)


def test_minimize_quadratic():
    res = minimize(lambda p: (p[0] - 1) ** 2, [2.5], [(0, 3)], tol=1e-8)
    assert res.params[0] == pytest.approx(1.0, abs=1e-6) and res.converged


def test_minimize_stays_in_box():
    res = minimize(lambda p: p[0] + p[1], [0.5, 0.5], [(0.1, 1), (0.2, 1)])
    assert res.params[0] >= 0.1 and res.params[1] >= 0.2
    assert res.params == pytest.approx([0.1, 0.2], abs=1e-6)


def test_minimize_history_monotone():
    f = lambda p: (p[0] - 0.3) ** 2 + 3 * (p[1] + 0.2) ** 2 + 0.5 * p[0] * p[1]
    res = minimize(f, [1.0, 1.0], [(-2, 2), (-2, 2)])
    assert np.all(np.diff(res.history) <= 0)
    assert res.value == pytest.approx(f(res.params))


def test_strip2_optimum():
    res = minimize(strip2_objective(), [1.2, 1.2], [(1, 3), (0, math.pi / 2)], tol=1e-9)
    assert res.params == pytest.approx([OPT2.r, OPT2.alpha], abs=1e-4)
    assert res.value == pytest.approx(0.8869669056, abs=1e-9)


def test_multistart_single_start_matches_minimize():
    f = lambda p: (p[0] - 0.7) ** 2 + (p[1] - 0.1) ** 4
    bounds = [(0, 1), (0, 1)]
    ms = multistart(f, bounds, 1, seed=3)
    start = np.array(bounds)[:, 0] + np.ptp(bounds, axis=1) * np.random.default_rng(3).random(2)
    single = minimize(f, start, bounds)
    assert np.array_equal(ms.params, single.params) and ms.value == single.value


def test_multistart_finds_rastrigin_minimum():
    def rastrigin(p):
        p = np.asarray(p)
        return 10 * len(p) + float(np.sum(p * p - 10 * np.cos(2 * np.pi * p)))
    bounds = [(-1.2, 1.2), (-1.2, 1.2)]
    res = multistart(rastrigin, bounds, 32, seed=0, tol=1e-10)
    grid = np.linspace(-1.2, 1.2, 241)
    brute = min(rastrigin((a, b)) for a in grid[::4] for b in grid[::4])
    assert res.value <= brute + 1e-9
    assert np.allclose(res.params, 0, atol=1e-5)


def test_multistart_deterministic_and_thread_independent(monkeypatch):
    f = lambda p: np.sin(3 * p[0]) + (p[0] - 0.2) ** 2 + p[1] ** 2
    bounds = [(-3, 3), (-1, 1)]
    a = multistart(f, bounds, 8, seed=11)
    monkeypatch.setenv("ESCAPE_OPTIM_THREADS", "4")
    b = multistart(f, bounds, 8, seed=11)
    assert np.array_equal(a.params, b.params) and a.start_index == b.start_index


def test_multistart_rejects_infeasible_starts():
    seen = []

    def f(p):
        seen.append(p.copy())
        return float(np.sum(p ** 2))
    multistart(f, [(-1, 1)], 4, seed=0, feasible=lambda p: p[0] > 0, max_evals=1)
    assert all(s[0] > 0 for s in seen[:1])


def test_gradient_examples():
    assert finite_diff_gradient(lambda p: p[0] ** 2, [3.0])[0] == pytest.approx(6, abs=1e-9)
    g2 = finite_diff_gradient(strip2_objective(), [OPT2.r, OPT2.alpha])
    assert np.all(np.abs(g2) < 1e-4)
    p3 = [OPT3.r, OPT3.alpha, OPT3.s, OPT3.beta]
    g3 = finite_diff_gradient(strip3_objective(), p3, 1e-4)
    assert np.all(np.abs(g3) < 1e-3)
