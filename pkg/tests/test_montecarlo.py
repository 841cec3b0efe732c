import math
import warnings

import numpy as np
import pytest

from lostatsea import (DISK_STRAIGHT_MEAN, DiskStrategy, HeavyTailWarning, NoPivot, Region,
                       Strategy2, estimate_mean, estimate_median, simulate, strip2_expected)
from lostatsea.montecarlo import (McEstimate, median_ci, path_lengths, realizations,
                                  sample_state, sweep_median)

from conftest import OPT2, OPT3


def test_sampling_reproducible():
    a = sample_state("strip", np.random.default_rng(5), 1000)
    b = sample_state("strip", np.random.default_rng(5), 1000)
    assert np.array_equal(a.x, b.x) and np.array_equal(a.theta, b.theta)
    assert np.all((a.theta >= 0) & (a.theta <= math.pi))


def test_disk_radius_is_area_uniform():
    x, _ = sample_state("disk", np.random.default_rng(0), 1_000_000)
    se = np.std(x * x) / 1000
    assert abs(np.mean(x * x) - 0.5) < 3 * se
    u, _ = sample_state("disk", np.random.default_rng(0), 100_000, radial="uniform")
    assert np.mean(u) == pytest.approx(0.5, abs=0.01)
    with pytest.raises(ValueError):
        sample_state("disk", np.random.default_rng(0), 10, radial="bogus")


def test_estimates_bit_identical():
    a = estimate_mean("strip", OPT2, 50_000, 3)
    b = estimate_mean("strip", OPT2, 50_000, 3)
    assert a == b and a.std_error >= 0
    assert estimate_median("disk", DiskStrategy(1, 1), 5000, 9) == \
        estimate_median("disk", DiskStrategy(1, 1), 5000, 9)


def test_chunking_is_seed_stable():
    # results over several chunks do not depend on anything but (n, seed)
    a = simulate("strip", OPT2, (1 << 20) + 17, 4)
    assert a.shape == ((1 << 20) + 17,)
    assert np.array_equal(a[:100], simulate("strip", OPT2, (1 << 20) + 17, 4)[:100])


def test_mean_consistent_with_closed_form():
    est = estimate_mean("strip", OPT2, 2_000_000, 1)
    assert abs(est.point - strip2_expected(OPT2).value) < 4 * est.std_error


def test_disk_straight_mean():
    est = estimate_mean("disk", DiskStrategy(0.7, math.pi), 2_000_000, 2)
    assert abs(est.point - DISK_STRAIGHT_MEAN) < 4 * est.std_error


def test_constant_length_from_centre():
    est = estimate_mean("disk", DiskStrategy(1.3, 0.4), 10_000, 0, x=0.0)
    assert est.point == 1.0 and est.std_error == 0.0


def test_straight_strip_is_heavy_tailed():
    with pytest.warns(HeavyTailWarning):
        estimate_mean("strip", NoPivot(), 1_000_000, 0)
    with warnings.catch_warnings():
        warnings.simplefilter("error", HeavyTailWarning)
        estimate_mean("strip", OPT2, 100_000, 0)


def test_small_n_rejected():
    with pytest.raises(ValueError):
        estimate_mean("strip", OPT2, 999, 0)
    with pytest.raises(ValueError):
        estimate_median("strip", OPT2, 10, 0)


def test_median_ci_degenerate():
    vals = np.full(5001, 0.37)
    assert median_ci(vals) == (0.37, 0.37)


def test_median_ci_covers():
    rng = np.random.default_rng(1)
    v = np.sort(rng.random(10_001))
    lo, hi = median_ci(v)
    assert lo < 0.5 < hi and hi - lo < 0.05


def test_straight_strip_median():
    est = estimate_median("strip", NoPivot(), 1_000_000, 1)
    assert est.point == pytest.approx(0.78, abs=0.01)
    assert est.lo <= est.point <= est.hi


def test_strip_median_sweep_non_increasing():
    rows = sweep_median("strip", [Strategy2(r, OPT2.alpha) for r in (0.5, 0.8, 1.5, 3, 10, 100)],
                        200_000, 3)
    med = [row["median"] for row in rows]
    assert all(a >= b for a, b in zip(med, med[1:]))
    straight = estimate_median("strip", NoPivot(), 200_000, 3).point
    # once r >= 1 no path below the median turns, so the medians coincide
    assert med[-1] == straight and med[2] == straight


def test_disk_median_sweep_minimum_at_two():
    rows = sweep_median("disk", [DiskStrategy(r, 1.0) for r in (0.5, 1.0, 1.5, 2.0)], 200_000, 3)
    med = [row["median"] for row in rows]
    assert med[-1] == min(med)
    assert rows[0]["r"] == 0.5 and rows[0]["strategy"] == "DiskStrategy"


def test_disk_median_sampling_dependence():
    # area-uniform starts give about 0.81; a radius uniform on [0, 1] gives about 0.94
    area = estimate_median("disk", DiskStrategy(2.0, math.pi), 400_000, 1)
    radial = estimate_median("disk", DiskStrategy(2.0, math.pi), 400_000, 1, radial="uniform")
    assert area.point == pytest.approx(0.808, abs=0.01)
    assert radial.point == pytest.approx(0.94, abs=0.01)


def test_single_point_sweep():
    rows = sweep_median("strip", [OPT2], 5000, 1)
    assert len(rows) == 1
    assert rows[0]["median"] == estimate_median("strip", OPT2, 5000, 1).point


def test_path_lengths_dispatch():
    with pytest.raises(TypeError):
        path_lengths("disk", np.array([0.5]), np.array([0.1]), OPT2)
    assert path_lengths(Region.STRIP, np.array([0.5]), np.array([0.0]), OPT3)[0] == 0.5


def test_realizations_export():
    reals = realizations("strip", OPT2, [(0.1, 0.3), (0.9, 2.9)])
    assert len(reals) == 2 and all(r.escaped for r in reals)


def test_estimate_to_dict():
    d = McEstimate(1.0, 0.1, 10, 3, 0.9, 1.1).to_dict()
    assert d == {"point": 1.0, "std_error": 0.1, "n": 10, "seed": 3, "ci": [0.9, 1.1]}
