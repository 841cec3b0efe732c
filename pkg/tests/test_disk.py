import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lostatsea import (CaseLabel, DiskStrategy, DomainError, Region, disk_classify,
                       disk_geometry, disk_path_length, raycast, realize)
from lostatsea.disk import disk_phi, disk_psi, straight_length


def test_phi_examples():
    assert disk_phi(1.0, 2.0) == pytest.approx(math.pi)
    for r in (0.3, 1.0, 1.7):
        assert disk_phi(1.0, r) == pytest.approx(math.acos(-r / 2))
    phi = disk_phi(0.5, 0.6)
    assert straight_length(0.5, phi) == pytest.approx(0.6, abs=1e-12)


def test_phi_domain():
    with pytest.raises(DomainError):
        disk_phi(0.2, 0.5)  # x < |r - 1|
    with pytest.raises(DomainError):
        disk_phi(0.0, 0.5)


def test_psi_examples():
    assert disk_psi(0.7, 0.7) == pytest.approx(math.pi)
    assert disk_psi(0.7, 0.0) == pytest.approx(math.pi / 2)
    assert disk_psi(0.8, 0.4) == pytest.approx(2 * math.pi / 3)
    with pytest.raises(DomainError):
        disk_psi(0.3, 0.4)


def test_classify_examples(rng):
    x, th = rng.random(1000), rng.uniform(-math.pi, math.pi, 1000)
    assert np.all(disk_classify(x, th, DiskStrategy(2.0, 1.0)) == CaseLabel.DISK1)
    assert np.all(disk_classify(x, th, DiskStrategy(0.0, 1.0)) == CaseLabel.DISK2)
    # forward distance 0.5 is more than r = 0.4, so the first leg stays inside
    assert disk_classify(0.5, 0.0, DiskStrategy(0.4, 1.0)) == CaseLabel.DISK2
    assert disk_classify(0.5, 0.0, DiskStrategy(0.6, 1.0)) == CaseLabel.DISK1
    assert disk_classify(0.0, 1.0, DiskStrategy(1.0, 1.0)) == CaseLabel.DISK1
    assert disk_classify(0.0, 1.0, DiskStrategy(0.99, 1.0)) == CaseLabel.DISK2


def test_length_examples():
    for th in (-2.0, 0.0, 1.3):
        assert disk_path_length(0.0, th, DiskStrategy(2.0, 0.3)) == pytest.approx(1.0)
    strat = DiskStrategy(0.5, math.radians(20))
    assert disk_path_length(0.5, math.radians(45), strat) == pytest.approx(
        realize(Region.DISK, (0.5, math.radians(45)), strat).total_length, abs=1e-10)


def test_straight_continuation(rng):
    x, th = rng.random(2000), rng.uniform(-math.pi, math.pi, 2000)
    for r in (0.0, 0.3, 1.0, 1.8):
        got = disk_path_length(x, th, DiskStrategy(r, math.pi))
        assert np.allclose(got, straight_length(x, th), rtol=0, atol=1e-12)


def test_both_omega_branches_match_oracle(rng):
    strat = DiskStrategy(0.3, 1.1)
    x, th = rng.uniform(0.35, 1.0, 4000), rng.uniform(-math.pi, math.pi, 4000)
    g = disk_geometry(x, th, strat)
    outer = (x >= strat.r) & (np.abs(th) > g.psi)
    case2 = disk_classify(x, th, strat) == CaseLabel.DISK2
    assert np.any(outer & case2) and np.any(~outer & case2)
    traced = [realize(Region.DISK, (a, b), strat).total_length for a, b in zip(x, th)]
    assert np.allclose(disk_path_length(x, th, strat), traced, rtol=0, atol=1e-10)


@settings(max_examples=300, deadline=None)
@given(st.floats(0, 1 - 1e-9), st.floats(-math.pi, math.pi), st.floats(0, 2),
       st.floats(0, math.pi))
def test_oracle_equivalence(x, theta, r, alpha):
    strat = DiskStrategy(r, alpha)
    length = disk_path_length(x, theta, strat)
    assert abs(length - realize(Region.DISK, (x, theta), strat).total_length) < 1e-10
    assert 1 - x - 1e-12 <= length <= r + 2 + 1e-12


def test_cancellation_near_pivot_at_centre():
    # y is tiny when the first leg ends near the centre; this used to lose
    # all precision in the printed arcsine form
    strat = DiskStrategy(0.5, 0.0)
    x = 0.5 + np.array([0.0, 1e-15, 1e-9, -1e-9])
    th = math.pi - np.array([0.0, 1e-16, 1e-8, 2e-8])
    traced = [realize(Region.DISK, (a, b), strat).total_length for a, b in zip(x, th)]
    assert np.allclose(disk_path_length(x, th, strat), traced, atol=1e-7)


def test_mirror_symmetry(rng):
    # (x, -theta) under a clockwise pivot is the mirror image of (x, theta)
    # under the counter-clockwise pivot; lengths agree pointwise
    strat = DiskStrategy(0.7, 1.2)
    for x, th in zip(rng.random(300), rng.uniform(-math.pi, math.pi, 300)):
        mirrored = raycast(Region.DISK, (x, 0.0), headings=[-th, -th - strat.alpha + math.pi],
                           caps=[strat.r, math.inf]).total_length
        assert disk_path_length(x, th, strat) == pytest.approx(mirrored, abs=1e-10)


def test_pointwise_theta_flip_is_not_a_symmetry():
    strat = DiskStrategy(0.7, 1.2)
    assert abs(disk_path_length(0.5, 2.0, strat) - disk_path_length(0.5, -2.0, strat)) > 1e-3


def test_geometry_s_is_nan_after_escape():
    g = disk_geometry(0.9, 0.0, DiskStrategy(0.5, 1.0))
    assert np.isnan(g.s)
    assert float(g.q) == pytest.approx(0.1)


def test_strategy_validation():
    with pytest.raises(DomainError):
        DiskStrategy(2.5, 1.0)
    with pytest.raises(DomainError):
        DiskStrategy(1.0, -0.1)
