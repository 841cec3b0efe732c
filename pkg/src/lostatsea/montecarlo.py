"""Seeded Monte Carlo estimates of escape-length distributions.

Samples are drawn in fixed-size chunks, each with its own child of a
``SeedSequence``, so results are bit-identical for a given ``(n, seed)``
however the chunks are scheduled.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .disk import DiskStrategy, disk_path_length, straight_length
from .oracle import Region, realize
from .strip import (NoPivot, Strategy2, Strategy3, normalize_state, straight_path_length,
                    strip2_path_length, strip3_path_length)

CHUNK = 1 << 20


class HeavyTailWarning(UserWarning):
    """A few extreme samples dominate the sample mean."""


@dataclass(frozen=True)
class McEstimate:
    point: float
    std_error: float
    n: int
    seed: int
    lo: float = None
    hi: float = None

    def to_dict(self):
        d = {"point": self.point, "std_error": self.std_error, "n": self.n, "seed": self.seed}
        if self.lo is not None:
            d["ci"] = [self.lo, self.hi]
        return d


def _region(region):
    return Region(region) if not isinstance(region, Region) else region


def sample_state(region, rng, n, radial="area"):
    """Draw ``n`` random initial states ``(x, theta)``.

    Strip: ``x ~ U[0,1]``, ``theta ~ U[-pi, pi]``, then folded onto
    ``[0, pi]``. Disk: the start is uniform over the disk area, so its radius
    is ``sqrt(U)``; ``radial="uniform"`` draws the radius uniformly instead.
    """
    region = _region(region)
    if region is Region.STRIP:
        x = rng.random(n)
        theta = rng.uniform(-np.pi, np.pi, n)
        return normalize_state(x, theta)
    u = rng.random(n)
    if radial == "area":
        x = np.sqrt(u)
    elif radial == "uniform":
        x = u
    else:
        raise ValueError(f"radial must be 'area' or 'uniform', got {radial!r}")
    return x, rng.uniform(-np.pi, np.pi, n)


def path_lengths(region, x, theta, strat):
    """Vectorised analytic escape lengths for any supported strategy."""
    region = _region(region)
    if region is Region.STRIP:
        if isinstance(strat, NoPivot):
            return straight_path_length(x, theta)
        if isinstance(strat, Strategy3):
            return strip3_path_length(x, theta, strat)
        if isinstance(strat, Strategy2):
            return strip2_path_length(x, theta, strat)
    else:
        if isinstance(strat, NoPivot):
            return straight_length(x, theta)
        if isinstance(strat, DiskStrategy):
            return disk_path_length(x, theta, strat)
    raise TypeError(f"strategy {strat!r} does not apply to the {region.value}")


def _chunks(n, seed):
    sizes = [CHUNK] * (n // CHUNK) + ([n % CHUNK] if n % CHUNK else [])
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    for size, child in zip(sizes, children):
        yield size, np.random.default_rng(child)


def simulate(region, strat, n, seed, radial="area", x=None):
    """All ``n`` sampled escape lengths, in chunk order.

    ``x`` pins the starting coordinate (the heading stays random).
    """
    out = np.empty(n)
    pos = 0
    for size, rng in _chunks(n, seed):
        xs, th = sample_state(region, rng, size, radial)
        if x is not None:
            xs = np.full(size, float(x))
        out[pos:pos + size] = path_lengths(region, xs, th, strat)
        pos += size
    return out


def estimate_mean(region, strat, n, seed, radial="area", x=None, tail_fraction=1e-3,
                  tail_share=0.1):
    """Sample mean and standard error of the escape length.

    Emits HeavyTailWarning when the largest ``tail_fraction`` of samples
    carries more than ``tail_share`` of the total.
    """
    if n < 1000:
        raise ValueError("n must be at least 1000")
    lengths = simulate(region, strat, n, seed, radial, x)
    total = math.fsum(lengths)
    mean = total / n
    var = math.fsum((lengths - mean) ** 2) / (n - 1)
    k = max(1, int(n * tail_fraction))
    top = np.partition(lengths, n - k)[n - k:]
    if total > 0 and math.fsum(top) > tail_share * total:
        warnings.warn(
            f"top {tail_fraction:.2%} of samples carry {math.fsum(top) / total:.1%} of the "
            "mean; the mean may not exist", HeavyTailWarning, stacklevel=2)
    return McEstimate(mean, math.sqrt(var / n), n, seed)


def median_ci(sorted_values, confidence=0.99):
    """Distribution-free confidence interval for the median from order statistics."""
    n = len(sorted_values)
    lo = int(binom.ppf((1 - confidence) / 2, n, 0.5))
    hi = int(binom.isf((1 - confidence) / 2, n, 0.5))
    lo = min(max(lo - 1, 0), n - 1)
    hi = min(max(hi, 0), n - 1)
    return float(sorted_values[lo]), float(sorted_values[hi])


def estimate_median(region, strat, n, seed, radial="area", confidence=0.99):
    """Sample median with a binomial order-statistic interval.

    ``std_error`` holds the interval half-width.
    """
    if n < 1000:
        raise ValueError("n must be at least 1000")
    lengths = np.sort(simulate(region, strat, n, seed, radial))
    med = float(np.median(lengths))
    lo, hi = median_ci(lengths, confidence)
    return McEstimate(med, max(hi - med, med - lo), n, seed, lo, hi)


def sweep_median(region, strategies, n, seed, radial="area"):
    """Median for each strategy on a grid; returns a list of row dicts."""
    rows = []
    for strat in strategies:
        est = estimate_median(region, strat, n, seed, radial)
        row = {"strategy": type(strat).__name__}
        row.update({k: float(v) for k, v in vars(strat).items()})
        row.update({"median": est.point, "half_width": est.std_error})
        rows.append(row)
    return rows


def realizations(region, strat, states):
    """Traced polylines for explicit ``(x, theta)`` states (for plotting)."""
    region = _region(region)
    return [realize(region, st, strat) for st in states]
