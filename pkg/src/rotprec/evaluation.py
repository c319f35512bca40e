"""Random-trial baselines and frontier dominance checks.

Random covariances are drawn through the same rotation parameterization
the solvers use: angles uniform in (-pi, pi], weights uniform on the
simplex scaled to the full power budget (rate and energy are monotone in
a scaling of the covariance, so full-budget samples are the relevant
comparison cloud).  Sampling is counter-seeded per sample, so sample i
is the same regardless of the requested count or evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import ChannelSet, energy_of, rate_of
from .rotation import RotationParams, angle_count, build_covariance
from .swipt import RateEnergyPoint

__all__ = [
    "TrialCloud",
    "DominanceReport",
    "sample_random_covariances",
    "swipt_trial_cloud",
    "multicast_trial_cloud",
    "relative_improvement",
    "dominance_check",
]


@dataclass(frozen=True)
class TrialCloud:
    """Random-trial results: (rate, energy) rows, or min-rates only."""

    points: np.ndarray
    seed: int
    count: int

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        if len(self.points) != self.count:
            raise ValueError(
                f"count {self.count} disagrees with {len(self.points)} points"
            )


@dataclass(frozen=True)
class DominanceReport:
    """Cloud points that beat the interpolated frontier by more than tol."""

    indices: np.ndarray
    excesses: np.ndarray
    tol: float

    @property
    def frontier_dominates(self) -> bool:
        return self.indices.size == 0


def _sample_params(m: int, power: float, seed: int, index: int) -> RotationParams:
    rng = np.random.default_rng([seed, index])
    lam = rng.dirichlet(np.ones(m)) * power
    angles = rng.uniform(-np.pi, np.pi, 2 * angle_count(m))
    n = angle_count(m)
    return RotationParams(m, lam, angles[:n], angles[n:])


def sample_random_covariances(
    m: int, power: float, count: int, seed: int
) -> list[np.ndarray]:
    """Draw ``count`` full-budget PSD covariances deterministically."""
    if count < 1:
        raise ValueError(f"need at least one sample, got {count}")
    return [
        build_covariance(_sample_params(m, power, seed, i)) for i in range(count)
    ]


def swipt_trial_cloud(channels: ChannelSet, count: int, seed: int) -> TrialCloud:
    """(rate, energy) pairs of random covariances for a two-receiver set."""
    h1, h2 = channels.channels[0], channels.channels[1]
    pts = np.empty((count, 2))
    for i in range(count):
        q = build_covariance(_sample_params(channels.m, channels.power, seed, i))
        pts[i, 0] = rate_of(q, h1, validate=False)
        pts[i, 1] = energy_of(q, h2, channels.eta)
    return TrialCloud(points=pts, seed=seed, count=count)


def multicast_trial_cloud(channels: ChannelSet, count: int, seed: int) -> TrialCloud:
    """Min-rates of random covariances across all receivers."""
    pts = np.empty(count)
    for i in range(count):
        q = build_covariance(_sample_params(channels.m, channels.power, seed, i))
        pts[i] = min(rate_of(q, h, validate=False) for h in channels.channels)
    return TrialCloud(points=pts, seed=seed, count=count)


def relative_improvement(new_rate: float, base_rate: float) -> float:
    """Percent rate change of ``new_rate`` over ``base_rate``.

    Positive means ``new_rate`` is higher.
    """
    if base_rate <= 0:
        raise ValueError(f"baseline rate must be positive, got {base_rate}")
    return (new_rate - base_rate) / base_rate * 100.0


def dominance_check(
    frontier: list[RateEnergyPoint], cloud: TrialCloud, tol: float
) -> DominanceReport:
    """Check that no cloud point rises above the piecewise-linear frontier.

    The frontier rate is interpolated linearly in energy (a lower bound
    on the true concave boundary, so the check is conservative) and
    extended flat beyond its energy extremes.
    """
    if not frontier:
        raise ValueError("frontier is empty")
    if cloud.count == 0:
        raise ValueError("cloud is empty")
    if cloud.points.ndim != 2 or cloud.points.shape[1] != 2:
        raise ValueError("dominance check needs a (rate, energy) cloud")
    energies = np.array([p.energy for p in frontier])
    rates = np.array([p.rate for p in frontier])
    order = np.argsort(energies)
    bound = np.interp(cloud.points[:, 1], energies[order], rates[order])
    excess = cloud.points[:, 0] - bound
    bad = np.flatnonzero(excess > tol)
    return DominanceReport(indices=bad, excesses=excess[bad], tol=tol)
