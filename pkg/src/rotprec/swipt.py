"""Rate-energy trade-off for one information and one energy receiver.

For an energy floor ``E_bar = E_min + q * (E_max - E_min)`` the solver
maximizes the information rate to receiver 1 subject to receiver 2
harvesting at least ``E_bar``.  ``E_min`` is the energy harvested when
receiver 1 runs at capacity; ``E_max`` is the peak harvest.  The two
endpoints ``q = 0`` and ``q = 1`` therefore reduce to the analytic
water-filling and eigenbeam solutions, and intermediate thresholds run
the rotation-parameterized optimizer warm-started from the peak-harvest
covariance, which is always feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .analytic import ChannelSet, eh_max, energy_of, rate_of, wit_capacity
from .optimizer import OptimizerConfig, SolveReport, maximize
from .rotation import (
    RotationParams,
    build_covariance,
    build_unitary,
    decompose_covariance,
    power_constraints,
)

__all__ = [
    "SwiptProblem",
    "RateEnergyPoint",
    "energy_bounds",
    "swipt_solve",
    "rate_energy_region",
]


@dataclass(frozen=True)
class SwiptProblem:
    """One rate-energy solve: a two-receiver channel set and a threshold
    fraction ``q`` in [0, 1]."""

    channels: ChannelSet
    q: float
    config: OptimizerConfig = field(default_factory=OptimizerConfig)

    def __post_init__(self):
        if self.channels.num_users != 2:
            raise ValueError(
                f"need exactly two channels (information, energy), "
                f"got {self.channels.num_users}"
            )
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"threshold fraction must be in [0, 1], got {self.q}")


@dataclass(frozen=True)
class RateEnergyPoint:
    """A point on (or inside) the rate-energy boundary."""

    rate: float
    energy: float
    q: float
    covariance: np.ndarray
    threshold_clamped: bool = False
    report: Optional[SolveReport] = None


def energy_bounds(channels: ChannelSet) -> tuple[float, float]:
    """Energy extremes (E_min, E_max) of the trade-off for a channel pair.

    ``E_min`` is the harvest while receiver 1 runs at capacity;
    ``E_max`` is the best harvest irrespective of rate.
    """
    h1, h2 = channels.channels[0], channels.channels[1]
    wit = wit_capacity(h1, channels.power)
    e_min = energy_of(wit.covariance, h2, channels.eta)
    _, e_max = eh_max(h2, channels.power, channels.eta)
    return e_min, e_max


def _shared_covariance_cache(m: int):
    """One-slot cache mapping a parameter vector to its covariance.

    The optimizer evaluates the rate objective and the energy constraint
    at the same point back to back; sharing the rotation build roughly
    halves the cost of each penalized evaluation.
    """
    slot = {}

    def cov_of(params: RotationParams) -> np.ndarray:
        key = params.to_vector().tobytes()
        if slot.get("key") != key:
            slot["key"] = key
            slot["q"] = build_covariance(params)
        return slot["q"]

    return cov_of


def swipt_solve(
    problem: SwiptProblem,
    extra_starts: Sequence[RotationParams] = (),
) -> RateEnergyPoint:
    """Solve one threshold of the rate-energy trade-off.

    ``q = 0`` returns the water-filling solution directly and ``q = 1``
    the peak-harvest solution; in between, the rate is maximized under
    the energy floor with the optimizer warm-started from the
    peak-harvest covariance (plus any ``extra_starts``).
    """
    ch = problem.channels
    h1, h2 = ch.channels[0], ch.channels[1]
    q_frac = problem.q

    wit = wit_capacity(h1, ch.power)
    e_min = energy_of(wit.covariance, h2, ch.eta)
    eh_cov, e_max = eh_max(h2, ch.power, ch.eta)

    if q_frac == 0.0:
        return RateEnergyPoint(wit.rate, e_min, 0.0, wit.covariance)
    if q_frac == 1.0:
        return RateEnergyPoint(rate_of(eh_cov, h1), e_max, 1.0, eh_cov)

    e_bar = e_min + q_frac * (e_max - e_min)
    clamped = e_bar > e_max
    if clamped:  # only reachable through floating-point noise
        e_bar = e_max

    cov_of = _shared_covariance_cache(ch.m)

    def rate_objective(params: RotationParams) -> float:
        return rate_of(cov_of(params), h1, validate=False)

    def energy_margin(params: RotationParams) -> float:
        return energy_of(cov_of(params), h2, ch.eta) - e_bar

    start = decompose_covariance(eh_cov)
    report = maximize(
        rate_objective,
        power_constraints(ch.m, ch.power),
        nonlinear=energy_margin,
        start=start,
        config=problem.config,
        extra_starts=extra_starts,
    )
    q_best = build_covariance(report.best_params)
    return RateEnergyPoint(
        rate=rate_of(q_best, h1, validate=False),
        energy=energy_of(q_best, h2, ch.eta),
        q=q_frac,
        covariance=q_best,
        threshold_clamped=clamped,
        report=report,
    )


def rate_energy_region(
    channels: ChannelSet,
    num_points: int,
    config: Optional[OptimizerConfig] = None,
) -> list[RateEnergyPoint]:
    """Trace the rate-energy boundary at evenly spaced threshold fractions.

    Points are solved in ascending ``q`` with the previous optimum chained
    in as an extra warm start.  A backward enforcement pass then re-solves
    any point whose rate falls below its higher-threshold neighbor (the
    neighbor's solution is feasible for the looser floor), so the returned
    rates are non-increasing and energies non-decreasing in ``q``.
    """
    if num_points < 2:
        raise ValueError(f"need at least two sweep points, got {num_points}")
    cfg = config if config is not None else OptimizerConfig()
    qs = np.linspace(0.0, 1.0, num_points)

    points: list[RateEnergyPoint] = []
    prev_params: Optional[RotationParams] = None
    for q in qs:
        extra = (prev_params,) if prev_params is not None else ()
        point = swipt_solve(SwiptProblem(channels, float(q), cfg), extra)
        points.append(point)
        if 0.0 < q < 1.0 and point.report is not None:
            prev_params = point.report.best_params

    # Backward pass: a lower-threshold point must not be out-rated by a
    # higher-threshold one.
    for k in range(num_points - 2, 0, -1):
        if points[k].rate < points[k + 1].rate - 1e-9:
            better = decompose_covariance(points[k + 1].covariance)
            points[k] = swipt_solve(
                SwiptProblem(channels, float(qs[k]), cfg), (better,)
            )

    # Replace any point weakly dominated by its lower-threshold neighbor.
    for k in range(1, num_points):
        prev = points[k - 1]
        cur = points[k]
        if prev.energy > cur.energy and prev.rate >= cur.rate:
            points[k] = RateEnergyPoint(
                prev.rate, prev.energy, cur.q, prev.covariance,
                threshold_clamped=cur.threshold_clamped, report=cur.report,
            )
    return points
