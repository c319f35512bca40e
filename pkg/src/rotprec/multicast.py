"""Max-min common-rate covariance design across K >= 2 receivers.

The common message is decodable by everyone, so the multicast rate is the
minimum per-user rate and the design maximizes that minimum over the
trace-constrained covariance.  Three branches resolve it:

1..K) If some user's capacity-achieving covariance already leaves every
      other user at a higher rate, that covariance is optimal (the slowest
      user cannot do better than its own capacity).
K+1)  Otherwise ascend the exact min-rate with the rotation-parameterized
      optimizer under the linear power constraints only, warm-started
      from the best of the per-user optima.

The min of concave per-user rates is concave in the covariance, so
first-order ascent with the active user's gradient is sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analytic import ChannelSet, rate_of, wit_capacity
from .optimizer import OptimizerConfig, SolveReport, maximize
from .rotation import (
    RotationParams,
    build_covariance,
    decompose_covariance,
    power_constraints,
)

__all__ = ["MulticastProblem", "MulticastSolution", "multicast_solve", "min_rate"]

_TIE_WIDTH = 1e-6  # users within this many bits of the minimum are "active"


@dataclass(frozen=True)
class MulticastProblem:
    """A common-message design instance over K >= 2 receivers."""

    channels: ChannelSet
    config: OptimizerConfig = field(default_factory=OptimizerConfig)

    def __post_init__(self):
        if self.channels.num_users < 2:
            raise ValueError(
                f"multicasting needs at least two receivers, "
                f"got {self.channels.num_users}"
            )
        for k, h in enumerate(self.channels.channels):
            if not np.any(h != 0):
                raise ValueError(f"channel {k} is identically zero")


@dataclass(frozen=True)
class MulticastSolution:
    """Solved common-rate design.

    ``sub_case`` is 1..K when user k's capacity covariance was optimal
    outright, and K+1 when the numerical branch ran.
    """

    covariance: np.ndarray
    rate: float
    per_user_rates: np.ndarray
    sub_case: int
    report: Optional[SolveReport] = None


def min_rate(q: np.ndarray, channels: ChannelSet) -> float:
    """Common rate of covariance ``q``: the minimum per-user rate."""
    return min(rate_of(q, h) for h in channels.channels)


def multicast_solve(problem: MulticastProblem) -> MulticastSolution:
    """Maximize the common rate over the transmit covariance."""
    ch = problem.channels
    k_users = ch.num_users
    wits = [wit_capacity(h, ch.power) for h in ch.channels]

    # rates_at[k][j] = user j's rate under user k's capacity covariance
    rates_at = np.array(
        [[rate_of(w.covariance, h, validate=False) for h in ch.channels]
         for w in wits]
    )

    for k in range(k_users):
        others = np.delete(rates_at[k], k)
        if others.size and wits[k].rate <= others.min() + 1e-9:
            return MulticastSolution(
                covariance=wits[k].covariance,
                rate=float(rates_at[k].min()),
                per_user_rates=rates_at[k],
                sub_case=k + 1,
            )

    best_k = int(np.argmax(rates_at.min(axis=1)))
    start = decompose_covariance(wits[best_k].covariance)

    def all_rates(params: RotationParams) -> np.ndarray:
        q = build_covariance(params)
        return np.array([rate_of(q, h, validate=False) for h in ch.channels])

    def objective(params: RotationParams) -> float:
        return float(all_rates(params).min())

    def active_user_gradient(params: RotationParams) -> np.ndarray:
        """Averaged gradient of the users currently pinning the minimum.

        One finite-difference sweep evaluates every user's rate, then the
        columns of users within ``_TIE_WIDTH`` bits of the minimum are
        averaged.  Away from ties this equals the gradient of the exact
        min; at ties it is a centered subgradient that keeps ascent from
        stalling on the kink.
        """
        x = params.to_vector()
        m = params.m
        rates = all_rates(params)
        active = rates <= rates.min() + _TIE_WIDTH

        def rate_vec(xv: np.ndarray) -> np.ndarray:
            return all_rates(RotationParams.from_vector(m, xv))

        jac = np.empty((x.size, k_users))
        for i in range(x.size):
            h = problem.config.gradient_step * max(1.0, abs(x[i]))
            xp = x.copy()
            xp[i] += h
            if i < m and x[i] - h < 0.0:
                # one-sided at the weight lower bound, as in the optimizer
                jac[i] = (rate_vec(xp) - rates) / h
            else:
                xm = x.copy()
                xm[i] -= h
                jac[i] = (rate_vec(xp) - rate_vec(xm)) / (2.0 * h)
        return jac[:, active].mean(axis=1)

    report = maximize(
        objective,
        power_constraints(ch.m, ch.power),
        nonlinear=None,
        start=start,
        config=problem.config,
        gradient=active_user_gradient,
    )
    q_best = build_covariance(report.best_params)
    per_user = np.array([rate_of(q_best, h, validate=False) for h in ch.channels])
    return MulticastSolution(
        covariance=q_best,
        rate=float(per_user.min()),
        per_user_rates=per_user,
        sub_case=k_users + 1,
        report=report,
    )
