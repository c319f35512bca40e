"""Rotation-parameterized MIMO transmit covariance design.

The covariance ``Q = V diag(lambdas) V^H`` is parameterized by complex
Givens rotation angles for ``V`` and non-negative power weights, which
turns semidefinite feasibility into linear constraints.  On top of that
parameterization the package solves the rate-energy trade-off for a
joint information/energy-harvesting transmission and the max-min
common-rate multicasting problem, validated against analytic
sub-solutions and random-trial baselines.
"""

from .analytic import (
    ChannelSet,
    WitSolution,
    eh_max,
    energy_of,
    rate_of,
    water_fill,
    wit_capacity,
)
from .channel_io import (
    ChannelDimensionError,
    ChannelFormatError,
    dump_channel_set,
    load_channel_set,
)
from .demo_channels import pair_a, pair_b, three_user
from .evaluation import (
    DominanceReport,
    TrialCloud,
    dominance_check,
    multicast_trial_cloud,
    relative_improvement,
    sample_random_covariances,
    swipt_trial_cloud,
)
from .multicast import MulticastProblem, MulticastSolution, min_rate, multicast_solve
from .optimizer import (
    OptimizerConfig,
    SolveReport,
    finite_difference_gradient,
    maximize,
    project_capped_simplex,
)
from .rotation import (
    LinearConstraintSystem,
    RotationParams,
    build_covariance,
    build_unitary,
    check_covariance,
    decompose_covariance,
    givens_block,
    pair_order,
    power_constraints,
)
from .swipt import (
    RateEnergyPoint,
    SwiptProblem,
    energy_bounds,
    rate_energy_region,
    swipt_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelSet",
    "WitSolution",
    "water_fill",
    "wit_capacity",
    "eh_max",
    "rate_of",
    "energy_of",
    "ChannelFormatError",
    "ChannelDimensionError",
    "load_channel_set",
    "dump_channel_set",
    "pair_a",
    "pair_b",
    "three_user",
    "TrialCloud",
    "DominanceReport",
    "sample_random_covariances",
    "swipt_trial_cloud",
    "multicast_trial_cloud",
    "relative_improvement",
    "dominance_check",
    "MulticastProblem",
    "MulticastSolution",
    "multicast_solve",
    "min_rate",
    "OptimizerConfig",
    "SolveReport",
    "maximize",
    "finite_difference_gradient",
    "project_capped_simplex",
    "RotationParams",
    "LinearConstraintSystem",
    "pair_order",
    "givens_block",
    "build_unitary",
    "build_covariance",
    "decompose_covariance",
    "check_covariance",
    "power_constraints",
    "SwiptProblem",
    "RateEnergyPoint",
    "energy_bounds",
    "swipt_solve",
    "rate_energy_region",
]
