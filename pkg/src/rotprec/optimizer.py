"""Maximizer over rotation parameters with linear feasibility plus one
smooth scalar inequality.

The rotation parameterization leaves the power-budget polyhedron
``lambdas >= 0, sum(lambdas) <= P`` as the only hard constraint set, with
at most one extra smooth inequality ``g(r) >= 0`` (an energy floor).
Each local solve is delegated to SLSQP, the sequential quadratic
programming method of the same family as MATLAB's ``fmincon``; a
first-order projected-gradient ascent was measured to stall on spurious
parameter-space stationary points (rank-deficient warm starts make the
angle directions flat), falling far short of the known optima, while SQP
resolves them reliably.

Around the local solver this module supplies the contract: multi-start
(the caller's warm start first, then uniformly drawn angles and
simplex-distributed weights), feasibility restoration of near-feasible
results, best-feasible-candidate tracking so the returned objective never
falls below the start's, and full determinism for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .rotation import LinearConstraintSystem, RotationParams, angle_count

__all__ = [
    "OptimizerConfig",
    "SolveReport",
    "maximize",
    "finite_difference_gradient",
    "project_capped_simplex",
]


@dataclass(frozen=True)
class OptimizerConfig:
    """Tuning knobs for :func:`maximize`.

    Attributes:
        max_iterations: Iteration budget per local solve.
        gradient_step: Relative step for central finite differences.
        convergence_tol: Objective-change stopping tolerance of the
            local solver.
        constraint_tol: Feasibility tolerance for all constraints.
        restarts: Total number of starts (warm start included).
        penalty_init, penalty_growth: Schedule reserved for penalty-style
            constraint handling; the SQP backend enforces the inequality
            directly and does not consume them.
        rng_seed: Seed for the restart draws.
    """

    max_iterations: int = 200
    gradient_step: float = 1e-6
    convergence_tol: float = 1e-8
    constraint_tol: float = 1e-7
    restarts: int = 8
    penalty_init: float = 10.0
    penalty_growth: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        for name in ("gradient_step", "convergence_tol", "constraint_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.penalty_init <= 0 or self.penalty_growth <= 1:
            raise ValueError("penalty schedule must grow from a positive start")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a :func:`maximize` call."""

    best_params: RotationParams
    objective: float
    constraint_residuals: np.ndarray
    iterations_used: int
    restarts_used: int
    converged: bool


def finite_difference_gradient(
    f: Callable[[np.ndarray], float],
    x: np.ndarray,
    step: float = 1e-6,
    *,
    lower_bounded: int = 0,
) -> np.ndarray:
    """Central-difference gradient with per-coordinate scaled steps.

    The step for coordinate ``i`` is ``step * max(1, |x_i|)``.  The first
    ``lower_bounded`` coordinates are treated as constrained to be
    non-negative: when a central sample would cross below zero the
    difference falls back to a one-sided forward quotient so the function
    is never evaluated at an infeasible point.
    """
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    fx = None
    for i in range(x.size):
        h = step * max(1.0, abs(x[i]))
        xp = x.copy()
        xp[i] += h
        if i < lower_bounded and x[i] - h < 0.0:
            if fx is None:
                fx = f(x)
            grad[i] = (f(xp) - fx) / h
        else:
            xm = x.copy()
            xm[i] -= h
            grad[i] = (f(xp) - f(xm)) / (2.0 * h)
    return grad


def project_capped_simplex(v: np.ndarray, cap: float) -> np.ndarray:
    """Euclidean projection onto ``{x : x >= 0, sum(x) <= cap}``.

    When clipping negatives already satisfies the budget that is the
    projection; otherwise project onto the simplex ``sum(x) == cap`` by
    the sorted-threshold rule.
    """
    v = np.asarray(v, dtype=float)
    clipped = np.maximum(v, 0.0)
    if clipped.sum() <= cap:
        return clipped
    u = np.sort(v)[::-1]
    excess = np.cumsum(u) - cap
    counts = np.arange(1, v.size + 1)
    rho = counts[u - excess / counts > 0][-1]
    tau = excess[rho - 1] / rho
    return np.maximum(v - tau, 0.0)


def maximize(
    objective: Callable[[RotationParams], float],
    linear: LinearConstraintSystem,
    nonlinear: Optional[Callable[[RotationParams], float]] = None,
    start: RotationParams = None,
    config: Optional[OptimizerConfig] = None,
    *,
    gradient: Optional[Callable[[RotationParams], np.ndarray]] = None,
    extra_starts: Iterable[RotationParams] = (),
) -> SolveReport:
    """Maximize ``objective`` subject to ``A r <= b`` and optionally ``g(r) >= 0``.

    Args:
        objective: Smooth function of :class:`RotationParams` to maximize.
        linear: Power-form constraint system (see
            :func:`rotprec.rotation.power_constraints`).
        nonlinear: Optional smooth inequality, feasible iff ``>= 0``.
        start: Feasible warm start; it must also satisfy ``nonlinear``.
        config: Solver settings; defaults to ``OptimizerConfig()``.
        gradient: Optional objective-gradient hook replacing the internal
            finite differences (e.g. a subgradient rule for a min of
            smooth terms).
        extra_starts: Additional deterministic warm starts, e.g. the
            solution of a neighboring problem.  Counted against the
            ``restarts`` budget; they need not be feasible.

    Returns:
        :class:`SolveReport` whose point is feasible within
        ``constraint_tol`` and whose objective never falls below the
        start's.

    Raises:
        ValueError: Infeasible or non-finite start, or a constraint
            system that is not in power form.
    """
    if start is None:
        raise ValueError("a feasible start point is required")
    cfg = config if config is not None else OptimizerConfig()
    if not linear.is_power_form():
        raise ValueError("linear system is not the canonical power-budget form")
    m = linear.dimension
    budget = linear.power_budget
    dim = m + 2 * angle_count(m)

    def clamp(x: np.ndarray) -> np.ndarray:
        """Snap tiny bound violations so the objective is always evaluable."""
        out = np.array(x, dtype=float)
        out[:m] = np.maximum(out[:m], 0.0)
        total = out[:m].sum()
        if total > budget:
            out[:m] *= budget / total
        return out

    def f_vec(x: np.ndarray) -> float:
        return float(objective(RotationParams.from_vector(m, clamp(x))))

    g_vec = None
    if nonlinear is not None:
        def g_vec(x: np.ndarray) -> float:
            return float(nonlinear(RotationParams.from_vector(m, clamp(x))))

    x0 = start.to_vector()
    if x0.size != dim:
        raise ValueError("start does not match the constraint dimension")
    if linear.residuals(x0).max(initial=0.0) > cfg.constraint_tol:
        raise ValueError("start violates the linear constraints")
    f0 = f_vec(x0)
    if not np.isfinite(f0):
        raise ValueError("objective is not finite at the start point")
    if g_vec is not None and g_vec(x0) < -cfg.constraint_tol:
        raise ValueError("start violates the nonlinear constraint")

    if gradient is not None:
        def grad_f(x: np.ndarray) -> np.ndarray:
            return np.asarray(
                gradient(RotationParams.from_vector(m, clamp(x))), dtype=float
            )
    else:
        def grad_f(x: np.ndarray) -> np.ndarray:
            return finite_difference_gradient(
                f_vec, x, cfg.gradient_step, lower_bounded=m
            )

    rng = np.random.default_rng(cfg.rng_seed)
    starts = [x0]
    for p in extra_starts:
        starts.append(clamp(p.to_vector()))
    while len(starts) < cfg.restarts:
        lam = rng.dirichlet(np.ones(m)) * budget
        angles = rng.uniform(-np.pi, np.pi, dim - m)
        starts.append(np.concatenate([lam, angles]))

    def feasible(x: np.ndarray) -> bool:
        if linear.residuals(x).max(initial=0.0) > cfg.constraint_tol:
            return False
        return g_vec is None or g_vec(x) >= -cfg.constraint_tol

    def restore(x: np.ndarray) -> np.ndarray:
        """Blend a near-feasible result toward the feasible caller start."""
        x = clamp(x)
        if g_vec is None or g_vec(x) >= 0.0:
            return x
        target = min(0.0, g_vec(x0))
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if g_vec(x0 + mid * (x - x0)) >= target:
                lo = mid
            else:
                hi = mid
        return x0 + lo * (x - x0)

    # The raw start is the fall-back candidate, so the returned objective
    # can never drop below the start's.
    best_x, best_f, best_conv = x0, f0, None
    total_iters = 0
    for idx, x_s in enumerate(starts):
        result = _slsqp(f_vec, grad_f, g_vec, x_s, m, budget, cfg)
        total_iters += result.nit
        if idx == 0 and best_conv is None:
            # If nothing ever beats the warm start, convergence is that of
            # the local solve launched from it.
            best_conv = bool(result.success)
        x_c = restore(result.x)
        if not feasible(x_c):
            continue
        f_c = f_vec(x_c)
        if f_c > best_f:
            best_x, best_f, best_conv = x_c, f_c, bool(result.success)

    residuals = linear.residuals(best_x)
    if g_vec is not None:
        residuals = np.append(residuals, max(0.0, -g_vec(best_x)))
    feasible_enough = residuals.max(initial=0.0) <= cfg.constraint_tol
    converged = bool(best_conv and feasible_enough)

    return SolveReport(
        best_params=RotationParams.from_vector(m, clamp(best_x)),
        objective=best_f,
        constraint_residuals=residuals,
        iterations_used=total_iters,
        restarts_used=len(starts),
        converged=converged,
    )


def _slsqp(f_vec, grad_f, g_vec, x_s, m, budget, cfg):
    """One SLSQP descent on the negated objective."""
    bounds = [(0.0, None)] * m + [(None, None)] * (x_s.size - m)
    lin_jac = np.zeros(x_s.size)
    lin_jac[:m] = -1.0
    constraints = [
        {
            "type": "ineq",
            "fun": lambda x: budget - x[:m].sum(),
            "jac": lambda x: lin_jac,
        }
    ]
    if g_vec is not None:
        constraints.append(
            {
                "type": "ineq",
                "fun": g_vec,
                "jac": lambda x: finite_difference_gradient(
                    g_vec, x, cfg.gradient_step, lower_bounded=m
                ),
            }
        )
    return _scipy_minimize(
        lambda x: -f_vec(x),
        x_s,
        jac=lambda x: -grad_f(x),
        method="SLSQP",
        bounds=bounds,
        constraints=constraints,
        options={"maxiter": cfg.max_iterations, "ftol": cfg.convergence_tol},
    )
