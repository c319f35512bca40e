"""Complex Givens-rotation parameterization of Hermitian PSD matrices.

A transmit covariance matrix is factored as ``Q = V diag(lambdas) V^H``
where ``V`` is a product of complex Givens rotations.  Each rotation acts
on one coordinate pair ``(i, j)`` and carries a rotation angle ``theta``
and a phase ``phi``, so an ``m x m`` unitary needs ``m*(m-1)`` angles in
total.  Under this map the semidefinite and power constraints on ``Q``
collapse to linear constraints on the power weights alone: ``lambdas >= 0``
and ``sum(lambdas) <= P``.  The angles are unconstrained reals.

Indices in this module are zero-based.  The product order is fixed:
``V = G(0,1) G(0,2) ... G(0,m-1) G(1,2) ... G(m-2,m-1)`` with the first
index outer and the second inner, multiplied left to right.

:func:`decompose_covariance` inverts the map.  It eigendecomposes ``Q``,
then annihilates the below-diagonal entries of the eigenvector matrix by
right-multiplying conjugated rotation blocks in reverse product order;
the residual per-column phases (eigenvectors are defined only up to a
unit phase) are commuted through the product and dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "RotationParams",
    "LinearConstraintSystem",
    "pair_order",
    "angle_count",
    "givens_block",
    "build_unitary",
    "build_covariance",
    "decompose_covariance",
    "check_covariance",
    "power_constraints",
]


@lru_cache(maxsize=None)
def pair_order(m: int) -> tuple[tuple[int, int], ...]:
    """Fixed ordering of the rotated coordinate pairs for dimension ``m``."""
    return tuple((i, j) for i in range(m - 1) for j in range(i + 1, m))


def angle_count(m: int) -> int:
    """Number of (theta, phi) pairs for dimension ``m``, i.e. m*(m-1)/2."""
    return m * (m - 1) // 2


@dataclass(frozen=True)
class RotationParams:
    """Optimization variable: power weights plus Givens angle pairs.

    Attributes:
        m: Transmit dimension (number of antennas).
        lambdas: ``m`` real power weights in watts.  Feasible points have
            ``lambdas >= 0`` and ``sum(lambdas) <= P``; the container
            itself stores arbitrary reals.
        thetas: ``m*(m-1)/2`` rotation angles in radians, one per pair in
            :func:`pair_order`.
        phis: ``m*(m-1)/2`` phase angles in radians, same ordering.
    """

    m: int
    lambdas: np.ndarray
    thetas: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"dimension must be >= 1, got {self.m}")
        object.__setattr__(self, "lambdas", np.asarray(self.lambdas, dtype=float))
        object.__setattr__(self, "thetas", np.asarray(self.thetas, dtype=float))
        object.__setattr__(self, "phis", np.asarray(self.phis, dtype=float))
        n = angle_count(self.m)
        if self.lambdas.shape != (self.m,):
            raise ValueError(
                f"expected {self.m} power weights, got shape {self.lambdas.shape}"
            )
        if self.thetas.shape != (n,) or self.phis.shape != (n,):
            raise ValueError(
                f"expected {n} rotation and {n} phase angles for m={self.m}, "
                f"got shapes {self.thetas.shape} and {self.phis.shape}"
            )

    def to_vector(self) -> np.ndarray:
        """Stack as a flat vector ``[lambdas, thetas, phis]``."""
        return np.concatenate([self.lambdas, self.thetas, self.phis])

    @classmethod
    def from_vector(cls, m: int, vec: np.ndarray) -> "RotationParams":
        """Inverse of :meth:`to_vector`."""
        vec = np.asarray(vec, dtype=float)
        n = angle_count(m)
        if vec.shape != (m + 2 * n,):
            raise ValueError(f"expected vector of length {m + 2 * n}, got {vec.shape}")
        return cls(m, vec[:m], vec[m : m + n], vec[m + n :])

    @classmethod
    def zero_rotation(cls, lambdas) -> "RotationParams":
        """Params with all angles zero, i.e. a diagonal covariance."""
        lambdas = np.asarray(lambdas, dtype=float)
        n = angle_count(lambdas.size)
        return cls(lambdas.size, lambdas, np.zeros(n), np.zeros(n))


@dataclass(frozen=True)
class LinearConstraintSystem:
    """Linear feasibility system ``a @ r <= b`` over stacked parameters.

    For dimension ``m`` with power budget ``P`` the system has ``m + 1``
    rows: rows ``0..m-1`` encode ``-lambda_i <= 0`` and the last row
    encodes ``sum(lambdas) <= P``.  All angle columns are zero.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        if self.a.ndim != 2 or self.b.shape != (self.a.shape[0],):
            raise ValueError("constraint matrix and bound vector shapes disagree")

    @property
    def dimension(self) -> int:
        return self.a.shape[0] - 1

    @property
    def power_budget(self) -> float:
        return float(self.b[-1])

    def residuals(self, vec: np.ndarray) -> np.ndarray:
        """Row-wise violations ``max(0, a @ vec - b)``."""
        return np.maximum(self.a @ vec - self.b, 0.0)

    def is_power_form(self) -> bool:
        """True when the system is the canonical power-budget polyhedron."""
        m = self.dimension
        n_alpha = m * (m - 1)
        if self.a.shape != (m + 1, m + n_alpha):
            return False
        expected = np.zeros_like(self.a)
        expected[:m, :m] = -np.eye(m)
        expected[m, :m] = 1.0
        return (
            np.array_equal(self.a, expected)
            and np.all(self.b[:m] == 0.0)
            and self.b[m] > 0
        )


def power_constraints(m: int, power: float) -> LinearConstraintSystem:
    """Canonical feasible set ``lambdas >= 0``, ``sum(lambdas) <= power``."""
    if power <= 0:
        raise ValueError(f"power budget must be positive, got {power}")
    n_alpha = m * (m - 1)
    a = np.zeros((m + 1, m + n_alpha))
    a[:m, :m] = -np.eye(m)
    a[m, :m] = 1.0
    b = np.zeros(m + 1)
    b[m] = power
    return LinearConstraintSystem(a, b)


def givens_block(m: int, i: int, j: int, theta: float, phi: float) -> np.ndarray:
    """Single complex Givens rotation embedded in an ``m x m`` identity.

    The four non-identity entries are::

        [ (i,i)  (i,j) ]   [ cos(theta)            -exp(-1j*phi)*sin(theta) ]
        [ (j,i)  (j,j) ] = [ exp(1j*phi)*sin(theta)  cos(theta)             ]

    Args:
        m: Ambient dimension.
        i, j: Zero-based coordinate pair, ``0 <= i < j < m``.
        theta: Rotation angle in radians.
        phi: Phase angle in radians.

    Returns:
        (m, m) complex unitary matrix.
    """
    if not (0 <= i < j < m):
        raise ValueError(f"need 0 <= i < j < m, got i={i}, j={j}, m={m}")
    g = np.eye(m, dtype=complex)
    c = np.cos(theta)
    s = np.sin(theta)
    g[i, i] = c
    g[i, j] = -np.exp(-1j * phi) * s
    g[j, i] = np.exp(1j * phi) * s
    g[j, j] = c
    return g


def build_unitary(params: RotationParams) -> np.ndarray:
    """Multiply out the rotation product ``V`` for the given angles.

    Blocks are applied left to right in the :func:`pair_order` sequence.
    Each block only touches two columns of the running product, so the
    full build is O(m^3).
    """
    m = params.m
    v = np.eye(m, dtype=complex)
    if m == 1:
        return v
    c = np.cos(params.thetas)
    s = np.sin(params.thetas)
    e = np.exp(1j * params.phis)
    for k, (i, j) in enumerate(pair_order(m)):
        col_i = v[:, i].copy()
        col_j = v[:, j]
        v[:, i] = c[k] * col_i + (e[k] * s[k]) * col_j
        v[:, j] = (-np.conj(e[k]) * s[k]) * col_i + c[k] * col_j
    return v


def build_covariance(params: RotationParams, *, lambda_tol: float = 1e-12) -> np.ndarray:
    """Form ``Q = V diag(lambdas) V^H`` from rotation parameters.

    Args:
        params: Rotation parameters; ``lambdas`` must be non-negative
            (a feasible point).
        lambda_tol: Negative weights above ``-lambda_tol`` are treated as
            rounding noise and clamped to zero.

    Returns:
        (m, m) complex Hermitian PSD matrix with trace ``sum(lambdas)``.

    Raises:
        ValueError: If any weight is negative beyond ``lambda_tol``.
    """
    lam = params.lambdas
    if np.any(lam < -lambda_tol):
        raise ValueError(
            f"infeasible point: negative power weight {lam.min():.3e}; "
            "project onto the feasible set first"
        )
    lam = np.maximum(lam, 0.0)
    v = build_unitary(params)
    q = (v * lam) @ v.conj().T
    return 0.5 * (q + q.conj().T)


def check_covariance(
    q: np.ndarray,
    power: float | None = None,
    *,
    hermitian_tol: float = 1e-12,
    psd_tol: float = 1e-10,
    power_tol: float = 1e-9,
) -> None:
    """Validate the covariance invariants, raising ``ValueError`` on failure.

    Checks Hermitian symmetry entrywise, the smallest eigenvalue, and
    (when ``power`` is given) the trace budget.
    """
    q = np.asarray(q)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"covariance must be square, got shape {q.shape}")
    scale = max(1.0, float(np.abs(q).max(initial=0.0)))
    asym = float(np.abs(q - q.conj().T).max(initial=0.0))
    if asym > hermitian_tol * scale:
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")
    min_eig = float(np.linalg.eigvalsh(q)[0])
    if min_eig < -psd_tol * scale:
        raise ValueError(f"matrix is not PSD: min eigenvalue {min_eig:.3e}")
    if power is not None:
        tr = float(np.real(np.trace(q)))
        if tr > power + power_tol:
            raise ValueError(f"trace {tr:.12g} exceeds power budget {power:.12g}")


def _wrap_angle(x: np.ndarray) -> np.ndarray:
    """Wrap angles into (-pi, pi]."""
    w = np.mod(x + np.pi, 2.0 * np.pi) - np.pi
    return np.where(w == -np.pi, np.pi, w)


def decompose_covariance(
    q: np.ndarray,
    *,
    hermitian_tol: float = 1e-10,
    psd_tol: float = 1e-8,
) -> RotationParams:
    """Recover rotation parameters reproducing a Hermitian PSD matrix.

    The eigenvalues (sorted descending, ties kept in eigendecomposition
    column order) become the power weights.  Angles come from a Givens
    elimination of the eigenvector matrix: processing pairs in reverse
    product order, entry ``(j, i)`` is zeroed by mixing columns ``i`` and
    ``j`` with ``theta = atan2(|U[j,i]|, |U[j,j]|)`` and ``phi`` the phase
    difference of the two entries.  What remains is a diagonal of unit
    phases, which is commuted through the product (shifting each ``phi``
    by the phase difference of its pair) and absorbed into the
    eigenvectors' phase freedom.

    The guarantee is the round trip ``build_covariance(decompose_covariance(Q))
    == Q``; the angles themselves are one representative of many.

    Raises:
        ValueError: If ``q`` is not Hermitian or not PSD within tolerance.
    """
    q = np.asarray(q, dtype=complex)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"covariance must be square, got shape {q.shape}")
    scale = max(1.0, float(np.abs(q).max(initial=0.0)))
    asym = float(np.abs(q - q.conj().T).max(initial=0.0))
    if asym > hermitian_tol * scale:
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")

    m = q.shape[0]
    w, u = np.linalg.eigh(0.5 * (q + q.conj().T))
    if w[0] < -psd_tol * scale:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    order = np.argsort(-w, kind="stable")
    lam = np.maximum(w[order], 0.0)
    u = np.asarray(u[:, order], dtype=complex)

    pairs = pair_order(m)
    n = len(pairs)
    thetas = np.zeros(n)
    phis = np.zeros(n)
    for k in range(n - 1, -1, -1):
        i, j = pairs[k]
        target = u[j, i]
        pivot = u[j, j]
        theta = np.arctan2(abs(target), abs(pivot))
        phi = np.angle(target) - np.angle(pivot)
        thetas[k] = theta
        phis[k] = phi
        c = np.cos(theta)
        s = np.sin(theta)
        col_i = u[:, i].copy()
        col_j = u[:, j]
        u[:, i] = c * col_i - (np.exp(1j * phi) * s) * col_j
        u[:, j] = (np.exp(-1j * phi) * s) * col_i + c * col_j

    # U is now diagonal with unit-modulus entries; commute those phases out.
    alpha = np.angle(np.diag(u))
    for k, (i, j) in enumerate(pairs):
        phis[k] += alpha[j] - alpha[i]

    return RotationParams(m, lam, _wrap_angle(thetas), _wrap_angle(phis))
