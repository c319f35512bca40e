"""Closed-form MIMO sub-solvers: water-filling capacity and peak harvest.

These are the two analytical building blocks the numerical pipeline leans
on.  The information-rate problem ``max log2 |I + H Q H^H|`` over
``tr(Q) <= P`` is solved exactly by SVD plus water-filling; the harvested
energy ``eta * tr(H Q H^H)`` is maximized by putting the whole budget on
the channel's dominant right singular vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelSet",
    "WitSolution",
    "water_fill",
    "wit_capacity",
    "eh_max",
    "rate_of",
    "energy_of",
]

_LOG2 = np.log(2.0)


@dataclass(frozen=True)
class ChannelSet:
    """One or more receiver channels sharing a transmitter.

    Attributes:
        channels: K complex matrices, each ``n_k x m`` for a common
            transmit dimension ``m``.
        power: Transmit power budget in watts.
        eta: Energy conversion rate of the harvester (default 1).
    """

    channels: tuple[np.ndarray, ...]
    power: float
    eta: float = 1.0

    def __post_init__(self):
        chans = tuple(np.asarray(h, dtype=complex) for h in self.channels)
        object.__setattr__(self, "channels", chans)
        if len(chans) < 1:
            raise ValueError("need at least one channel")
        m = chans[0].shape[1] if chans[0].ndim == 2 else -1
        for k, h in enumerate(chans):
            if h.ndim != 2:
                raise ValueError(f"channel {k} is not a matrix")
            if h.shape[1] != m:
                raise ValueError(
                    f"channel {k} has {h.shape[1]} columns, expected {m}"
                )
            if not np.all(np.isfinite(h)):
                raise ValueError(f"channel {k} has non-finite entries")
        if self.power <= 0:
            raise ValueError(f"power budget must be positive, got {self.power}")
        if self.eta <= 0:
            raise ValueError(f"conversion rate must be positive, got {self.eta}")

    @property
    def m(self) -> int:
        return self.channels[0].shape[1]

    @property
    def num_users(self) -> int:
        return len(self.channels)


@dataclass(frozen=True)
class WitSolution:
    """Capacity-achieving covariance for a single information receiver."""

    covariance: np.ndarray
    rate: float
    active_modes: int


def water_fill(gains: np.ndarray, power: float) -> np.ndarray:
    """Optimal power split across parallel channels with the given gains.

    Maximizes ``sum(log2(1 + g_i * p_i))`` subject to ``p >= 0`` and
    ``sum(p) == power``.  Solved exactly: gains are sorted descending and
    the active-mode count ``k`` is reduced until the water level
    ``mu = (power + sum_{i<=k} 1/g_i) / k`` keeps every active power
    non-negative.  Zero gains receive zero power.

    Args:
        gains: Non-negative channel power gains.
        power: Total budget, > 0.

    Returns:
        Power allocation with the same ordering as ``gains``.

    Raises:
        ValueError: If all gains are zero or the budget is non-positive.
    """
    g = np.asarray(gains, dtype=float)
    if power <= 0:
        raise ValueError(f"power budget must be positive, got {power}")
    if np.any(g < 0):
        raise ValueError("gains must be non-negative")
    n_pos = int(np.sum(g > 0))
    if n_pos == 0:
        raise ValueError("all channel gains are zero: no information channel")

    order = np.argsort(-g, kind="stable")
    inv = 1.0 / g[order[:n_pos]]
    k = n_pos
    while k > 1:
        mu = (power + inv[:k].sum()) / k
        if mu - inv[k - 1] >= 0:
            break
        k -= 1
    mu = (power + inv[:k].sum()) / k

    p = np.zeros_like(g)
    p[order[:k]] = mu - inv[:k]
    return p


def wit_capacity(h: np.ndarray, power: float) -> WitSolution:
    """Capacity and optimal covariance for one receiver.

    The channel is diagonalized by SVD and the squared singular values
    are water-filled; the covariance shares the channel's right singular
    basis.
    """
    h = np.asarray(h, dtype=complex)
    if not np.any(h != 0):
        raise ValueError("zero channel has no information capacity")
    _, sv, vh = np.linalg.svd(h, full_matrices=False)
    gains = sv**2
    p = water_fill(gains, power)
    q = (vh.conj().T * p) @ vh
    q = 0.5 * (q + q.conj().T)
    rate = float(np.sum(np.log2(1.0 + gains * p)))
    return WitSolution(covariance=q, rate=rate, active_modes=int(np.sum(p > 0)))


def eh_max(h: np.ndarray, power: float, eta: float = 1.0) -> tuple[np.ndarray, float]:
    """Covariance maximizing harvested energy, and the peak value.

    All power is beamformed along the dominant right singular vector
    ``v`` of the channel: ``Q = power * v v^H`` and the harvest is
    ``eta * power * sigma_max(h)^2``.
    """
    h = np.asarray(h, dtype=complex)
    if not np.any(h != 0):
        raise ValueError("zero channel harvests no energy")
    _, sv, vh = np.linalg.svd(h, full_matrices=False)
    v = vh[0].conj()
    q = power * np.outer(v, v.conj())
    q = 0.5 * (q + q.conj().T)
    return q, float(eta * power * sv[0] ** 2)


def rate_of(q: np.ndarray, h: np.ndarray, *, validate: bool = True) -> float:
    """Information rate ``log2 det(I + H Q H^H)`` in bits per channel use.

    Computed from the eigenvalues of the Hermitian matrix
    ``I + H Q H^H`` for numerical stability.

    Args:
        q: Transmit covariance, Hermitian PSD.
        h: Channel matrix.
        validate: When true, reject non-PSD ``q`` beyond tolerance.
    """
    q = np.asarray(q, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if validate:
        from .rotation import check_covariance

        check_covariance(q)
    b = h @ q @ h.conj().T
    mat = np.eye(h.shape[0], dtype=complex) + 0.5 * (b + b.conj().T)
    ev = np.linalg.eigvalsh(mat)
    rate = float(np.sum(np.log(np.maximum(ev, np.finfo(float).tiny))) / _LOG2)
    return max(rate, 0.0)


def energy_of(q: np.ndarray, h: np.ndarray, eta: float = 1.0) -> float:
    """Harvested energy ``eta * tr(H Q H^H)`` in watts."""
    q = np.asarray(q, dtype=complex)
    h = np.asarray(h, dtype=complex)
    return float(eta * np.real(np.einsum("ij,jk,ik->", h, q, h.conj())))
