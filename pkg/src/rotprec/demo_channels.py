"""Bundled example channels.

Two fixed channel pairs for a four-antenna transmitter, used as golden
inputs by the test suite, the CLI fixtures under ``channels/``, and the
experiment scripts.  Pair A serves a 2-antenna information receiver and a
3-antenna energy receiver; pair B a 4-antenna and a 2-antenna receiver.
"""

from __future__ import annotations

import numpy as np

from .analytic import ChannelSet

__all__ = [
    "PAIR_A_RX1",
    "PAIR_A_RX2",
    "PAIR_B_RX1",
    "PAIR_B_RX2",
    "pair_a",
    "pair_b",
    "three_user",
]

PAIR_A_RX1 = np.array([
    [0.45 + 1.75j, 0.85 - 1.26j, -0.52 + 0.33j, -0.83 + 0.30j],
    [-0.25 - 0.85j, 0.15 + 0.00j, -0.08 - 0.92j, 1.20 - 0.14j],
])

PAIR_A_RX2 = np.array([
    [0.95 - 0.27j, -0.29 - 0.62j, 1.66 + 1.32j, -0.84 - 0.60j],
    [0.53 - 1.19j, 0.07 - 0.16j, -1.04 + 0.69j, -0.93 - 0.19j],
    [0.53 + 2.62j, 0.23 - 1.07j, -0.28 + 1.96j, 0.08 + 0.50j],
])

PAIR_B_RX1 = np.array([
    [-2.13 - 1.49j, 1.85 + 0.80j, -0.96 + 1.51j, 1.55 - 0.28j],
    [0.00 - 1.43j, -1.16 + 0.19j, -0.27 + 0.53j, 0.10 + 0.12j],
    [-0.71 + 0.55j, 1.50 - 0.17j, 0.19 + 0.03j, -0.38 - 0.10j],
    [-0.08 - 1.44j, 0.80 + 0.13j, -0.45 + 1.51j, 0.25 + 0.98j],
])

PAIR_B_RX2 = np.array([
    [-0.99 - 0.04j, 1.00 - 0.91j, 2.05 + 1.10j, -0.71 + 0.32j],
    [0.44 + 0.96j, 0.14 + 0.11j, -0.06 - 1.69j, 0.09 + 0.04j],
])


def pair_a(power: float = 10.0, eta: float = 1.0) -> ChannelSet:
    """Channel pair A as a two-receiver set with the given budget."""
    return ChannelSet((PAIR_A_RX1, PAIR_A_RX2), power, eta)


def pair_b(power: float = 10.0, eta: float = 1.0) -> ChannelSet:
    """Channel pair B as a two-receiver set with the given budget."""
    return ChannelSet((PAIR_B_RX1, PAIR_B_RX2), power, eta)


def three_user(power: float = 20.0, eta: float = 1.0) -> ChannelSet:
    """A three-receiver set assembled from the bundled matrices."""
    return ChannelSet((PAIR_A_RX1, PAIR_A_RX2, PAIR_B_RX2), power, eta)
