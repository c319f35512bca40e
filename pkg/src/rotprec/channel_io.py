"""Channel-set file format.

A channel file is a JSON document:

    {
      "m": 4,             // transmit antennas
      "power": 10.0,      // transmit budget, watts
      "eta": 1.0,         // optional, defaults to 1
      "channels": [
        {"rows": 2, "entries": [[0.45, 1.75], [0.85, -1.26], ...]},
        ...
      ]
    }

Each channel lists ``rows * m`` complex entries as [real, imaginary]
pairs in row-major order.  Parse problems raise
:class:`ChannelFormatError`; structurally valid files with inconsistent
shapes raise :class:`ChannelDimensionError`.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .analytic import ChannelSet

__all__ = [
    "ChannelFormatError",
    "ChannelDimensionError",
    "load_channel_set",
    "dump_channel_set",
    "channel_set_to_dict",
]


class ChannelFormatError(ValueError):
    """The file is not a well-formed channel document."""


class ChannelDimensionError(ValueError):
    """The document's dimensions are inconsistent."""


def _as_complex_matrix(entry: dict, m: int, index: int) -> np.ndarray:
    rows = entry.get("rows")
    if not isinstance(rows, int) or rows < 1:
        raise ChannelFormatError(f"channel {index}: 'rows' must be a positive integer")
    raw = entry.get("entries")
    if not isinstance(raw, list):
        raise ChannelFormatError(f"channel {index}: 'entries' must be a list")
    if len(raw) != rows * m:
        raise ChannelDimensionError(
            f"channel {index}: expected {rows * m} entries for a {rows}x{m} "
            f"matrix, got {len(raw)}"
        )
    flat = np.empty(rows * m, dtype=complex)
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) for v in pair)
        ):
            raise ChannelFormatError(
                f"channel {index}, entry {k}: expected a [real, imaginary] pair"
            )
        if not all(math.isfinite(v) for v in pair):
            raise ChannelFormatError(
                f"channel {index}, entry {k}: entries must be finite"
            )
        flat[k] = complex(pair[0], pair[1])
    return flat.reshape(rows, m)


def load_channel_set(path, power_override: float | None = None) -> ChannelSet:
    """Read a channel file; optionally override its power budget."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ChannelFormatError(f"cannot read channel file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelFormatError(f"channel file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ChannelFormatError("channel file must hold a JSON object")

    m = doc.get("m")
    if not isinstance(m, int) or m < 1:
        raise ChannelFormatError("'m' must be a positive integer")
    power = doc.get("power")
    if not isinstance(power, (int, float)) or not math.isfinite(power):
        raise ChannelFormatError("'power' must be a finite number")
    eta = doc.get("eta", 1.0)
    if not isinstance(eta, (int, float)) or not math.isfinite(eta):
        raise ChannelFormatError("'eta' must be a finite number")
    raw_channels = doc.get("channels")
    if not isinstance(raw_channels, list) or not raw_channels:
        raise ChannelFormatError("'channels' must be a non-empty list")

    mats = []
    for k, entry in enumerate(raw_channels):
        if not isinstance(entry, dict):
            raise ChannelFormatError(f"channel {k} must be an object")
        mats.append(_as_complex_matrix(entry, m, k))

    if power_override is not None:
        power = power_override
    if power <= 0:
        raise ChannelDimensionError(f"power budget must be positive, got {power}")
    if eta <= 0:
        raise ChannelDimensionError(f"conversion rate must be positive, got {eta}")
    return ChannelSet(tuple(mats), float(power), float(eta))


def channel_set_to_dict(channels: ChannelSet) -> dict:
    """Serializable document for a channel set (inverse of loading)."""
    return {
        "m": channels.m,
        "power": channels.power,
        "eta": channels.eta,
        "channels": [
            {
                "rows": h.shape[0],
                "entries": [
                    [float(v.real), float(v.imag)] for v in h.reshape(-1)
                ],
            }
            for h in channels.channels
        ],
    }


def dump_channel_set(channels: ChannelSet, path) -> None:
    """Write a channel set in the file format."""
    Path(path).write_text(json.dumps(channel_set_to_dict(channels), indent=2) + "\n")
