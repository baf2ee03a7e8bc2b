"""Chunk-file catalog and per-slot upload request generation.

Conventions used across the simulator: chunk files are numbered 1..F and
file id 0 stands for the zero-length "silent" upload; users are array
positions 0..K-1; time slots are numbered from 1. All data volumes are
integer Mbit (one file is uploaded per slot, so a file's length is also the
volume it contributes to that slot).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


def zipf_pmf(file_count: int, alpha: float) -> np.ndarray:
    """Zipf popularity over ranks 1..file_count, p_j proportional to j**-alpha."""
    if file_count < 1:
        raise ConfigError(f"file_count must be >= 1, got {file_count}")
    if not np.isfinite(alpha) or alpha < 0:
        raise ConfigError(f"zipf alpha must be finite and >= 0, got {alpha!r}")
    weights = np.arange(1, file_count + 1, dtype=np.float64) ** -float(alpha)
    return weights / weights.sum()


@dataclass(frozen=True)
class FileCatalog:
    """The chunk-file universe: per-file length (Mbit) and upload popularity.

    Rank order and index order coincide: file 1 is the most popular. Lengths
    and popularity are drawn independently.
    """

    lengths: np.ndarray    # int64, shape (F,)
    popularity: np.ndarray  # float64, shape (F,), non-increasing, sums to 1

    def __post_init__(self):
        self.lengths.setflags(write=False)
        self.popularity.setflags(write=False)
        # cumulative popularity, used for inverse-cdf sampling
        object.__setattr__(self, "_cdf", np.cumsum(self.popularity))

    @property
    def file_count(self) -> int:
        return len(self.lengths)

    @property
    def max_length(self) -> int:
        return int(self.lengths.max())

    def length_of(self, file_id: int) -> int:
        return int(self.lengths[file_id - 1])

    def popularity_of(self, file_id: int) -> float:
        return float(self.popularity[file_id - 1])


@dataclass(frozen=True)
class SlotRequests:
    """What every user chose to upload in one slot (file id 0 = silent)."""

    slot_index: int
    choices: np.ndarray  # int64, shape (K,)
    loads: np.ndarray    # int64, shape (K,), Mbit; 0 exactly for silent users

    def __post_init__(self):
        self.choices.setflags(write=False)
        self.loads.setflags(write=False)

    @property
    def total_load(self) -> int:
        return int(self.loads.sum())


def build_catalog(
    file_count: int,
    alpha: float,
    length_min: int,
    length_max: int,
    rng: np.random.Generator,
) -> FileCatalog:
    """Draw a catalog: integer lengths uniform on {length_min..length_max}, Zipf popularity."""
    if not 1 <= length_min <= length_max:
        raise ConfigError(
            f"need 1 <= length_min <= length_max, got [{length_min}, {length_max}]"
        )
    lengths = rng.integers(length_min, length_max + 1, size=file_count, dtype=np.int64)
    return FileCatalog(lengths=lengths, popularity=zipf_pmf(file_count, alpha))


def sample_slot_requests(
    catalog: FileCatalog,
    user_count: int,
    slot_index: int,
    silence_prob: float,
    rng: np.random.Generator,
) -> SlotRequests:
    """Draw one slot of uploads: each user silent with silence_prob, else a popularity draw."""
    if user_count < 1:
        raise ConfigError(f"user_count must be >= 1, got {user_count}")
    if not 0.0 <= silence_prob <= 1.0:
        raise ConfigError(f"silence_prob must be in [0, 1], got {silence_prob!r}")
    silent = rng.random(user_count) < silence_prob
    draws = np.searchsorted(catalog._cdf, rng.random(user_count), side="right") + 1
    draws = np.minimum(draws, catalog.file_count)  # cdf round-off guard
    choices = np.where(silent, 0, draws)
    loads = np.where(silent, 0, catalog.lengths[draws - 1])
    return SlotRequests(slot_index=slot_index, choices=choices, loads=loads)
