"""SBS cache bookkeeping: admission with chunk-level dedup, deadlines, eviction.

Cached items are keyed by (owner, arrival_slot). Duplication is defined by
file-id equality; at most one cached item carries a given file id. When a
requested file is already resident the earlier version is kept, and when
several users upload the same new file in one slot only the smallest user
index is admitted. Items scheduled out at a slot boundary are gone before the
next slot's arrivals are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvariantViolation
from .workload import FileCatalog, SlotRequests

# (owner, arrival_slot)
Key = tuple[int, int]


@dataclass(frozen=True)
class CachedItem:
    owner: int
    arrival_slot: int
    file_id: int
    weight: int        # Mbit, equals the catalog length of file_id
    popularity: float  # upload probability of file_id in any future user-slot

    @property
    def key(self) -> Key:
        return (self.owner, self.arrival_slot)


@dataclass(frozen=True)
class AdmitResult:
    """Outcome of one slot's admission: what survived dedup and the volumes."""

    admitted: tuple[CachedItem, ...]
    raw_volume: int     # Mbit offered by the users this slot
    unique_volume: int  # Mbit actually admitted after dedup


class CacheState:
    """Mutable cache contents for one episode; owned by exactly one episode.

    `capacity` is in Mbit; None models an unbounded cache (infinite-cache and
    hold-all policies). Iteration order of `items` is admission order, which
    is exactly (arrival_slot ascending, owner ascending) -- the canonical item
    order the scheduler relies on.
    """

    def __init__(self, capacity: int | None):
        self.capacity = capacity
        self.items: dict[Key, CachedItem] = {}
        self.resident_file_ids: set[int] = set()
        self._occupancy = 0

    @property
    def occupancy(self) -> int:
        """Used cache space in Mbit (sum of cached item weights)."""
        return self._occupancy

    def admit_and_dedup(self, requests: SlotRequests, catalog: FileCatalog) -> AdmitResult:
        """Admit one slot of arrivals, deleting every duplicate of a resident file."""
        admitted = []
        for owner, file_id in enumerate(requests.choices):
            file_id = int(file_id)
            if file_id == 0 or file_id in self.resident_file_ids:
                continue
            item = CachedItem(
                owner=owner,
                arrival_slot=requests.slot_index,
                file_id=file_id,
                weight=catalog.length_of(file_id),
                popularity=catalog.popularity_of(file_id),
            )
            self.items[item.key] = item
            self.resident_file_ids.add(file_id)
            self._occupancy += item.weight
            admitted.append(item)
        if self.capacity is not None and self._occupancy > self.capacity:
            raise InvariantViolation(
                f"cache overflow after slot {requests.slot_index} admission: "
                f"occupancy {self._occupancy} > capacity {self.capacity} "
                f"(scheduler failed to clear room)"
            )
        return AdmitResult(
            admitted=tuple(admitted),
            raw_volume=requests.total_load,
            unique_volume=sum(item.weight for item in admitted),
        )

    def expired_set(self, current_slot: int, deadline_slots: int) -> list[CachedItem]:
        """Items whose deadline forces transmission at this slot boundary.

        Normally only items with arrival_slot == current_slot - deadline_slots + 1
        remain to expire; the <= is a safety net against missed boundaries.
        """
        oldest_allowed = current_slot - deadline_slots + 1
        return [item for item in self.items.values() if item.arrival_slot <= oldest_allowed]

    def evict(self, items: Iterable[CachedItem]) -> None:
        """Remove scheduled items; evicting something absent is a scheduler bug."""
        for item in items:
            stored = self.items.pop(item.key, None)
            if stored is None:
                raise InvariantViolation(f"evicting absent item {item.key}")
            self.resident_file_ids.discard(stored.file_id)
            self._occupancy -= stored.weight
