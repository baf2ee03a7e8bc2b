"""Request/response models shared by the HTTP service and the CLI client."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from ..engine import SimConfig
from ..errors import ConfigError
from ..scheduler import Policy
from ..sweep import ResultRow


class SimParams(BaseModel):
    """Simulation knobs; defaults mirror the engine's."""

    model_config = ConfigDict(extra="forbid")

    user_count: int = 5
    slot_count: int = 20
    slot_duration: float = 10.0
    file_count: int = 1000
    zipf_alpha: float = 1.0
    length_min: int = 1
    length_max: int = 20
    cache_capacity: int = 100
    deadline_slots: int = 1
    silence_prob: float = 0.0
    runs: int = 200
    master_seed: int = 0

    def to_config(self, policy: Policy) -> SimConfig:
        return SimConfig(policy=policy, **self.model_dump())


def parse_policy(name: str) -> Policy:
    try:
        return Policy(name)
    except ValueError:
        choices = ", ".join(p.value for p in Policy)
        raise ConfigError(f"unknown policy {name!r}; pick one of: {choices}") from None


class RunRequest(BaseModel):
    params: SimParams = SimParams()
    policies: list[str] = ["dp"]


class SweepRequest(BaseModel):
    params: SimParams = SimParams()
    axis: str
    values: list[float]
    policies: list[str] = ["dp"]


class ResultRecord(BaseModel):
    policy: str
    cache_capacity: int
    deadline_slots: int
    user_count: int
    zipf_alpha: float
    slot_count: int
    runs: int
    eta_mean: float
    eta_std: float
    eta_max_mean: float
    d0_mean: float
    d1_mean: float
    seed: int

    @classmethod
    def from_row(cls, row: ResultRow) -> "ResultRecord":
        return cls(**vars(row))


class SweepResponse(BaseModel):
    rows: list[ResultRecord]
