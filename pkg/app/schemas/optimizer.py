import enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from app.core.config import settings
from app.schemas.complexity import WeightRule, WeightSequence
from app.schemas.graph import Graph


class Direction(str, enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"

    @classmethod
    def parse(cls, name: str) -> "Direction":
        aliases = {"min": cls.MINIMIZE, "max": cls.MAXIMIZE}
        return aliases.get(name.lower()) or cls(name.lower())

    def improves(self, candidate: float, incumbent: float, tol: float) -> bool:
        if self is Direction.MAXIMIZE:
            return candidate > incumbent + tol
        return candidate < incumbent - tol


class OptimizerConfig(BaseModel):
    dimension: int = Field(..., ge=2)
    direction: Direction = Direction.MINIMIZE
    candidate_count: int = Field(default_factory=lambda: settings.CANDIDATE_COUNT, ge=1, le=20)
    max_stale_rounds: int = Field(default_factory=lambda: settings.MAX_STALE_ROUNDS, ge=1)
    restarts: int = Field(default_factory=lambda: settings.RESTARTS, ge=1)
    rng_seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    weights: WeightSequence = Field(default_factory=WeightSequence)
    max_rounds: Optional[int] = Field(default=None, ge=1)  # hard cap per restart
    max_workers: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_weights(self) -> "OptimizerConfig":
        if self.weights.rule is WeightRule.CUSTOM and len(self.weights.values) < self.dimension:
            raise ValueError(f"custom weights need {self.dimension} values for D={self.dimension}")
        return self


class CostSample(BaseModel):
    restart: int
    round: int
    cbar: float


class OptimizerResult(BaseModel):
    best_graph: Graph
    best_cbar: float
    cost_trace: List[CostSample] = []
    best_restart: int = 0
    moves_evaluated: int = 0
    assignments_evaluated: int = 0


class SweepRow(BaseModel):
    D: int
    cbar: float
    graph: Graph
