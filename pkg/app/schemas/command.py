import enum
from pathlib import Path
from typing import Dict, Optional

from pydantic import BaseModel, Field, model_validator

from app.core.config import settings
from app.schemas.complexity import WeightSequence
from app.schemas.family import GraphFamily
from app.services.serialization import GraphFormat


class Subcommand(str, enum.Enum):
    COMPUTE = "compute"
    GENERATE = "generate"
    OPTIMIZE = "optimize"
    BRUTE_FORCE = "brute-force"
    SWEEP = "sweep"
    CONVERGENCE = "convergence"
    LIMITING = "limiting"
    REFERENCE = "reference"

    @property
    def reads_graph(self) -> bool:
        return self in (Subcommand.COMPUTE, Subcommand.GENERATE, Subcommand.CONVERGENCE, Subcommand.LIMITING)


class OutputFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"


class CommandSpec(BaseModel):
    """One parsed CLI invocation, independent of argparse."""

    subcommand: Subcommand
    graph_path: Optional[Path] = None
    family: Optional[GraphFamily] = None
    family_params: Dict[str, int] = {}
    output_format: OutputFormat = OutputFormat.JSON
    graph_format: GraphFormat = GraphFormat.EDGE_LIST
    rng_seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    family_seed: Optional[int] = Field(default=None, ge=0, lt=2 ** 64)  # hub relabeling, explicit --seed only
    weights: WeightSequence = Field(default_factory=WeightSequence.linear)
    seed_vertex: int = Field(default=0, ge=0)
    out: Optional[Path] = None

    @model_validator(mode="after")
    def _check_source(self) -> "CommandSpec":
        if self.subcommand.reads_graph and (self.graph_path is None) == (self.family is None):
            raise ValueError(f"{self.subcommand.value} needs exactly one of --graph or --family")
        return self
