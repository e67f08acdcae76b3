import enum
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class WeightRule(str, enum.Enum):
    LINEAR = "linear"
    CUSTOM = "custom"


class WeightSequence(BaseModel):
    """Weights w_n of the Krylov occupations; w_n = n unless a custom list is given."""

    model_config = ConfigDict(frozen=True)

    rule: WeightRule = WeightRule.LINEAR
    values: Optional[List[float]] = None

    @model_validator(mode="after")
    def _check_values(self) -> "WeightSequence":
        if self.rule is WeightRule.LINEAR:
            if self.values is not None:
                raise ValueError("linear weights take no explicit values")
            return self
        if not self.values:
            raise ValueError("custom weights need at least one value")
        if self.values[0] < 0:
            raise ValueError("w_0 must be non-negative")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("weights must be strictly increasing")
        return self

    @classmethod
    def linear(cls) -> "WeightSequence":
        return cls()

    @classmethod
    def custom(cls, values: List[float]) -> "WeightSequence":
        return cls(rule=WeightRule.CUSTOM, values=list(values))

    @classmethod
    def from_file(cls, path: Path) -> "WeightSequence":
        """Whitespace-separated weights w_0 w_1 ... read from a text file."""
        return cls.custom([float(token) for token in Path(path).read_text().split()])

    def vector(self, length: int) -> np.ndarray:
        if self.rule is WeightRule.LINEAR:
            return np.arange(length, dtype=float)
        if len(self.values) < length:
            raise ValueError(f"{len(self.values)} custom weights given, {length} needed")
        return np.array(self.values[:length], dtype=float)


class ComplexityReport(BaseModel):
    """Long-time average spread complexity of one seed vertex."""

    model_config = ConfigDict(populate_by_name=True)

    seed: int
    krylov_dim: int = Field(..., serialization_alias="d_K", validation_alias="d_K")
    kappa: List[float]
    cbar: float
    weights: List[float]
    degenerate: bool
    connected: bool = True

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
