import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class GraphFamily(str, enum.Enum):
    HUB_K_REGULAR = "hub_k_regular"
    STAR = "star"
    COMPLETE = "complete"
    PATH = "path"
    M_ARY_TREE = "m_ary_tree"
    GLUED_TREE = "glued_tree"

    @classmethod
    def parse(cls, name: str) -> "GraphFamily":
        return cls(name.replace("-", "_").replace("+", "_").lower())


class FamilyPrediction(BaseModel):
    """Closed-form prediction for one member of a graph family."""

    family: GraphFamily
    parameters: Dict[str, int]
    dimension: int = Field(..., ge=1)
    cbar: float = Field(..., ge=0)
    krylov_dim: int = Field(..., ge=1)
    kappa: Optional[List[float]] = None
    asymptotic_cbar: Optional[float] = None
