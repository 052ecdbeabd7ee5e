from enum import Enum
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class ConvexityKind(str, Enum):
    CONVEX = "convex"
    STRONGLY_CONVEX = "strongly_convex"
    STRONG_INSIDE_BALL = "strong_inside_ball"
    STRONG_OUTSIDE_BALL = "strong_outside_ball"


class ConvexityClass(BaseModel):
    """Classe de convexité déclarée d'un potentiel"""
    kind: ConvexityKind
    m: Optional[float] = None
    R: Optional[float] = None


class GaussianTarget(BaseModel):
    kind: Literal["gaussian"]
    p: int = Field(..., ge=1)
    precision: List[float]

    @model_validator(mode="after")
    def check_precision_length(self):
        if len(self.precision) != self.p:
            raise ValueError(f"precision must have {self.p} entries, got {len(self.precision)}")
        return self


class CappedQuadraticTarget(BaseModel):
    kind: Literal["capped_quadratic"]
    p: int = Field(..., ge=1)


class SmoothedHuberTarget(BaseModel):
    kind: Literal["smoothed_huber"]
    p: int = Field(..., ge=1)
    m: float = Field(..., gt=0)
    R: float = Field(..., gt=0)


TargetSpec = Annotated[
    Union[GaussianTarget, CappedQuadraticTarget, SmoothedHuberTarget],
    Field(discriminator="kind"),
]
