from enum import Enum
from typing import Dict, Optional

from pydantic import BaseModel, Field


class MomentRegime(str, Enum):
    STRONG = "strong"
    INSIDE_BALL = "inside_ball"
    OUTSIDE_BALL = "outside_ball"
    OUTSIDE_BALL_GENERAL = "outside_ball_general"


class MomentBoundReport(BaseModel):
    a: float
    regime: MomentRegime
    bound: float
    components: Dict[str, float] = {}
    dominating_term: str


class MomentRequest(BaseModel):
    """Schema du fichier de configuration de la sous-commande moments"""
    regime: MomentRegime
    p: int = Field(..., ge=1)
    m: float = Field(..., gt=0)
    a: float = Field(..., gt=0)
    R: Optional[float] = Field(None, ge=0)
    M: Optional[float] = Field(None, gt=0)


class KhintchineResult(BaseModel):
    k: float
    lambda_opt: Optional[float] = None
    gamma_opt: Optional[float] = None
    A_k: float
    grid_resolution: str


class LowerBoundOracle(BaseModel):
    p: int
    a: float
    numeric_moment: float
    lower_bound: float
