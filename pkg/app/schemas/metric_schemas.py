from typing import Literal, Optional

from pydantic import BaseModel, Field

from app.schemas.plan_schemas import PlannerAlgorithm
from app.schemas.potential_schemas import GaussianTarget


class MeasureReport(BaseModel):
    w1: float
    w2: float
    n: int
    p: int


class BenchRequest(BaseModel):
    """
    Schema de la sous-commande bench : plan, chaînes, mesure, critère
    """
    target: GaussianTarget
    alg: PlannerAlgorithm
    q: Literal[1, 2] = 2
    eps: float = Field(..., gt=0, lt=1)
    M2: Optional[float] = Field(None, ge=0)
    n_chains: int = Field(..., ge=1)
    max_steps: int = Field(200_000, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)


class BenchReport(BaseModel):
    algorithm: PlannerAlgorithm
    q: int
    epsilon: float
    mu2: float
    planned_K: int
    run_K: int
    alpha: float
    h: float
    gamma: Optional[float] = None
    target_error: float
    theorem_bound: float
    exact_w2: float
    empirical_wq: float
    n_chains: int
    bound_passes: bool
    exact_passes: bool
    empirical_passes: bool
    # La borne atteint la cible => la loi exacte aussi
    bound_implies_exact: bool
    passed: bool
