from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PlannerAlgorithm(str, Enum):
    LMC = "lmc"
    LMC_HESSIAN = "lmc_hessian"
    KLMC = "klmc"
    KLMC2 = "klmc2"


class ReferenceAlgorithm(str, Enum):
    LMCA = "lmca"
    LMC = "lmc"
    LMC_HESSIAN = "lmc_hessian"
    KLMC = "klmc"
    KLMC2 = "klmc2"
    MALA = "mala"


class Metric(str, Enum):
    TV = "tv"
    W1 = "w1"
    W2 = "w2"


class PlannerInputs(BaseModel):
    """
    Constantes du problème passées au planificateur

    mu2 direct est prioritaire sur la borne D * p**beta.
    """
    model_config = ConfigDict(populate_by_name=True)

    p: int = Field(..., ge=1)
    M: float = Field(..., gt=0)
    M2: Optional[float] = Field(None, ge=0)
    mu2: Optional[float] = Field(None, gt=0)
    D: Optional[float] = Field(None, gt=0)
    beta: Optional[float] = Field(None, gt=0)
    epsilon: float = Field(..., gt=0, lt=1, alias="eps")
    q: Literal[1, 2] = 1

    @model_validator(mode="after")
    def check_second_moment(self):
        if self.mu2 is None and (self.D is None or self.beta is None):
            raise ValueError("either mu2 or both D and beta must be given")
        return self

    @property
    def effective_mu2(self) -> float:
        if self.mu2 is not None:
            return self.mu2
        return self.D * self.p ** self.beta

    @property
    def effective_beta(self) -> float:
        return self.beta if self.beta is not None else 1.0

    @property
    def effective_D(self) -> float:
        if self.mu2 is None:
            return self.D
        return self.mu2 / self.p ** self.effective_beta

    @property
    def kappa(self) -> float:
        return self.M * self.effective_D

    @property
    def kappa2(self) -> Optional[float]:
        if self.M2 is None:
            return None
        return self.M2 ** (2.0 / 3.0) * self.effective_D


class BoundTerms(BaseModel):
    finiteness: float
    discretization: float
    lack_of_strong_convexity: float

    @property
    def total(self) -> float:
        return self.finiteness + self.discretization + self.lack_of_strong_convexity


class BiasBounds(BaseModel):
    q: int
    tv_bound: float
    wq_bound: float


class Plan(BaseModel):
    algorithm: PlannerAlgorithm
    q: int
    epsilon: float
    alpha: float
    h: float
    gamma: Optional[float] = None
    K: int
    K_real: float
    Q: Optional[float] = None
    bound_terms: BoundTerms
    predicted_error: float
    target_error: float
    meets_target: bool
    complexity_formula_value: float


class PlanRequest(PlannerInputs):
    """Schema du fichier de configuration de la sous-commande plan"""
    alg: PlannerAlgorithm


class BoundRequest(PlannerInputs):
    """Paramètres explicites pour évaluer une borne de théorème"""
    alg: PlannerAlgorithm
    alpha: float = Field(..., ge=0)
    h: float = Field(..., gt=0)
    gamma: Optional[float] = Field(None, gt=0)
    K: int = Field(..., ge=0)


class BoundEvaluation(BaseModel):
    algorithm: PlannerAlgorithm
    q: int
    alpha: float
    h: float
    gamma: Optional[float] = None
    K: int
    bound_terms: BoundTerms
    total: float
    violations: List[str] = []
    bias: BiasBounds


class ComplexityRow(BaseModel):
    algorithm: ReferenceAlgorithm
    conditions: str
    metric: Metric
    value: float
