from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from app.schemas.potential_schemas import TargetSpec


class SamplerAlgorithm(str, Enum):
    LMC = "lmc"
    KLMC = "klmc"
    KLMC2 = "klmc2"

    @property
    def is_kinetic(self) -> bool:
        return self is not SamplerAlgorithm.LMC


class SamplerConfig(BaseModel):
    """
    Configuration d'une chaîne : algorithme, pénalité alpha, pas h,
    friction gamma (cinétique seulement), nombre d'itérations et graine
    """
    algorithm: SamplerAlgorithm
    alpha: float = Field(0.0, ge=0)
    h: float = Field(..., gt=0)
    gamma: Optional[float] = Field(None, gt=0)
    steps: int = Field(..., ge=0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    initial_theta: Optional[List[float]] = None
    thin: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_friction(self):
        if self.algorithm.is_kinetic and self.gamma is None:
            raise ValueError(f"gamma is required for {self.algorithm.value}")
        return self


class SampleRequest(BaseModel):
    """Schema du fichier de configuration de la sous-commande sample"""
    target: TargetSpec
    sampler: SamplerConfig
    n_chains: int = Field(1, ge=1)


class RunManifest(BaseModel):
    config: Dict[str, Any]
    seed: int
    version: str
    wall_time_seconds: float
    outputs: Dict[str, str] = {}
