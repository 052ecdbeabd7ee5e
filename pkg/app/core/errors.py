"""
Hiérarchie d'erreurs du toolkit

Chaque erreur porte le code de sortie utilisé par la CLI :
0 succès, 2 erreur de configuration, 3 plan infaisable / capacité manquante,
4 échec numérique.
"""

from typing import Optional

import numpy as np


class LangevinError(Exception):
    exit_code: int = 1


class InvalidArgumentError(LangevinError, ValueError):
    exit_code = 2


class ConfigError(LangevinError):
    exit_code = 2


class DomainError(LangevinError, ValueError):
    exit_code = 2


class CapacityError(LangevinError):
    exit_code = 2


class InfeasiblePlanError(LangevinError):
    exit_code = 3

    def __init__(self, constraint: str, message: str):
        self.constraint = constraint
        super().__init__(f"Infeasible plan, violated constraint '{constraint}': {message}")


class CapabilityError(LangevinError):
    exit_code = 3


class UnsupportedCombinationError(LangevinError):
    exit_code = 3


class NumericError(LangevinError, ArithmeticError):
    exit_code = 4


class DivergenceError(NumericError):

    def __init__(self, step: int, last_state: Optional[np.ndarray] = None):
        self.step = step
        self.last_state = last_state
        super().__init__(f"Chain diverged at step {step} (non-finite state)")


class NumericDegeneracyError(NumericError):

    def __init__(self, gamma: float, h: float, message: str = "factorization failed after jitter"):
        self.gamma = gamma
        self.h = h
        super().__init__(f"Noise covariance degenerate for gamma={gamma!r}, h={h!r}: {message}")
