import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from app.core.errors import InvalidArgumentError


# En dessous de gamma*h = 1 les formes closes perdent trop de chiffres
SERIES_THRESHOLD = 1.0
SERIES_TERMS = 40


@dataclass(frozen=True)
class KineticKernels:
    """Valeurs en h des noyaux psi_0, psi_1, psi_2, phi_2, phi_3"""
    gamma: float
    h: float
    psi0: float
    psi1: float
    psi2: float
    phi2: float
    phi3: float


def check_step_inputs(gamma: float, h: float) -> None:
    if not (math.isfinite(gamma) and gamma > 0):
        raise InvalidArgumentError(f"gamma must be positive, got {gamma}")
    if not (math.isfinite(h) and h > 0):
        raise InvalidArgumentError(f"h must be positive, got {h}")


def _series(x: float, offset: int, weighted: bool) -> float:
    """
    sum_j (-x)^j w_j / (j + offset)!  avec w_j = j + 1 si weighted, 1 sinon
    """
    total = 0.0
    term = 1.0 / math.factorial(offset)
    for j in range(SERIES_TERMS):
        total += term * (j + 1 if weighted else 1)
        term *= -x / (j + 1 + offset)
    return total


class KernelCalculator:
    """
    Calcule les noyaux de la diffusion cinétique

        psi_0(t) = exp(-gamma t), psi_{k+1}(t) = int_0^t psi_k
        phi_{k+1}(t) = int_0^t exp(-gamma (t - s)) psi_k(s) ds
    """

    def eval_kernels(self, gamma: float, h: float) -> KineticKernels:
        check_step_inputs(gamma, h)
        return _cached_kernels(float(gamma), float(h))


def _compute_kernels(gamma: float, h: float) -> KineticKernels:
    x = gamma * h
    psi0 = math.exp(-x)
    if x <= SERIES_THRESHOLD:
        psi1 = h * _series(x, 1, False)
        psi2 = h * h * _series(x, 2, False)
        phi2 = h * h * _series(x, 2, True)
        phi3 = h ** 3 * _series(x, 3, True)
    else:
        psi1 = -math.expm1(-x) / gamma
        psi2 = (x - 1.0 + psi0) / gamma ** 2
        phi2 = (1.0 - psi0 * (1.0 + x)) / gamma ** 2
        phi3 = (x - 2.0 + psi0 * (2.0 + x)) / gamma ** 3
    return KineticKernels(gamma=gamma, h=h, psi0=psi0, psi1=psi1, psi2=psi2, phi2=phi2, phi3=phi3)


_cached_kernels = lru_cache(maxsize=256)(_compute_kernels)


def kernel_vector(gamma: float, t: np.ndarray) -> np.ndarray:
    """
    v(t) = [psi_0(t), psi_1(t), phi_2(t), phi_3(t)] évalué sur un tableau de t

    Returns:
        Tableau de forme (4, len(t))
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((4,) + t.shape)
    for idx, ti in np.ndenumerate(t):
        k = _compute_kernels(float(gamma), float(ti))
        out[(slice(None),) + idx] = (k.psi0, k.psi1, k.phi2, k.phi3)
    return out


# Instance globale
kernel_calculator = KernelCalculator()
