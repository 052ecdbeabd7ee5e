import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from app.core.errors import NumericDegeneracyError
from app.core.logger import get_logger
from app.services.kinetic.kinetic_kernels import SERIES_TERMS, check_step_inputs

logger = get_logger(__name__)

# Degré en t du premier terme de psi_0, psi_1, phi_2, phi_3
DEGREES = (0, 1, 2, 3)
# Poids (j + 1) des séries de phi_2 et phi_3
WEIGHTED = (False, False, True, True)
COVARIANCE_SERIES_THRESHOLD = 2.0

JITTER_START = 1e-16
JITTER_MAX_FRACTION = 1e-12


@dataclass(frozen=True)
class NoiseCovariance:
    """
    Covariance 4x4 C des incréments gaussiens d'une coordonnée, avec
    son facteur triangulaire inférieur L (C = L L^T)
    """
    gamma: float
    h: float
    C: np.ndarray
    L: np.ndarray

    def correlated(self, g: np.ndarray) -> np.ndarray:
        """
        Transforme des gaussiennes standard de forme (p, 4) en p vecteurs
        indépendants de covariance C
        """
        return g @ self.L.T


def _series_coefficients(x: float) -> np.ndarray:
    """
    Coefficients beta[i, k] de v_i(h s) = h^{d_i} sum_k beta[i, k] s^{k + d_i}
    """
    beta = np.empty((4, SERIES_TERMS))
    for i, (d, weighted) in enumerate(zip(DEGREES, WEIGHTED)):
        term = 1.0 / math.factorial(d)
        for k in range(SERIES_TERMS):
            beta[i, k] = term * (k + 1 if weighted else 1)
            term *= -x / (k + 1 + d)
    return beta


def _covariance_series(gamma: float, h: float) -> np.ndarray:
    beta = _series_coefficients(gamma * h)
    k = np.arange(SERIES_TERMS)
    C = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            dij = DEGREES[i] + DEGREES[j]
            denom = k[:, None] + k[None, :] + dij + 1
            C[i, j] = C[j, i] = h ** (dij + 1) * float(np.sum(np.outer(beta[i], beta[j]) / denom))
    return C


def _exp_moment(n: int, b: float, h: float) -> float:
    """int_0^h t^n exp(-b t) dt"""
    if b == 0.0:
        return h ** (n + 1) / (n + 1)
    bh = b * h
    partial = sum(bh ** k / math.factorial(k) for k in range(n + 1))
    return math.factorial(n) / b ** (n + 1) * (1.0 - math.exp(-bh) * partial)


def _covariance_closed_form(gamma: float, h: float) -> np.ndarray:
    """
    Chaque v_i(t) s'écrit P0_i(t) + P1_i(t) exp(-gamma t) avec P0_i, P1_i
    polynômes de degré <= 1 (coefficients en puissances croissantes de t)
    """
    g = gamma
    P0 = [(0.0, 0.0), (1.0 / g, 0.0), (1.0 / g ** 2, 0.0), (-2.0 / g ** 3, 1.0 / g ** 2)]
    P1 = [(1.0, 0.0), (-1.0 / g, 0.0), (-1.0 / g ** 2, -1.0 / g), (2.0 / g ** 3, 1.0 / g ** 2)]

    def integrate(a, b, rate):
        # int_0^h (a0 + a1 t)(b0 + b1 t) exp(-rate t) dt
        coeffs = (a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1])
        return sum(c * _exp_moment(n, rate, h) for n, c in enumerate(coeffs) if c != 0.0)

    C = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            C[i, j] = C[j, i] = (
                integrate(P0[i], P0[j], 0.0)
                + integrate(P0[i], P1[j], g)
                + integrate(P1[i], P0[j], g)
                + integrate(P1[i], P1[j], 2.0 * g)
            )
    return C


def _factorize(C: np.ndarray, gamma: float, h: float) -> np.ndarray:
    """
    Cholesky de la matrice de corrélation avec montée progressive du
    jitter diagonal, puis remise à l'échelle
    """
    scale = np.sqrt(np.clip(np.diag(C), 0.0, None))
    if np.any(scale == 0.0):
        raise NumericDegeneracyError(gamma, h, "zero variance on the covariance diagonal")
    S = C / np.outer(scale, scale)
    jitter = 0.0
    ceiling = JITTER_MAX_FRACTION * float(np.trace(S))
    while True:
        try:
            L_S = np.linalg.cholesky(S + jitter * np.eye(4))
            break
        except np.linalg.LinAlgError:
            jitter = JITTER_START if jitter == 0.0 else jitter * 10.0
            if jitter > ceiling:
                raise NumericDegeneracyError(gamma, h, "Cholesky factorization failed after jitter")
            logger.warning(f"Covariance factorization at gamma={gamma}, h={h}: retrying with jitter {jitter:.1e}")
    return scale[:, None] * L_S


class CovarianceBuilder:
    """
    Construit la covariance C_ij = int_0^h v_i v_j dt,
    v = [psi_0, psi_1, phi_2, phi_3], et sa factorisation
    """

    def noise_covariance(self, gamma: float, h: float) -> NoiseCovariance:
        check_step_inputs(gamma, h)
        return _cached_covariance(float(gamma), float(h))

    def covariance_matrix(self, gamma: float, h: float) -> np.ndarray:
        check_step_inputs(gamma, h)
        if gamma * h <= COVARIANCE_SERIES_THRESHOLD:
            return _covariance_series(gamma, h)
        return _covariance_closed_form(gamma, h)


@lru_cache(maxsize=64)
def _cached_covariance(gamma: float, h: float) -> NoiseCovariance:
    C = covariance_builder.covariance_matrix(gamma, h)
    L = _factorize(C, gamma, h)
    C.setflags(write=False)
    L.setflags(write=False)
    return NoiseCovariance(gamma=gamma, h=h, C=C, L=L)


# Instance globale
covariance_builder = CovarianceBuilder()
