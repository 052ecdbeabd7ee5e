from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from app.core.errors import CapabilityError, InvalidArgumentError
from app.schemas.sampler_schemas import SamplerAlgorithm, SamplerConfig
from app.services.kinetic import covariance_builder, kernel_calculator

SYMMETRY_TOL = 1e-12
EIGEN_TOL = 1e-12


@dataclass(frozen=True)
class GaussianLaw:
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=float))
        if cov.shape != (mean.shape[0], mean.shape[0]):
            raise InvalidArgumentError(f"covariance shape {cov.shape} does not match mean of size {mean.shape[0]}")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL * scale:
            raise InvalidArgumentError("covariance is not symmetric")
        if np.min(linalg.eigvalsh(cov)) < -EIGEN_TOL * scale:
            raise InvalidArgumentError("covariance is not positive semidefinite")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def p(self) -> int:
        return self.mean.shape[0]


def _sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    """Racine symétrique, valeurs propres négatives d'arrondi ramenées à 0"""
    eigenvalues, eigenvectors = linalg.eigh(matrix)
    return (eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ eigenvectors.T


def _compose(first: Tuple[np.ndarray, np.ndarray], second: Tuple[np.ndarray, np.ndarray]):
    """Applique (A1, S1) puis (A2, S2) : x -> A x + bruit de covariance S"""
    A1, S1 = first
    A2, S2 = second
    return A2 @ A1, A2 @ S1 @ A2.T + S2


def _power(T: np.ndarray, N: np.ndarray, K: int) -> Tuple[np.ndarray, np.ndarray]:
    """K compositions de l'application affine gaussienne (T, N), par doublement"""
    dim = T.shape[0]
    result = (np.eye(dim), np.zeros((dim, dim)))
    base = (T, N)
    while K > 0:
        if K & 1:
            result = _compose(result, base)
        base = _compose(base, base)
        K >>= 1
    return result


class GaussianOracle:
    """
    Lois exactes des cibles gaussiennes et des chaînes qui les
    échantillonnent : sur un potentiel quadratique chaque itération est
    affine-gaussienne, moyenne et covariance se propagent exactement
    """

    def gaussian_w2(self, a: GaussianLaw, b: GaussianLaw) -> float:
        if a.p != b.p:
            raise InvalidArgumentError(f"dimensions differ: {a.p} vs {b.p}")
        root_b = _sqrtm_psd(b.covariance)
        cross = _sqrtm_psd(root_b @ a.covariance @ root_b)
        squared = (
            float(np.sum((a.mean - b.mean) ** 2))
            + float(np.trace(a.covariance) + np.trace(b.covariance) - 2.0 * np.trace(cross))
        )
        return float(np.sqrt(max(squared, 0.0)))

    def _require_quadratic(self, potential) -> np.ndarray:
        if not potential.is_quadratic:
            raise CapabilityError(f"exact laws need a quadratic potential, got '{potential.name}'")
        return np.asarray(potential.precision, dtype=float)

    def gaussian_law_of_target(self, potential) -> GaussianLaw:
        lam = self._require_quadratic(potential)
        return GaussianLaw(mean=np.zeros(lam.shape[0]), covariance=np.diag(1.0 / lam))

    def gaussian_surrogate_law(self, potential, alpha: float) -> GaussianLaw:
        if alpha < 0:
            raise InvalidArgumentError(f"alpha must be nonnegative, got {alpha}")
        lam = self._require_quadratic(potential)
        return GaussianLaw(mean=np.zeros(lam.shape[0]), covariance=np.diag(1.0 / (lam + alpha)))

    def transition(self, config: SamplerConfig, curvature: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Matrice de transition T et covariance de bruit N d'une coordonnée
        de courbure c = lambda + alpha (état (v, theta) pour les chaînes cinétiques)
        """
        c = curvature
        if config.algorithm is SamplerAlgorithm.LMC:
            return np.array([[1.0 - config.h * c]]), np.array([[2.0 * config.h]])
        k = kernel_calculator.eval_kernels(config.gamma, config.h)
        C = covariance_builder.noise_covariance(config.gamma, config.h).C
        if config.algorithm is SamplerAlgorithm.KLMC:
            T = np.array([[k.psi0, -k.psi1 * c], [k.psi1, 1.0 - k.psi2 * c]])
            return T, 2.0 * config.gamma * C[:2, :2]
        T = np.array([[k.psi0 - k.phi2 * c, -k.psi1 * c], [k.psi1 - k.phi3 * c, 1.0 - k.psi2 * c]])
        E = np.array([[1.0, 0.0, -c, 0.0], [0.0, 1.0, 0.0, -c]])
        return T, 2.0 * config.gamma * E @ C @ E.T

    def gaussian_chain_law(
        self,
        config: SamplerConfig,
        potential,
        K: Optional[int] = None,
        joint: bool = False,
    ) -> GaussianLaw:
        """
        Loi exacte de theta_K (ou du couple (v_K, theta_K) si joint)

        Args:
            config: Configuration de la chaîne
            potential: Potentiel gaussien
            K: Nombre d'itérations (config.steps par défaut)
            joint: Pour les chaînes cinétiques, renvoie la loi jointe
                ordonnée (v_1..v_p, theta_1..theta_p)
        """
        lam = self._require_quadratic(potential)
        p = lam.shape[0]
        K = config.steps if K is None else K
        if K < 0:
            raise InvalidArgumentError(f"K must be nonnegative, got {K}")
        theta0 = np.zeros(p) if config.initial_theta is None else np.asarray(config.initial_theta, dtype=float)
        kinetic = config.algorithm.is_kinetic

        means = []
        covs = []
        for i in range(p):
            T, N = self.transition(config, lam[i] + config.alpha)
            A, S = _power(T, N, K)
            if kinetic:
                # v_0 ~ N(0, 1), theta_0 déterministe
                mean0 = np.array([0.0, theta0[i]])
                cov0 = np.diag([1.0, 0.0])
            else:
                mean0 = np.array([theta0[i]])
                cov0 = np.zeros((1, 1))
            means.append(A @ mean0)
            covs.append(A @ cov0 @ A.T + S)

        if not kinetic:
            return GaussianLaw(mean=np.array([m[0] for m in means]), covariance=np.diag([c[0, 0] for c in covs]))
        if not joint:
            return GaussianLaw(mean=np.array([m[1] for m in means]), covariance=np.diag([c[1, 1] for c in covs]))
        mean = np.concatenate([[m[0] for m in means], [m[1] for m in means]])
        cov = np.zeros((2 * p, 2 * p))
        for i, c in enumerate(covs):
            cov[i, i] = c[0, 0]
            cov[p + i, p + i] = c[1, 1]
            cov[i, p + i] = cov[p + i, i] = c[0, 1]
        return GaussianLaw(mean=mean, covariance=cov)


# Instance globale
gaussian_oracle = GaussianOracle()
