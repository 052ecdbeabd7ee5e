import math

import numpy as np
from scipy import optimize, special

from app.core.errors import DomainError
from app.core.logger import get_logger
from app.schemas.moment_schemas import KhintchineResult
from app.services.moments.incomplete_gamma import gamma_functions

logger = get_logger(__name__)

LAMBDA_RANGE = (2.1, 200.0)
GAMMA_RANGE = (1.01, 50.0)
GRID_POINTS = 200


class KhintchineOptimizer:
    """
    Constante A_k de l'inégalité mu_k <= A_k mu_2^{k/2} pour les mesures
    log-concaves, obtenue en minimisant A_k(lambda, gamma) sur
    lambda > 2, gamma > 1
    """

    def evaluate(self, k: float, lam: float, gamma: float) -> float:
        """A_k(lambda, gamma) en un point"""
        if lam <= 2 or gamma <= 1:
            return math.inf
        log_term = math.log(lam - 1.0)
        tail = (
            math.sqrt(lam - 1.0) / lam
            * (2.0 * math.sqrt(lam) / log_term) ** k
            * k
            * gamma_functions.upper(k, math.sqrt(gamma) * log_term / 2.0)
        )
        return tail + (k * (gamma * lam) ** (k / 2.0 - 1.0) - 2.0) / (k - 2.0)

    def evaluate_grid(self, k: float, lam: np.ndarray, gamma: np.ndarray) -> np.ndarray:
        """Version vectorisée de evaluate (Gamma incomplète de scipy)"""
        log_term = np.log(lam - 1.0)
        upper = special.gammaincc(k, np.sqrt(gamma) * log_term / 2.0) * special.gamma(k)
        tail = np.sqrt(lam - 1.0) / lam * (2.0 * np.sqrt(lam) / log_term) ** k * k * upper
        return tail + (k * (gamma * lam) ** (k / 2.0 - 1.0) - 2.0) / (k - 2.0)

    def khintchine_constant(self, k: float) -> KhintchineResult:
        """
        Recherche sur grille logarithmique puis raffinement Nelder-Mead

        Args:
            k: Ordre du moment (> 2 ; k = 2 donne la constante triviale 1)

        Returns:
            KhintchineResult
        """
        if k == 2:
            return KhintchineResult(k=k, A_k=1.0, grid_resolution="none (mu_2 <= mu_2)")
        if k < 2:
            raise DomainError(f"k must be > 2, got {k}")

        lams = np.geomspace(*LAMBDA_RANGE, GRID_POINTS)
        gammas = np.geomspace(*GAMMA_RANGE, GRID_POINTS)
        L, G = np.meshgrid(lams, gammas, indexing="ij")
        values = self.evaluate_grid(k, L, G)
        # argmin renvoie le premier minimum : départage lexicographique en (lambda, gamma)
        i, j = np.unravel_index(np.argmin(values), values.shape)
        start = np.array([lams[i], gammas[j]])
        grid_best = float(values[i, j])
        logger.debug(f"A_{k}: grid minimum {grid_best:.6g} at lambda={start[0]:.4g}, gamma={start[1]:.4g}")

        result = optimize.minimize(
            lambda x: self.evaluate(k, x[0], x[1]),
            start,
            method="Nelder-Mead",
            options={"xatol": 1e-6 * float(np.max(start)), "fatol": 1e-6 * grid_best, "maxiter": 2000},
        )
        lam_opt, gamma_opt = float(result.x[0]), float(result.x[1])
        refined = self.evaluate(k, lam_opt, gamma_opt)
        if not refined <= grid_best:
            lam_opt, gamma_opt, refined = float(start[0]), float(start[1]), self.evaluate(k, start[0], start[1])

        return KhintchineResult(
            k=k,
            lambda_opt=lam_opt,
            gamma_opt=gamma_opt,
            A_k=refined,
            grid_resolution=(
                f"{GRID_POINTS}x{GRID_POINTS} log grid, lambda in [{LAMBDA_RANGE[0]}, {LAMBDA_RANGE[1]}], "
                f"gamma in [{GAMMA_RANGE[0]}, {GAMMA_RANGE[1]}], Nelder-Mead refinement"
            ),
        )


# Instance globale
khintchine_optimizer = KhintchineOptimizer()
