import math
from typing import Optional, Tuple

import numpy as np

from app.core.errors import DivergenceError
from app.services.kinetic import KineticKernels, NoiseCovariance
from app.services.potentials import SurrogatePotential

State = Tuple[np.ndarray, np.ndarray]


def _ensure_finite(step: Optional[int], new: np.ndarray, last: np.ndarray) -> None:
    if not np.all(np.isfinite(new)):
        raise DivergenceError(step if step is not None else -1, last_state=last.copy())


class LangevinSteps:
    """
    Une itération de chacune des trois chaînes

    Les bruits sont fournis par l'appelant : les fonctions sont
    déterministes et ne tirent rien elles-mêmes.
    """

    def lmc_step(
        self,
        theta: np.ndarray,
        surrogate: SurrogatePotential,
        h: float,
        noise: np.ndarray,
        step: Optional[int] = None,
    ) -> np.ndarray:
        """
        theta' = (1 - alpha h) theta - h grad f(theta) + sqrt(2h) noise

        Args:
            theta: Position courante
            surrogate: Potentiel pénalisé (fournit f et alpha)
            h: Pas
            noise: Gaussienne standard de dimension p
            step: Indice de l'itération, reporté en cas de divergence
        """
        new = (1.0 - surrogate.alpha * h) * theta - h * surrogate.base.grad(theta) + math.sqrt(2.0 * h) * noise
        _ensure_finite(step, new, theta)
        return new

    def klmc_step(
        self,
        state: State,
        surrogate: SurrogatePotential,
        kernels: KineticKernels,
        cov: NoiseCovariance,
        noise4: np.ndarray,
        step: Optional[int] = None,
    ) -> State:
        """
        Seules les composantes 1 et 2 de noise4 (forme (p, 4), déjà
        corrélée par le facteur de C) sont utilisées.
        """
        v, theta = state
        g = surrogate.grad(theta)
        scale = math.sqrt(2.0 * kernels.gamma)
        new_v = kernels.psi0 * v - kernels.psi1 * g + scale * noise4[:, 0]
        new_theta = theta + kernels.psi1 * v - kernels.psi2 * g + scale * noise4[:, 1]
        _ensure_finite(step, new_v, theta)
        _ensure_finite(step, new_theta, theta)
        return new_v, new_theta

    def klmc2_step(
        self,
        state: State,
        surrogate: SurrogatePotential,
        kernels: KineticKernels,
        cov: NoiseCovariance,
        noise4: np.ndarray,
        step: Optional[int] = None,
    ) -> State:
        """
        Version du second ordre : g et H sont évalués en theta avant le pas,
        H n'intervient que par produits Hessienne-vecteur
        """
        v, theta = state
        g = surrogate.grad(theta)
        Hv = surrogate.hess_vec(theta, v)
        H_xi3 = surrogate.hess_vec(theta, noise4[:, 2])
        H_xi4 = surrogate.hess_vec(theta, noise4[:, 3])
        scale = math.sqrt(2.0 * kernels.gamma)
        # Même ordre d'opérations que klmc_step : H = 0 redonne KLMC bit à bit
        new_v = kernels.psi0 * v - kernels.psi1 * g - kernels.phi2 * Hv + scale * (noise4[:, 0] - H_xi3)
        new_theta = theta + kernels.psi1 * v - kernels.psi2 * g - kernels.phi3 * Hv + scale * (noise4[:, 1] - H_xi4)
        _ensure_finite(step, new_v, theta)
        _ensure_finite(step, new_theta, theta)
        return new_v, new_theta


# Instance globale
langevin_steps = LangevinSteps()
