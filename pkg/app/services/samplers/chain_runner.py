from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from app.core.config import settings
from app.core.errors import CapabilityError, InvalidArgumentError
from app.core.logger import get_logger
from app.schemas.sampler_schemas import SamplerAlgorithm, SamplerConfig
from app.services.kinetic import covariance_builder, kernel_calculator
from app.services.potentials import PotentialSpec, SurrogatePotential
from app.services.samplers.sampler_steps import langevin_steps

logger = get_logger(__name__)

# Nombre maximal d'itérations dont le bruit est tiré en un seul appel
NOISE_BLOCK = 1024


@dataclass
class Trajectory:
    """
    Itérés conservés d'une chaîne (état initial compris, puis un état
    tous les `thin` pas, l'état final étant toujours conservé)
    """
    chain_id: int
    config: SamplerConfig
    steps: np.ndarray
    states: np.ndarray
    velocities: Optional[np.ndarray]
    rng_draw_count: int

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def make_generator(seed: int, chain_id: int) -> np.random.Generator:
    """Flux Philox indépendant pour chaque couple (graine, chaîne)"""
    if chain_id < 0 or chain_id >= 2 ** 64:
        raise InvalidArgumentError(f"chain id out of range: {chain_id}")
    return np.random.Generator(np.random.Philox(key=(chain_id << 64) | seed))


class SamplerRunner:
    """
    Exécute les chaînes LMC, KLMC et KLMC2 de façon reproductible
    """

    def _initial_theta(self, config: SamplerConfig, p: int) -> np.ndarray:
        if config.initial_theta is None:
            return np.zeros(p)
        theta = np.asarray(config.initial_theta, dtype=float)
        if theta.shape != (p,):
            raise InvalidArgumentError(f"initial_theta must have {p} entries, got {theta.shape[0]}")
        return theta.copy()

    def run(self, config: SamplerConfig, potential: PotentialSpec, chain_id: int = 0) -> Trajectory:
        """
        Lance K itérations de l'algorithme choisi

        Args:
            config: Configuration de la chaîne
            potential: Potentiel cible
            chain_id: Indice de la chaîne, combiné à la graine pour le flux aléatoire

        Returns:
            Trajectory
        """
        algorithm = config.algorithm
        if algorithm is SamplerAlgorithm.KLMC2 and not potential.has_hess_vec:
            raise CapabilityError(f"klmc2 needs a Hessian-vector oracle, potential '{potential.name}' has none")

        p = potential.p
        surrogate = SurrogatePotential(potential, config.alpha)
        rng = make_generator(config.seed, chain_id)
        draws = 0

        theta = self._initial_theta(config, p)
        v = None
        if algorithm.is_kinetic:
            v = rng.standard_normal(p)
            draws += p
            kernels = kernel_calculator.eval_kernels(config.gamma, config.h)
            cov = covariance_builder.noise_covariance(config.gamma, config.h)
            step_fn = langevin_steps.klmc2_step if algorithm is SamplerAlgorithm.KLMC2 else langevin_steps.klmc_step

        logger.debug(f"Chain {chain_id}: {algorithm.value}, K={config.steps}, h={config.h}, alpha={config.alpha}")

        kept_steps = [0]
        kept_states = [theta.copy()]
        kept_velocities = [v.copy()] if v is not None else None

        k = 0
        while k < config.steps:
            block = min(NOISE_BLOCK, config.steps - k)
            if algorithm.is_kinetic:
                noise = cov.correlated(rng.standard_normal((block, p, 4)))
                draws += block * p * 4
            else:
                noise = rng.standard_normal((block, p))
                draws += block * p
            for b in range(block):
                k += 1
                if algorithm.is_kinetic:
                    v, theta = step_fn((v, theta), surrogate, kernels, cov, noise[b], step=k)
                else:
                    theta = langevin_steps.lmc_step(theta, surrogate, config.h, noise[b], step=k)
                if k % config.thin == 0 or k == config.steps:
                    kept_steps.append(k)
                    kept_states.append(theta.copy())
                    if kept_velocities is not None:
                        kept_velocities.append(v.copy())

        logger.debug(f"Chain {chain_id}: done, {draws} gaussian draws")
        return Trajectory(
            chain_id=chain_id,
            config=config,
            steps=np.array(kept_steps),
            states=np.array(kept_states),
            velocities=np.array(kept_velocities) if kept_velocities is not None else None,
            rng_draw_count=draws,
        )

    def run_chains(
        self,
        config: SamplerConfig,
        potential: PotentialSpec,
        n_chains: int,
        threads: Optional[int] = None,
    ) -> List[Trajectory]:
        """
        Lance n_chains chaînes indépendantes sur un pool de threads

        Returns:
            Trajectoires triées par indice de chaîne
        """
        if n_chains < 1:
            raise InvalidArgumentError(f"n_chains must be positive, got {n_chains}")
        workers = max(1, threads or settings.THREADS)
        logger.info(f"Running {n_chains} {config.algorithm.value} chains on {workers} threads")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trajectories = list(pool.map(lambda cid: self.run(config, potential, cid), range(n_chains)))
        return sorted(trajectories, key=lambda t: t.chain_id)

    def final_states(self, trajectories: List[Trajectory]) -> np.ndarray:
        return np.array([t.final_state for t in trajectories])


# Instance globale
sampler_runner = SamplerRunner()
