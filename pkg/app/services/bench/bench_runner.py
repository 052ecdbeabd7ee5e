from typing import Optional, Tuple

import numpy as np

from app.core.logger import get_logger
from app.schemas.metric_schemas import BenchReport, BenchRequest
from app.schemas.plan_schemas import PlannerAlgorithm, PlannerInputs
from app.schemas.sampler_schemas import SamplerAlgorithm, SamplerConfig
from app.services.metrics import SampleCloud, gaussian_oracle, scaled_error_checker, wasserstein_calculator
from app.services.planner import bias_calculator, bound_evaluator, planner
from app.services.potentials import potential_service
from app.services.samplers import make_generator, sampler_runner

logger = get_logger(__name__)

# LMC sous hypothèse Hessienne reste l'itération LMC, seul le réglage change
SAMPLER_FOR = {
    PlannerAlgorithm.LMC: SamplerAlgorithm.LMC,
    PlannerAlgorithm.LMC_HESSIAN: SamplerAlgorithm.LMC,
    PlannerAlgorithm.KLMC: SamplerAlgorithm.KLMC,
    PlannerAlgorithm.KLMC2: SamplerAlgorithm.KLMC2,
}


class BenchRunner:
    """
    Chaîne complète sur une cible gaussienne : plan, exécution de
    n chaînes, loi exacte, distance empirique à un nuage iid de la cible
    et critère epsilon * sqrt(mu2)
    """

    def planner_inputs(self, request: BenchRequest) -> PlannerInputs:
        precision = np.asarray(request.target.precision, dtype=float)
        return PlannerInputs(
            p=request.target.p,
            M=float(precision.max()),
            M2=request.M2 if request.M2 is not None else 0.0,
            mu2=float(np.sum(1.0 / precision)),
            epsilon=request.eps,
            q=request.q,
        )

    def reference_cloud(self, request: BenchRequest) -> SampleCloud:
        """Tirages iid de la cible sur le flux qui suit celui des chaînes"""
        rng = make_generator(request.seed, request.n_chains)
        scale = 1.0 / np.sqrt(np.asarray(request.target.precision, dtype=float))
        points = rng.standard_normal((request.n_chains, request.target.p)) * scale
        return SampleCloud(points=points, provenance="iid target draws")

    def run(self, request: BenchRequest, threads: Optional[int] = None) -> Tuple[BenchReport, np.ndarray]:
        """
        Returns:
            (rapport, états finaux des chaînes de forme (n_chains, p))
        """
        potential = potential_service.build_potential(request.target)
        inputs = self.planner_inputs(request)
        plan = planner.plan(request.alg, inputs)
        run_K = min(plan.K, request.max_steps)
        if run_K < plan.K:
            logger.info(f"Bench caps K from {plan.K} to {run_K}")

        config = SamplerConfig(
            algorithm=SAMPLER_FOR[request.alg],
            alpha=plan.alpha,
            h=plan.h,
            gamma=plan.gamma,
            steps=run_K,
            seed=request.seed,
        )
        theorem_bound = bound_evaluator.evaluate(request.alg, inputs, plan.alpha, plan.h, run_K, plan.gamma).total
        exact_w2 = gaussian_oracle.gaussian_w2(
            gaussian_oracle.gaussian_chain_law(config, potential),
            gaussian_oracle.gaussian_law_of_target(potential),
        )

        trajectories = sampler_runner.run_chains(config, potential, request.n_chains, threads)
        states = sampler_runner.final_states(trajectories)
        empirical = wasserstein_calculator.wasserstein_empirical(
            SampleCloud(points=states), self.reference_cloud(request), q=request.q
        )

        mu2 = inputs.effective_mu2
        target = bias_calculator.scaled_error_target(mu2, request.eps)
        bound_passes = theorem_bound <= target
        # W_q <= W_2 : la loi exacte contrôle aussi l'ordre 1
        exact_passes = scaled_error_checker.scaled_error_check(exact_w2, mu2, request.eps)
        report = BenchReport(
            algorithm=request.alg,
            q=request.q,
            epsilon=request.eps,
            mu2=mu2,
            planned_K=plan.K,
            run_K=run_K,
            alpha=plan.alpha,
            h=plan.h,
            gamma=plan.gamma,
            target_error=target,
            theorem_bound=theorem_bound,
            exact_w2=exact_w2,
            empirical_wq=empirical,
            n_chains=request.n_chains,
            bound_passes=bound_passes,
            exact_passes=exact_passes,
            empirical_passes=scaled_error_checker.scaled_error_check(empirical, mu2, request.eps),
            bound_implies_exact=exact_passes or not bound_passes,
            passed=exact_passes,
        )
        logger.info(
            f"Bench {request.alg.value}: K={run_K}/{plan.K}, bound={theorem_bound:.4g}, "
            f"exact W2={exact_w2:.4g}, target={target:.4g}"
        )
        return report, states


# Instance globale
bench_runner = BenchRunner()
