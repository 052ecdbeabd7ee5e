import math
from typing import Optional, Tuple

from app.core.errors import CapabilityError, InfeasiblePlanError, InvalidArgumentError
from app.core.logger import get_logger
from app.schemas.plan_schemas import Plan, PlannerAlgorithm, PlannerInputs
from app.services.planner.bias_bounds import bias_calculator
from app.services.planner.theorem_bounds import bound_evaluator, q_klmc2, q_lmc_hessian

logger = get_logger(__name__)

# Tolérance relative sur l'atteinte de la précision cible
TARGET_SLACK = 1e-9


def _require_m2(inputs: PlannerInputs, algorithm: PlannerAlgorithm) -> float:
    if inputs.M2 is None:
        raise CapabilityError(f"{algorithm.value} planning needs the Hessian-Lipschitz constant M2")
    return inputs.M2


class Planner:
    """
    Réglage (alpha, h, gamma, K) de chaque algorithme à partir des
    constantes du problème, selon les recettes en forme close :
    alpha et h partagent 99% du budget d'erreur, K rend l'erreur
    d'horizon fini inférieure à 1% de epsilon * sqrt(mu2)
    """

    def _finish(
        self,
        algorithm: PlannerAlgorithm,
        inputs: PlannerInputs,
        alpha: float,
        h: float,
        K_real: float,
        gamma: Optional[float] = None,
        Q: Optional[float] = None,
    ) -> Plan:
        K = math.ceil(K_real)
        evaluation = bound_evaluator.evaluate(algorithm, inputs, alpha, h, K, gamma)
        if evaluation.violations:
            raise InfeasiblePlanError(
                evaluation.violations[0],
                f"{algorithm.value} (q={inputs.q}) gives alpha={alpha:.6g}, h={h:.6g}"
                + (f", gamma={gamma:.6g}" if gamma is not None else ""),
            )
        target = bias_calculator.scaled_error_target(inputs.effective_mu2, inputs.epsilon)
        predicted = evaluation.total
        plan = Plan(
            algorithm=algorithm,
            q=inputs.q,
            epsilon=inputs.epsilon,
            alpha=alpha,
            h=h,
            gamma=gamma,
            K=K,
            K_real=K_real,
            Q=Q,
            bound_terms=evaluation.bound_terms,
            predicted_error=predicted,
            target_error=target,
            meets_target=predicted <= target * (1.0 + TARGET_SLACK),
            complexity_formula_value=self.complexity_upper_bound(inputs, algorithm),
        )
        logger.info(
            f"Planned {algorithm.value} q={inputs.q}: alpha={alpha:.4g}, h={h:.4g}, "
            f"gamma={gamma}, K={K}, predicted={predicted:.4g}, target={target:.4g}"
        )
        if not plan.meets_target:
            logger.warning(f"{algorithm.value} plan predicts {predicted:.6g} above target {target:.6g}")
        return plan

    def plan_lmc(self, inputs: PlannerInputs) -> Plan:
        eps, M, p = inputs.epsilon, inputs.M, inputs.p
        mu2 = inputs.effective_mu2
        if inputs.q == 1:
            h = eps ** 3 / (322.0 * M * p)
            alpha = (2.1 * h * M * p) ** (1.0 / 3.0) / (44.0 ** (2.0 / 3.0) * mu2)
        else:
            h = eps ** 4 / (3900.0 * M * p)
            alpha = (2.1 * h * M * p) ** 0.5 / (111.0 ** 0.5 * mu2)
        K_real = 2.0 / (alpha * h) * math.log(100.0 / eps)
        return self._finish(PlannerAlgorithm.LMC, inputs, alpha, h, K_real)

    def plan_lmc_hessian(self, inputs: PlannerInputs) -> Plan:
        M2 = _require_m2(inputs, PlannerAlgorithm.LMC_HESSIAN)
        eps, M, p = inputs.epsilon, inputs.M, inputs.p
        mu2 = inputs.effective_mu2
        Q = q_lmc_hessian(M, M2, p)
        if inputs.q == 1:
            h = eps ** 2 / (45.0 * math.sqrt(mu2) * Q * p)
            alpha = math.sqrt(h * Q * p / (44.0 * mu2 ** 1.5))
        else:
            h = eps ** 3 / (387.0 * math.sqrt(mu2) * Q * p)
            alpha = (h * Q * p) ** (2.0 / 3.0) / (111.0 * mu2 ** 2) ** (1.0 / 3.0)
        K_real = 2.0 / (alpha * h) * math.log(100.0 / eps)
        return self._finish(PlannerAlgorithm.LMC_HESSIAN, inputs, alpha, h, K_real, Q=Q)

    def plan_klmc(self, inputs: PlannerInputs) -> Plan:
        eps, M, p = inputs.epsilon, inputs.M, inputs.p
        mu2 = inputs.effective_mu2
        if inputs.q == 1:
            h = eps ** 2 / (143.0 * M * math.sqrt(mu2 * p))
            alpha = math.sqrt(1.5 * h * M * math.sqrt(p) / (22.0 * mu2 ** 1.5))
        else:
            h = eps ** 4 / (1200.0 * M * math.sqrt(mu2 * p))
            alpha = (3.0 * h * M * math.sqrt(p)) ** (2.0 / 3.0) / (111.0 * mu2 ** 2) ** (1.0 / 3.0)
        gamma = math.sqrt(M + 2.0 * alpha)
        K_real = 4.0 * gamma / (3.0 * alpha * h) * math.log(150.0 / eps)
        return self._finish(PlannerAlgorithm.KLMC, inputs, alpha, h, K_real, gamma=gamma)

    def klmc2_step(self, inputs: PlannerInputs, alpha: float, Q: float) -> float:
        """Pas h = alpha * (160 M2^2 log(160/(eps sqrt(M mu2))) v 100 alpha Q p/(eps sqrt(mu2)))^{-1/2}"""
        eps, M = inputs.epsilon, inputs.M
        mu2 = inputs.effective_mu2
        log_branch = 160.0 * inputs.M2 ** 2 * math.log(160.0 / (eps * math.sqrt(M * mu2)))
        linear_branch = 100.0 * alpha * Q * inputs.p / (eps * math.sqrt(mu2))
        return alpha * max(log_branch, linear_branch) ** -0.5

    def plan_klmc2(self, inputs: PlannerInputs) -> Plan:
        M2 = _require_m2(inputs, PlannerAlgorithm.KLMC2)
        eps, M, p = inputs.epsilon, inputs.M, inputs.p
        mu2 = inputs.effective_mu2
        Q = q_klmc2(M, M2, p)
        alpha = eps / (23.0 * mu2) if inputs.q == 1 else eps ** 2 / (116.0 * mu2)
        h = self.klmc2_step(inputs, alpha, Q)
        gamma = math.sqrt(M + 2.0 * alpha)
        K_real = 4.0 * gamma / (alpha * h) * math.log(142.0 / eps)
        return self._finish(PlannerAlgorithm.KLMC2, inputs, alpha, h, K_real, gamma=gamma, Q=Q)

    def plan(self, algorithm: PlannerAlgorithm, inputs: PlannerInputs) -> Plan:
        builders = {
            PlannerAlgorithm.LMC: self.plan_lmc,
            PlannerAlgorithm.LMC_HESSIAN: self.plan_lmc_hessian,
            PlannerAlgorithm.KLMC: self.plan_klmc,
            PlannerAlgorithm.KLMC2: self.plan_klmc2,
        }
        return builders[algorithm](inputs)

    def complexity_upper_bound(self, inputs: PlannerInputs, algorithm: PlannerAlgorithm) -> float:
        """
        Majorant en forme close du nombre d'itérations K pour l'ordre
        inputs.q (constantes numériques de chaque recette)
        """
        eps, M, p, q = inputs.epsilon, inputs.M, inputs.p, inputs.q
        mu2 = inputs.effective_mu2
        if algorithm is PlannerAlgorithm.LMC:
            constant, power = (4.3e4, 4) if q == 1 else (3.6e6, 6)
            return constant * M * mu2 * p / eps ** power * math.log(100.0 / eps)
        if algorithm is PlannerAlgorithm.LMC_HESSIAN:
            Q = q_lmc_hessian(M, _require_m2(inputs, algorithm), p)
            constant, power = (2e3, 3) if q == 1 else (9.9e4, 5)
            return constant * mu2 ** 1.5 * Q * p / eps ** power * math.log(100.0 / eps)
        if algorithm is PlannerAlgorithm.KLMC:
            constant = 9.2e3 if q == 1 else 4.4e5
            return constant * (M * mu2) ** 1.5 * math.sqrt(p) / eps ** (2 * q + 1) * math.log(150.0 / eps)
        M2 = _require_m2(inputs, algorithm)
        Q = q_klmc2(M, M2, p)
        log_term = 1.6 * M2 ** 2 * math.log(160.0 / (eps * math.sqrt(M * mu2)))
        if q == 1:
            constant, power, linear = 2.2e4, 2, Q * p / (23.0 * mu2 ** 1.5)
        else:
            constant, power, linear = 5.4e6, 4, eps * Q * p / (116.0 * mu2 ** 1.5)
        # M2 {.}^{1/2} écrit sous la forme {M2^2 .}^{1/2} pour couvrir M2 = 0
        return (
            constant * math.sqrt(M) * mu2 ** 2 / eps ** power
            * math.sqrt(max(log_term, linear))
            * math.log(142.0 / eps)
        )

    def lmca_kl_bound(self, mu2: float, M: float, p: int, h: float, K: int) -> float:
        """Borne KL de la moyenne des K premiers itérés de LMC : mu2/(2Kh) + Mph"""
        if K < 1 or h <= 0:
            raise InvalidArgumentError(f"K and h must be positive, got K={K}, h={h}")
        return mu2 / (2.0 * K * h) + M * p * h

    def lmca_optimal_step(self, mu2: float, M: float, p: int, K: int) -> Tuple[float, float]:
        """
        Returns:
            (h_opt, borne KL correspondante) avec h_opt = (2KMp/mu2)^{-1/2}
        """
        if K < 1:
            raise InvalidArgumentError(f"K must be positive, got {K}")
        h_opt = (2.0 * K * M * p / mu2) ** -0.5
        return h_opt, math.sqrt(2.0 * M * p * mu2 / K)

    def pinsker_tv_bound(self, kl: float) -> float:
        if kl < 0:
            raise InvalidArgumentError(f"KL divergence must be nonnegative, got {kl}")
        return math.sqrt(kl / 2.0)


# Instance globale
planner = Planner()
