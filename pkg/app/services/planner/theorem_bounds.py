import math
from typing import List, Optional

from app.core.errors import CapabilityError, InvalidArgumentError
from app.schemas.plan_schemas import BoundEvaluation, BoundTerms, PlannerAlgorithm, PlannerInputs
from app.services.planner.bias_bounds import bias_calculator


def q_lmc_hessian(M: float, M2: float, p: int) -> float:
    return M2 + 5.6 * M ** 1.5 / math.sqrt(p)


def q_klmc2(M: float, M2: float, p: int) -> float:
    return M2 + M ** 1.5 / math.sqrt(p)


def _require_m2(inputs: PlannerInputs, algorithm: PlannerAlgorithm) -> float:
    if inputs.M2 is None:
        raise CapabilityError(f"{algorithm.value} needs the Hessian-Lipschitz constant M2")
    return inputs.M2


def _ratio(numerator: float, alpha: float) -> float:
    return numerator / alpha if alpha > 0 else math.inf


def contraction(x: float, exponent: float) -> float:
    """|1 - x|^exponent, via log1p pour les x plus petits que l'epsilon machine"""
    if 0.0 <= x < 1.0:
        return math.exp(exponent * math.log1p(-x))
    return abs(1.0 - x) ** exponent


def _common_violations(inputs: PlannerInputs, alpha: float) -> List[str]:
    violations = []
    if alpha <= 0:
        violations.append("alpha > 0")
    if alpha > inputs.M / 20.0:
        violations.append("alpha <= M/20")
    return violations


def _kinetic_violations(inputs: PlannerInputs, alpha: float, gamma: Optional[float]) -> List[str]:
    if gamma is None:
        raise InvalidArgumentError("gamma is required for kinetic bounds")
    violations = _common_violations(inputs, alpha)
    if gamma < math.sqrt(inputs.M + 2.0 * alpha):
        violations.append("gamma >= sqrt(M+2*alpha)")
    return violations


class TheoremBounds:
    """
    Évalue les bornes à trois termes (horizon fini, discrétisation,
    absence de forte convexité) pour des paramètres quelconques, avec la
    liste des hypothèses non satisfaites
    """

    def _evaluation(self, algorithm, inputs, alpha, h, K, gamma, terms, violations) -> BoundEvaluation:
        bias = bias_calculator.bias_bounds(alpha, inputs.effective_mu2, inputs.q)
        return BoundEvaluation(
            algorithm=algorithm,
            q=inputs.q,
            alpha=alpha,
            h=h,
            gamma=gamma,
            K=K,
            bound_terms=terms,
            total=terms.total,
            violations=violations,
            bias=bias,
        )

    def bound_lmc(self, inputs: PlannerInputs, alpha: float, h: float, K: int) -> BoundEvaluation:
        mu2 = inputs.effective_mu2
        M, p = inputs.M, inputs.p
        violations = _common_violations(inputs, alpha)
        if h > 1.0 / (M + alpha):
            violations.append("h <= 1/(M+alpha)")
        bias = bias_calculator.bias_bounds(alpha, mu2, inputs.q)
        terms = BoundTerms(
            finiteness=math.sqrt(mu2) * contraction(alpha * h, K / 2.0),
            discretization=math.sqrt(_ratio(2.1 * h * M * p, alpha)),
            lack_of_strong_convexity=bias.wq_bound,
        )
        return self._evaluation(PlannerAlgorithm.LMC, inputs, alpha, h, K, None, terms, violations)

    def bound_lmc_hessian(self, inputs: PlannerInputs, alpha: float, h: float, K: int) -> BoundEvaluation:
        M2 = _require_m2(inputs, PlannerAlgorithm.LMC_HESSIAN)
        mu2 = inputs.effective_mu2
        M, p = inputs.M, inputs.p
        violations = _common_violations(inputs, alpha)
        if h > 1.0 / (M + alpha):
            violations.append("h <= 1/(M+alpha)")
        bias = bias_calculator.bias_bounds(alpha, mu2, inputs.q)
        terms = BoundTerms(
            finiteness=math.sqrt(mu2) * contraction(alpha * h, K),
            discretization=_ratio(M2 * h * p / 2.0, alpha) + _ratio(2.8 * M ** 1.5 * h * math.sqrt(p), alpha),
            lack_of_strong_convexity=bias.wq_bound,
        )
        return self._evaluation(PlannerAlgorithm.LMC_HESSIAN, inputs, alpha, h, K, None, terms, violations)

    def bound_klmc(self, inputs: PlannerInputs, alpha: float, h: float, K: int, gamma: float) -> BoundEvaluation:
        mu2 = inputs.effective_mu2
        M, p = inputs.M, inputs.p
        violations = _kinetic_violations(inputs, alpha, gamma)
        if h > alpha / (4.0 * gamma * (M + alpha)):
            violations.append("h <= alpha/(4*gamma*(M+alpha))")
        bias = bias_calculator.bias_bounds(alpha, mu2, inputs.q)
        terms = BoundTerms(
            finiteness=math.sqrt(2.0 * mu2) * contraction(3.0 * alpha * h / (4.0 * gamma), K),
            discretization=1.5 * M * math.sqrt(p) * _ratio(h, alpha),
            lack_of_strong_convexity=bias.wq_bound,
        )
        return self._evaluation(PlannerAlgorithm.KLMC, inputs, alpha, h, K, gamma, terms, violations)

    def bound_klmc2(self, inputs: PlannerInputs, alpha: float, h: float, K: int, gamma: float) -> BoundEvaluation:
        M2 = _require_m2(inputs, PlannerAlgorithm.KLMC2)
        mu2 = inputs.effective_mu2
        M, p = inputs.M, inputs.p
        Q = q_klmc2(M, M2, p)
        violations = _kinetic_violations(inputs, alpha, gamma)
        # Les deux plafonds de pas sont imposés simultanément
        if h > alpha / (5.0 * gamma * (M + alpha)):
            violations.append("h <= alpha/(5*gamma*(M+alpha))")
        if M2 > 0 and h > alpha / (4.0 * M2 * math.sqrt(5.0 * p)):
            violations.append("h <= alpha/(4*M2*sqrt(5p))")
        if M2 > 0:
            tail = 1.6 / math.sqrt(M) * math.exp(-(alpha / h) ** 2 / (160.0 * M2 ** 2))
        else:
            tail = 0.0
        bias = bias_calculator.bias_bounds(alpha, mu2, inputs.q)
        terms = BoundTerms(
            finiteness=math.sqrt(2.0 * mu2) * contraction(alpha * h / (4.0 * gamma), K),
            discretization=_ratio(2.0 * h * h * Q * p, alpha) + tail,
            lack_of_strong_convexity=bias.wq_bound,
        )
        return self._evaluation(PlannerAlgorithm.KLMC2, inputs, alpha, h, K, gamma, terms, violations)

    def evaluate(
        self,
        algorithm: PlannerAlgorithm,
        inputs: PlannerInputs,
        alpha: float,
        h: float,
        K: int,
        gamma: Optional[float] = None,
    ) -> BoundEvaluation:
        if algorithm is PlannerAlgorithm.LMC:
            return self.bound_lmc(inputs, alpha, h, K)
        if algorithm is PlannerAlgorithm.LMC_HESSIAN:
            return self.bound_lmc_hessian(inputs, alpha, h, K)
        if algorithm is PlannerAlgorithm.KLMC:
            return self.bound_klmc(inputs, alpha, h, K, gamma)
        return self.bound_klmc2(inputs, alpha, h, K, gamma)


# Instance globale
bound_evaluator = TheoremBounds()
