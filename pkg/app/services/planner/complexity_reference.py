import math
from typing import List

from app.core.errors import CapabilityError, UnsupportedCombinationError
from app.schemas.plan_schemas import ComplexityRow, Metric, PlannerInputs, ReferenceAlgorithm


def kappa_tilde(kappa: float, kappa2: float, p: int) -> float:
    return kappa2 + kappa * p ** (-1.0 / 3.0)


class ComplexityReference:
    """
    Ordres de grandeur du nombre d'itérations K(p, epsilon) par
    algorithme et par métrique, en fonction de kappa = MD, kappa2 = M2^{2/3} D
    et de l'exposant beta de la borne mu2 <= D p^beta
    """

    def formula(
        self,
        algorithm: ReferenceAlgorithm,
        metric: Metric,
        kappa: float,
        kappa2: float,
        p: int,
        epsilon: float,
        beta: float = 1.0,
        with_log: bool = True,
    ) -> float:
        eps = epsilon
        order = 1 if metric is Metric.W1 else 2

        def log_factor(value: float) -> float:
            return value if with_log else 1.0

        if algorithm is ReferenceAlgorithm.LMCA and metric is Metric.TV:
            return kappa * p ** (1.0 + beta) / (2.0 * eps ** 4)
        if algorithm is ReferenceAlgorithm.MALA and metric is Metric.TV:
            return p ** 3 * kappa ** 1.5 * eps ** -1.5 * log_factor(math.log(p * kappa / eps) ** 1.5)
        if algorithm is ReferenceAlgorithm.LMC and metric is Metric.TV:
            if beta != 1.0:
                raise UnsupportedCombinationError("the LMC/TV reference rate is tabulated for beta = 1 only")
            return p ** 3 / eps ** 4
        if metric is Metric.TV:
            raise UnsupportedCombinationError(f"no TV rate for {algorithm.value}")

        if algorithm is ReferenceAlgorithm.LMC:
            power = 4 if order == 1 else 6
            return kappa * p ** (1.0 + beta) / eps ** power * log_factor(math.log(100.0 / eps))
        if algorithm is ReferenceAlgorithm.LMC_HESSIAN:
            power = 3 if order == 1 else 5
            growth = kappa2 ** 1.5 * p ** ((2.0 + 3.0 * beta) / 2.0) + kappa ** 1.5 * p ** ((1.0 + 3.0 * beta) / 2.0)
            return growth / eps ** power * log_factor(math.log(100.0 / eps))
        if algorithm is ReferenceAlgorithm.KLMC:
            return kappa ** 1.5 * p ** ((1.0 + 3.0 * beta) / 2.0) / eps ** (2 * order + 1) * log_factor(math.log(150.0 / eps))
        if algorithm is ReferenceAlgorithm.KLMC2:
            power = 2 if order == 1 else 4
            return kappa ** 0.5 * kappa2 ** 1.5 * p ** (2.0 * beta) / eps ** power
        raise UnsupportedCombinationError(f"no {metric.value} rate for {algorithm.value}")

    def complexity_reference(self, inputs: PlannerInputs, algorithm: ReferenceAlgorithm, metric: Metric) -> float:
        """
        Valeur de la formule de complexité pour les constantes du problème

        Raises:
            UnsupportedCombinationError: couple (algorithme, métrique) non tabulé
        """
        needs_kappa2 = algorithm in (ReferenceAlgorithm.LMC_HESSIAN, ReferenceAlgorithm.KLMC2) and metric is not Metric.TV
        if needs_kappa2 and inputs.kappa2 is None:
            raise CapabilityError(f"{algorithm.value} rate needs M2")
        return self.formula(
            algorithm,
            metric,
            inputs.kappa,
            inputs.kappa2 or 0.0,
            inputs.p,
            inputs.epsilon,
            inputs.effective_beta,
        )

    def complexity_table(
        self,
        kappa: float,
        kappa2: float,
        p: int,
        epsilon: float,
        beta: float = 1.0,
    ) -> List[ComplexityRow]:
        """
        Lignes du tableau récapitulatif (facteurs logarithmiques omis)

        Returns:
            Liste de ComplexityRow (algorithm, conditions, metric, value)
        """
        cells = [
            (ReferenceAlgorithm.LMCA, "1-2", Metric.TV),
            (ReferenceAlgorithm.LMC, "1-2", Metric.TV),
            (ReferenceAlgorithm.LMC, "1-2", Metric.W1),
            (ReferenceAlgorithm.LMC, "1-2", Metric.W2),
            (ReferenceAlgorithm.LMC_HESSIAN, "1-3", Metric.W1),
            (ReferenceAlgorithm.LMC_HESSIAN, "1-3", Metric.W2),
            (ReferenceAlgorithm.KLMC, "1-2", Metric.W1),
            (ReferenceAlgorithm.KLMC, "1-2", Metric.W2),
            (ReferenceAlgorithm.KLMC2, "1-3", Metric.W1),
            (ReferenceAlgorithm.KLMC2, "1-3", Metric.W2),
        ]
        rows = []
        for algorithm, conditions, metric in cells:
            try:
                value = self.formula(algorithm, metric, kappa, kappa2, p, epsilon, beta, with_log=False)
            except UnsupportedCombinationError:
                continue
            rows.append(ComplexityRow(algorithm=algorithm, conditions=conditions, metric=metric, value=value))

        # Forme compacte du taux LMC Hessien avec kappa_tilde
        compact = kappa_tilde(kappa, kappa2, p) ** 1.5 * p ** ((2.0 + 3.0 * beta) / 2.0)
        for metric, power in ((Metric.W1, 3), (Metric.W2, 5)):
            rows.append(ComplexityRow(
                algorithm=ReferenceAlgorithm.LMC_HESSIAN,
                conditions="1-3 compact",
                metric=metric,
                value=compact / epsilon ** power,
            ))
        return rows


# Instance globale
complexity_calculator = ComplexityReference()
