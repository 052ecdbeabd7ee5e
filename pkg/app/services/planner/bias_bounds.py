import math

from app.core.errors import InvalidArgumentError
from app.schemas.plan_schemas import BiasBounds


class BiasConstants:
    """Constantes C_q de la borne W_q^q(pi, pi_alpha) <= C_q alpha mu2^{(q+2)/2}"""
    C1 = 22.0
    C2 = 111.0

    @classmethod
    def c_q(cls, q: int) -> float:
        if q == 1:
            return cls.C1
        if q == 2:
            return cls.C2
        raise InvalidArgumentError(f"q must be 1 or 2, got {q}")


class BiasCalculator:
    """
    Erreur due au remplacement de pi par la cible pénalisée pi_alpha
    """

    def bias_bounds(self, alpha: float, mu2: float, q: int) -> BiasBounds:
        """
        Args:
            alpha: Pénalité
            mu2: Second moment de pi (ou sa borne)
            q: Ordre de la distance de Wasserstein

        Returns:
            BiasBounds avec tv_bound = alpha mu2 et
            wq_bound = (C_q alpha mu2^{(q+2)/2})^{1/q}
        """
        if alpha < 0:
            raise InvalidArgumentError(f"alpha must be nonnegative, got {alpha}")
        if mu2 <= 0:
            raise InvalidArgumentError(f"mu2 must be positive, got {mu2}")
        c_q = BiasConstants.c_q(q)
        return BiasBounds(
            q=q,
            tv_bound=alpha * mu2,
            wq_bound=(c_q * alpha * mu2 ** ((q + 2) / 2.0)) ** (1.0 / q),
        )

    def scaled_error_target(self, mu2: float, epsilon: float) -> float:
        """Seuil absolu epsilon * sqrt(mu2) du critère de précision relative"""
        if epsilon <= 0:
            raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
        if mu2 <= 0:
            raise InvalidArgumentError(f"mu2 must be positive, got {mu2}")
        return epsilon * math.sqrt(mu2)


# Instance globale
bias_calculator = BiasCalculator()
