import math
import sys

from app.core.errors import DomainError, InvalidArgumentError, NumericError


class IncompleteGamma:
    """
    Fonctions Gamma incomplètes : série pour x < k + 1, fraction continue
    de Lentz sinon
    """

    def __init__(self, accuracy: float = 1e-15, max_iteration: int = 1000):
        self.accuracy = accuracy
        self.max_iteration = max_iteration

    def _check(self, k: float, x: float) -> None:
        if not k > 0:
            raise InvalidArgumentError(f"k must be positive, got {k}")
        if not x >= 0:
            raise InvalidArgumentError(f"x must be nonnegative, got {x}")

    def _lower_series(self, k: float, x: float) -> float:
        ap = k
        term = 1.0 / k
        total = term
        for _ in range(self.max_iteration):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * self.accuracy:
                return total * math.exp(-x + k * math.log(x))
        raise NumericError(f"incomplete gamma series did not converge for k={k}, x={x}")

    def _upper_continued_fraction(self, k: float, x: float) -> float:
        tiny = sys.float_info.min / sys.float_info.epsilon
        b = x + 1.0 - k
        c = 1.0 / tiny
        d = 1.0 / b
        h = d
        for i in range(1, self.max_iteration + 1):
            an = -i * (i - k)
            b += 2.0
            d = an * d + b
            if abs(d) < tiny:
                d = tiny
            c = b + an / c
            if abs(c) < tiny:
                c = tiny
            d = 1.0 / d
            delta = d * c
            h *= delta
            if abs(delta - 1.0) < self.accuracy:
                return math.exp(-x + k * math.log(x)) * h
        raise NumericError(f"incomplete gamma continued fraction did not converge for k={k}, x={x}")

    def upper(self, k: float, x: float) -> float:
        """
        Gamma(k, x) = int_x^inf t^{k-1} exp(-t) dt
        """
        self._check(k, x)
        if x == 0.0:
            return math.gamma(k)
        if x < k + 1.0:
            return math.gamma(k) - self._lower_series(k, x)
        return self._upper_continued_fraction(k, x)

    def lower(self, k: float, x: float) -> float:
        """gamma(k, x) = int_0^x t^{k-1} exp(-t) dt"""
        self._check(k, x)
        if x == 0.0:
            return 0.0
        if x < k + 1.0:
            return self._lower_series(k, x)
        return math.gamma(k) - self._upper_continued_fraction(k, x)

    def tail_bound(self, B: float, q: float, x: float, verify: bool = False) -> float:
        """
        Majorant B x^{q-1} exp(-x) de Gamma(q, x), valable pour
        x >= B (q - 1) / (B - 1)

        Args:
            B: Constante > 1
            q: Ordre >= 1
            x: Borne inférieure d'intégration
            verify: Compare en plus au Gamma(q, x) calculé
        """
        if B <= 1:
            raise DomainError(f"B must be > 1, got {B}")
        if q < 1:
            raise DomainError(f"q must be >= 1, got {q}")
        threshold = B / (B - 1.0) * (q - 1.0)
        if x < threshold:
            raise DomainError(f"tail bound needs x >= {threshold:g}, got x={x}")
        bound = B * x ** (q - 1.0) * math.exp(-x)
        if verify and self.upper(q, x) > bound:
            raise NumericError(f"Gamma({q}, {x}) exceeds the tail bound {bound}")
        return bound


# Instance globale
gamma_functions = IncompleteGamma()
