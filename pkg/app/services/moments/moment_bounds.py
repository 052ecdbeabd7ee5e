import math

from app.core.errors import DomainError, InvalidArgumentError
from app.schemas.moment_schemas import MomentBoundReport, MomentRegime


def log_plus(x: float) -> float:
    return max(0.0, math.log(x)) if x > 0 else 0.0


def _check_positive(**values) -> None:
    for name, value in values.items():
        if value is None or not value > 0:
            raise InvalidArgumentError(f"{name} must be positive, got {value}")


class MomentBounds:
    """
    Majorants du moment d'ordre a autour du minimiseur, selon la classe
    de convexité du potentiel
    """

    def moment_bound_strong(self, p: int, m: float, a: float) -> float:
        """Potentiel m-fortement convexe"""
        _check_positive(p=p, m=m, a=a)
        base = (p / m) ** (a / 2.0)
        if a <= 2:
            return base
        return base * 2.0 ** (a - 1.0) * (1.0 + (1.0 + a / p) ** (a / 2.0 - 1.0))

    def moment_bound_inside_ball(self, p: int, m: float, R: float, M: float, a: float) -> MomentBoundReport:
        """
        Potentiel m-fortement convexe dans la boule de rayon R

        Returns:
            MomentBoundReport avec bound = max(A, B) + residual
        """
        _check_positive(p=p, m=m, R=R, M=M, a=a)
        mR = m * R
        A = ((3.0 / mR) * ((p + a) * math.log(p + a) + p * log_plus(2.0 * M / (m * mR * R)))) ** a
        B = self.moment_bound_strong(p, m, a)
        residual = 2.0 ** (a + 1.0) / (mR ** a * math.gamma(p / 2.0))
        components = {"A": A, "B": B, "residual": residual}
        return MomentBoundReport(
            a=a,
            regime=MomentRegime.INSIDE_BALL,
            bound=max(A, B) + residual,
            components=components,
            dominating_term=max(components, key=components.get),
        )

    def moment_bound_outside_ball(self, p: int, m: float, R: float, M: float, a: float) -> MomentBoundReport:
        """Potentiel m-fortement convexe hors de la boule de rayon R (p >= 3)"""
        if p < 3:
            raise DomainError(f"outside-ball bound needs p >= 3, got p={p}")
        _check_positive(m=m, M=M, a=a)
        if R < 0:
            raise InvalidArgumentError(f"R must be nonnegative, got {R}")
        if M < m:
            raise DomainError(f"gradient Lipschitz constant M={M} below strong convexity m={m}")
        prefactor = 1.0 + 2.0 / math.gamma(p / 2.0)
        radius = 4.0 * R
        dimension = math.sqrt(4.0 * (p + a) / m * math.log(p * M / m))
        components = {"radius": prefactor * radius ** a, "dimension": prefactor * dimension ** a}
        return MomentBoundReport(
            a=a,
            regime=MomentRegime.OUTSIDE_BALL,
            bound=prefactor * max(radius, dimension) ** a,
            components=components,
            dominating_term="radius" if radius >= dimension else "dimension",
        )

    def moment_bound_outside_ball_general(self, p: int, m: float, R: float, a: float) -> float:
        """exp(m R^2 / 2) fois le majorant fortement convexe, pour tout p"""
        if R < 0:
            raise InvalidArgumentError(f"R must be nonnegative, got {R}")
        return math.exp(m * R * R / 2.0) * self.moment_bound_strong(p, m, a)

    def report(self, regime: MomentRegime, p: int, m: float, a: float, R: float = None, M: float = None) -> MomentBoundReport:
        """Calcule le majorant du régime demandé sous forme de rapport"""
        if regime is MomentRegime.STRONG:
            bound = self.moment_bound_strong(p, m, a)
            return MomentBoundReport(a=a, regime=regime, bound=bound, components={"strong": bound}, dominating_term="strong")
        if regime is MomentRegime.INSIDE_BALL:
            return self.moment_bound_inside_ball(p, m, R, M, a)
        if regime is MomentRegime.OUTSIDE_BALL:
            return self.moment_bound_outside_ball(p, m, R if R is not None else 0.0, M, a)
        strong = self.moment_bound_strong(p, m, a)
        R = R if R is not None else 0.0
        return MomentBoundReport(
            a=a,
            regime=regime,
            bound=self.moment_bound_outside_ball_general(p, m, R, a),
            components={"strong": strong, "factor": math.exp(m * R * R / 2.0)},
            dominating_term="strong",
        )


# Instance globale
moment_bound_calculator = MomentBounds()
