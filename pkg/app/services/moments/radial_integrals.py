import math
from typing import Callable, List, Sequence

import numpy as np
from scipy import integrate

from app.core.errors import CapabilityError, DomainError, InvalidArgumentError, NumericError
from app.core.logger import get_logger
from app.schemas.moment_schemas import LowerBoundOracle
from app.services.potentials import potential_service

logger = get_logger(__name__)

# exp(-745) est le plus petit double positif
UNDERFLOW_LOG = 745.0
MAX_PANELS = 200


class RadialQuadrature:
    """
    Intégrales radiales int_0^inf r^s exp(-phi(r)) dr calculées en domaine
    logarithmique, et moments qui s'en déduisent
    """

    def _log_integrand(self, phi: Callable[[float], float], power: float) -> Callable[[float], float]:
        def g(r: float) -> float:
            if r <= 0.0:
                return -math.inf if power > 0 else -phi(0.0)
            return power * math.log(r) - phi(r)
        return g

    def log_radial_integral(self, phi: Callable[[float], float], power: float, breakpoints: Sequence[float] = ()) -> float:
        """
        log int_0^inf r^power exp(-phi(r)) dr

        Args:
            phi: Profil radial, croissant au moins linéairement à l'infini
            power: Exposant de r (>= 0)
            breakpoints: Rayons où phi n'est pas lisse
        """
        if power < 0:
            raise InvalidArgumentError(f"power must be nonnegative, got {power}")
        g = self._log_integrand(phi, power)

        # Localisation du mode puis de la coupure
        radii = list(np.geomspace(1e-8, 1.0, 200))
        r = 2.0
        while r < 1e12:
            radii.append(r)
            values = [g(x) for x in radii]
            if g(r) < max(values) - UNDERFLOW_LOG - 5.0 and r > radii[int(np.argmax(values))]:
                break
            r *= 2.0
        else:
            raise NumericError("radial integrand does not decay: profile grows too slowly")
        values = [g(x) for x in radii]
        shift = max(values)
        mode = radii[int(np.argmax(values))]
        r_end = radii[-1]

        edges = sorted({0.0, mode, r_end, *[b for b in breakpoints if 0.0 < b < r_end]})
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            value, _ = integrate.quad(
                lambda x: math.exp(g(x) - shift),
                lo,
                hi,
                epsabs=0.0,
                epsrel=1e-12,
                limit=500,
            )
            total += value
        if not (total > 0 and math.isfinite(total)):
            raise NumericError(f"radial quadrature failed (total={total})")
        return shift + math.log(total)

    def radial_moment(self, phi: Callable[[float], float], p: int, a: float, breakpoints: Sequence[float] = ()) -> float:
        """Moment d'ordre a de la densité proportionnelle à exp(-phi(||theta||)) sur R^p"""
        numerator = self.log_radial_integral(phi, p + a - 1.0, breakpoints)
        denominator = self.log_radial_integral(phi, p - 1.0, breakpoints)
        return math.exp(numerator - denominator)

    def potential_moment(self, potential, a: float) -> float:
        if potential.radial_profile is None:
            raise CapabilityError(f"potential '{potential.name}' has no radial profile")
        return self.radial_moment(potential.radial_profile, potential.p, a, potential.kink_radii)

    def lower_bound_moment_oracle(self, p: int, a: float) -> LowerBoundOracle:
        """
        Moment d'ordre a de la cible à potentiel quadratique plafonné,
        comparé au minorant 0.1 Gamma(p + a) / Gamma(p)
        """
        if a <= 0:
            raise InvalidArgumentError(f"a must be positive, got {a}")
        if p < max(2.0, a - 1.0):
            raise DomainError(f"lower bound needs p >= max(2, a-1), got p={p}, a={a}")
        capped = potential_service.make_capped_quadratic_potential(p)
        numeric = self.radial_moment(capped.radial_profile, p, a, breakpoints=capped.kink_radii)
        lower = 0.1 * math.exp(math.lgamma(p + a) - math.lgamma(p))
        return LowerBoundOracle(p=p, a=a, numeric_moment=numeric, lower_bound=lower)

    def mtilde(self, profile: Callable[[float], float], r: float, breakpoints: Sequence[float] = ()) -> float:
        """m~(r) = 2 int_0^1 m(r y)(1 - y) dy"""
        if r == 0.0:
            return profile(0.0)
        points = [b / r for b in breakpoints if 0.0 < b / r < 1.0] or None
        value, _ = integrate.quad(lambda y: profile(r * y) * (1.0 - y), 0.0, 1.0, points=points, limit=200)
        return 2.0 * value

    def tail_moment_integral(
        self,
        profile: Callable[[float], float],
        p: int,
        a: float,
        A: float,
        M: float,
        breakpoints: Sequence[float] = (),
    ) -> float:
        """
        (2 (M/2)^{p/2} / Gamma(p/2)) int_A^inf r^{p+a-1} exp(-m~(r) r^2 / 2) dr

        Args:
            profile: Courbure radiale m(r), à valeurs dans [0, M]
            A: Borne inférieure d'intégration (> 0)
            breakpoints: Rayons de discontinuité du profil
        """
        if A <= 0:
            raise InvalidArgumentError(f"A must be positive, got {A}")
        prefactor = 2.0 * (M / 2.0) ** (p / 2.0) / math.gamma(p / 2.0)

        def integrand(r: float) -> float:
            exponent = (p + a - 1.0) * math.log(r) - self.mtilde(profile, r, breakpoints) * r * r / 2.0
            return math.exp(exponent) if exponent > -UNDERFLOW_LOG else 0.0

        total = 0.0
        lower, width = A, 1.0
        for _ in range(MAX_PANELS):
            upper = lower + width
            points = [b for b in breakpoints if lower < b < upper] or None
            value, error = integrate.quad(integrand, lower, upper, points=points, limit=200)
            total += value
            if integrand(upper) < 1e-300 or value <= 1e-16 * total:
                return prefactor * total
            lower, width = upper, 2.0 * width
        raise NumericError(
            f"tail moment integral did not converge: running total {total:g}, last panel [{lower:g}, {lower + width:g}]"
        )

    def penalized_mu2(self, potential, gamma: float) -> float:
        """Second moment de pi_gamma, de potentiel f(theta) + gamma ||theta||^2 / 2"""
        if gamma < 0:
            raise InvalidArgumentError(f"gamma must be nonnegative, got {gamma}")
        if potential.radial_profile is not None:
            phi = potential.radial_profile
            return self.radial_moment(lambda r: phi(r) + 0.5 * gamma * r * r, potential.p, 2.0, potential.kink_radii)
        if potential.is_quadratic:
            # Coordonnées indépendantes : moments 1-D
            return sum(
                self.radial_moment(lambda x, c=lam + gamma: 0.5 * c * x * x, 1, 2.0)
                for lam in potential.precision
            )
        if potential.p <= 3:
            return self._cubature_mu2(potential, gamma)
        raise CapabilityError(f"cannot integrate mu2 for a non-radial potential in dimension {potential.p}")

    def _cubature_mu2(self, potential, gamma: float) -> float:
        offset = potential.value(np.zeros(potential.p))

        def weight(*theta):
            x = np.array(theta)
            return math.exp(-(potential.value(x) - offset + 0.5 * gamma * float(x @ x)))

        bounds = [(-np.inf, np.inf)] * potential.p
        mass, _ = integrate.nquad(weight, bounds)
        second, _ = integrate.nquad(lambda *t: float(np.dot(t, t)) * weight(*t), bounds)
        if not (mass > 0 and math.isfinite(second)):
            raise NumericError(f"cubature of mu2 failed (mass={mass}, second={second})")
        return second / mass

    def mu2_monotonicity_check(self, potential, gammas: Sequence[float], verify: bool = False) -> List[float]:
        """
        mu2(pi_gamma) pour chaque gamma ; en mode vérification, lève
        NumericError si la suite croît avec gamma
        """
        values = [self.penalized_mu2(potential, g) for g in gammas]
        if verify:
            order = np.argsort(gammas, kind="stable")
            ordered = [values[i] for i in order]
            for previous, current in zip(ordered[:-1], ordered[1:]):
                if current > previous * (1.0 + 1e-10):
                    raise NumericError(f"mu2 increases with the penalty: {previous} -> {current}")
        logger.debug(f"mu2 along penalties {list(gammas)}: {values}")
        return values


# Instance globale
radial_quadrature = RadialQuadrature()
