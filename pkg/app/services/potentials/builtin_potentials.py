from typing import Callable, Sequence

import numpy as np

from app.core.errors import InvalidArgumentError
from app.core.logger import get_logger
from app.schemas.potential_schemas import (
    CappedQuadraticTarget,
    ConvexityClass,
    ConvexityKind,
    GaussianTarget,
    SmoothedHuberTarget,
)
from app.services.potentials.potential_spec import PotentialSpec, SurrogatePotential

logger = get_logger(__name__)


def _radial_oracles(
    dphi: Callable[[float], float],
    d2phi: Callable[[float], float],
    curvature_at_zero: float,
):
    """
    Construit gradient et produit Hessienne-vecteur d'un potentiel radial
    f(theta) = phi(||theta||) par dérivation composée.

    En r = 0 on utilise la limite analytique : gradient nul et
    Hessienne égale à phi''(0) I.
    """

    def grad(theta: np.ndarray) -> np.ndarray:
        r = float(np.linalg.norm(theta))
        if r == 0.0:
            return np.zeros_like(theta, dtype=float)
        return (dphi(r) / r) * theta

    def hess_vec(theta: np.ndarray, v: np.ndarray) -> np.ndarray:
        r = float(np.linalg.norm(theta))
        if r == 0.0:
            return curvature_at_zero * v
        u = theta / r
        radial = float(np.dot(u, v))
        tangential = dphi(r) / r
        return tangential * v + (d2phi(r) - tangential) * radial * u

    return grad, hess_vec


class PotentialService:
    """
    Fabrique des potentiels de test et du potentiel pénalisé f_alpha
    """

    def make_gaussian_potential(self, p: int, precision_diagonal: Sequence[float]) -> PotentialSpec:
        """
        Potentiel gaussien f(theta) = sum_i lambda_i theta_i^2 / 2

        Args:
            p: Dimension
            precision_diagonal: Diagonale de la matrice de précision

        Returns:
            PotentialSpec avec M = max lambda, M2 = 0 et minimiseur 0
        """
        if p < 1:
            raise InvalidArgumentError(f"dimension must be positive, got {p}")
        lam = np.asarray(precision_diagonal, dtype=float).reshape(-1)
        if lam.shape[0] != p:
            raise InvalidArgumentError(f"precision must have {p} entries, got {lam.shape[0]}")
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0):
            raise InvalidArgumentError("precision entries must be positive")
        lam.setflags(write=False)

        def value(theta: np.ndarray) -> float:
            return 0.5 * float(np.dot(lam * theta, theta))

        def grad(theta: np.ndarray) -> np.ndarray:
            return lam * theta

        def hess_vec(theta: np.ndarray, v: np.ndarray) -> np.ndarray:
            return lam * v

        radial_profile = None
        if np.all(lam == lam[0]):
            lam0 = float(lam[0])
            radial_profile = lambda r: 0.5 * lam0 * r * r  # noqa: E731

        return PotentialSpec(
            p=p,
            value=value,
            grad=grad,
            hess_vec=hess_vec,
            M=float(lam.max()),
            M2=0.0,
            convexity=ConvexityClass(kind=ConvexityKind.STRONGLY_CONVEX, m=float(lam.min())),
            minimizer=np.zeros(p),
            name="gaussian",
            precision=lam,
            radial_profile=radial_profile,
        )

    def make_capped_quadratic_potential(self, p: int) -> PotentialSpec:
        """
        f(theta) = ||theta||^2 / 2 si ||theta|| <= 1, ||theta|| sinon

        Le gradient est continu (projection sur la boule unité). La valeur
        ne l'est pas : elle passe de 1/2 à 1 sur la sphère unité, et f(2) = 2.
        Le prolongement continu serait ||theta|| - 1/2 ; on garde la forme
        affichée, dont dépend le minorant des moments.
        """
        if p < 1:
            raise InvalidArgumentError(f"dimension must be positive, got {p}")

        def phi(r: float) -> float:
            return 0.5 * r * r if r <= 1.0 else r

        def dphi(r: float) -> float:
            return r if r <= 1.0 else 1.0

        def d2phi(r: float) -> float:
            return 1.0 if r <= 1.0 else 0.0

        grad, hess_vec = _radial_oracles(dphi, d2phi, curvature_at_zero=1.0)

        return PotentialSpec(
            p=p,
            value=lambda theta: phi(float(np.linalg.norm(theta))),
            grad=grad,
            hess_vec=hess_vec,
            M=1.0,
            M2=None,
            convexity=ConvexityClass(kind=ConvexityKind.STRONG_INSIDE_BALL, m=1.0, R=1.0),
            minimizer=np.zeros(p),
            name="capped_quadratic",
            radial_profile=phi,
            kink_radii=(1.0,),
        )

    def make_smoothed_huber_potential(self, p: int, m: float, R: float) -> PotentialSpec:
        """
        Potentiel radial quadratique de courbure m pour r <= R, prolongé
        linéairement (valeur et pente continues) au-delà
        """
        if p < 1:
            raise InvalidArgumentError(f"dimension must be positive, got {p}")
        if m <= 0 or R <= 0:
            raise InvalidArgumentError(f"m and R must be positive, got m={m}, R={R}")
        m = float(m)
        R = float(R)

        def phi(r: float) -> float:
            if r <= R:
                return 0.5 * m * r * r
            return m * R * r - 0.5 * m * R * R

        def dphi(r: float) -> float:
            return m * r if r <= R else m * R

        def d2phi(r: float) -> float:
            return m if r <= R else 0.0

        grad, hess_vec = _radial_oracles(dphi, d2phi, curvature_at_zero=m)

        return PotentialSpec(
            p=p,
            value=lambda theta: phi(float(np.linalg.norm(theta))),
            grad=grad,
            hess_vec=hess_vec,
            M=m,
            M2=None,
            convexity=ConvexityClass(kind=ConvexityKind.STRONG_INSIDE_BALL, m=m, R=R),
            minimizer=np.zeros(p),
            name="smoothed_huber",
            radial_profile=phi,
            kink_radii=(R,),
        )

    def surrogate(self, base: PotentialSpec, alpha: float) -> SurrogatePotential:
        return SurrogatePotential(base, alpha)

    def build_potential(self, target) -> PotentialSpec:
        """
        Construit un potentiel à partir de la configuration JSON validée

        Args:
            target: GaussianTarget, CappedQuadraticTarget ou SmoothedHuberTarget

        Returns:
            PotentialSpec correspondant
        """
        logger.debug(f"Building potential of kind {target.kind}, p={target.p}")
        if isinstance(target, GaussianTarget):
            return self.make_gaussian_potential(target.p, target.precision)
        if isinstance(target, CappedQuadraticTarget):
            return self.make_capped_quadratic_potential(target.p)
        if isinstance(target, SmoothedHuberTarget):
            return self.make_smoothed_huber_potential(target.p, target.m, target.R)
        raise InvalidArgumentError(f"unknown target kind: {getattr(target, 'kind', target)!r}")


# Instance globale
potential_service = PotentialService()
