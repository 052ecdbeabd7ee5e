from typing import Optional

import numpy as np

from app.core.logger import get_logger

logger = get_logger(__name__)


class PotentialChecker:
    """
    Sondes aléatoires des hypothèses de régularité d'un potentiel
    (gradient, constante de Lipschitz, convexité)
    """

    def __init__(self, radius_range=(0.1, 3.0), kink_band: float = 0.1):
        self.radius_range = radius_range
        self.kink_band = kink_band

    def random_points(self, potential, rng: np.random.Generator, n: int) -> np.ndarray:
        """
        Tire n points de direction uniforme et de rayon uniforme dans
        radius_range, en évitant les rayons où le potentiel n'est pas lisse
        """
        p = potential.p
        lo, hi = self.radius_range
        kinks = tuple(getattr(potential, "kink_radii", ()) or ())
        points = []
        while len(points) < n:
            direction = rng.standard_normal(p)
            norm = np.linalg.norm(direction)
            if norm == 0.0:
                continue
            r = rng.uniform(lo, hi)
            if any(abs(r - k) < self.kink_band * max(k, 1.0) for k in kinks):
                continue
            points.append(direction * (r / norm))
        return np.array(points)

    def finite_difference_gradient(self, potential, theta: np.ndarray) -> np.ndarray:
        """Différence centrée à 5 points, pas 1e-4 * (1 + ||theta||)"""
        step = 1e-4 * (1.0 + float(np.linalg.norm(theta)))
        fd = np.empty(theta.shape[0])
        for i in range(theta.shape[0]):
            e = np.zeros_like(theta)
            e[i] = step
            fd[i] = (
                -potential.value(theta + 2 * e)
                + 8 * potential.value(theta + e)
                - 8 * potential.value(theta - e)
                + potential.value(theta - 2 * e)
            ) / (12 * step)
        return fd

    def check_gradient(self, potential, rng: Optional[np.random.Generator] = None, n_probes: int = 100) -> float:
        """
        Erreur relative maximale entre grad_oracle et la différence finie

        Returns:
            max ||fd - g|| / max(||g||, 1e-12) sur les sondes
        """
        rng = rng if rng is not None else np.random.default_rng(0)
        worst = 0.0
        for theta in self.random_points(potential, rng, n_probes):
            g = potential.grad(theta)
            fd = self.finite_difference_gradient(potential, theta)
            err = float(np.linalg.norm(fd - g)) / max(float(np.linalg.norm(g)), 1e-12)
            worst = max(worst, err)
        logger.debug(f"Gradient check: max relative error {worst:.3e} over {n_probes} probes")
        return worst

    def probe_lipschitz(self, potential, rng: Optional[np.random.Generator] = None, n_probes: int = 100) -> float:
        """Plus grand rapport ||grad f(x) - grad f(y)|| / ||x - y|| observé"""
        rng = rng if rng is not None else np.random.default_rng(0)
        xs = self.random_points(potential, rng, n_probes)
        ys = self.random_points(potential, rng, n_probes)
        worst = 0.0
        for x, y in zip(xs, ys):
            dist = float(np.linalg.norm(x - y))
            if dist == 0.0:
                continue
            worst = max(worst, float(np.linalg.norm(potential.grad(x) - potential.grad(y))) / dist)
        return worst

    def probe_hessian_lipschitz(self, potential, rng: Optional[np.random.Generator] = None, n_probes: int = 100) -> float:
        """
        Plus grand rapport ||(H(x) - H(y)) v|| / (||x - y|| ||v||) observé

        Lève CapabilityError si le potentiel n'a pas d'oracle Hessienne.
        """
        rng = rng if rng is not None else np.random.default_rng(0)
        base = getattr(potential, "base", potential)
        base.require_hess_vec()
        xs = self.random_points(potential, rng, n_probes)
        ys = self.random_points(potential, rng, n_probes)
        worst = 0.0
        for x, y in zip(xs, ys):
            v = rng.standard_normal(potential.p)
            dist = float(np.linalg.norm(x - y)) * float(np.linalg.norm(v))
            if dist == 0.0:
                continue
            diff = potential.hess_vec(x, v) - potential.hess_vec(y, v)
            worst = max(worst, float(np.linalg.norm(diff)) / dist)
        return worst

    def probe_monotone_gradient(self, potential, rng: Optional[np.random.Generator] = None, n_probes: int = 100) -> float:
        """Plus petite valeur de (grad f(x) - grad f(y)) . (x - y) observée"""
        rng = rng if rng is not None else np.random.default_rng(0)
        xs = self.random_points(potential, rng, n_probes)
        ys = self.random_points(potential, rng, n_probes)
        return min(
            float(np.dot(potential.grad(x) - potential.grad(y), x - y))
            for x, y in zip(xs, ys)
        )


# Instance globale
potential_checker = PotentialChecker()
