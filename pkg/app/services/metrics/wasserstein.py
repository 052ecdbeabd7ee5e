from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from app.core.config import settings
from app.core.errors import CapacityError, InvalidArgumentError
from app.core.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SampleCloud:
    """Nuage de n points de R^p (états finaux de chaînes, tirages iid, ...)"""
    points: np.ndarray
    provenance: str = "chain final states"

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] < 1:
            raise InvalidArgumentError(f"a sample cloud needs at least one point, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise InvalidArgumentError("sample cloud has non-finite entries")
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]


def _check_order(q: int) -> None:
    if q not in (1, 2):
        raise InvalidArgumentError(f"q must be 1 or 2, got {q}")


class WassersteinCalculator:
    """
    Distances de Wasserstein exactes entre nuages empiriques de même taille
    """

    def wasserstein_1d(self, xs, ys, q: int = 1) -> float:
        """Couplage monotone (quantiles) en dimension 1"""
        _check_order(q)
        xs = np.sort(np.asarray(xs, dtype=float).reshape(-1))
        ys = np.sort(np.asarray(ys, dtype=float).reshape(-1))
        if xs.shape != ys.shape:
            raise InvalidArgumentError(f"sample sizes differ: {xs.shape[0]} vs {ys.shape[0]}")
        return float(np.mean(np.abs(xs - ys) ** q) ** (1.0 / q))

    def wasserstein_empirical(self, a: SampleCloud, b: SampleCloud, q: int = 2) -> float:
        """
        W_q exacte par appariement parfait de coût minimal sur la matrice
        ||a_i - b_j||^q

        Raises:
            CapacityError: n au-delà de settings.MAX_ASSIGNMENT
        """
        _check_order(q)
        if a.n != b.n:
            raise InvalidArgumentError(f"sample sizes differ: {a.n} vs {b.n}")
        if a.p != b.p:
            raise InvalidArgumentError(f"dimensions differ: {a.p} vs {b.p}")
        if a.n > settings.MAX_ASSIGNMENT:
            raise CapacityError(
                f"exact assignment limited to n <= {settings.MAX_ASSIGNMENT}, got n={a.n}; subsample both clouds"
            )
        metric = "euclidean" if q == 1 else "sqeuclidean"
        cost = cdist(a.points, b.points, metric=metric)
        rows, cols = linear_sum_assignment(cost)
        total = float(cost[rows, cols].sum())
        return (total / a.n) ** (1.0 / q)

    def energy_distance(self, a: SampleCloud, b: SampleCloud) -> float:
        """Distance d'énergie (V-statistique) 2E|X-Y| - E|X-X'| - E|Y-Y'|"""
        if a.p != b.p:
            raise InvalidArgumentError(f"dimensions differ: {a.p} vs {b.p}")
        cross = cdist(a.points, b.points).mean()
        within_a = cdist(a.points, a.points).mean()
        within_b = cdist(b.points, b.points).mean()
        return float(max(0.0, 2.0 * cross - within_a - within_b))


# Instance globale
wasserstein_calculator = WassersteinCalculator()
