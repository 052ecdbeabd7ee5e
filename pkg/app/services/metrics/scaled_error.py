import math

from app.core.errors import InvalidArgumentError


class ScaledErrorCheck:
    """Critère de précision relative : dist <= epsilon * sqrt(mu2)"""

    def scaled_error_check(self, dist: float, mu2: float, epsilon: float) -> bool:
        if dist < 0 or mu2 <= 0 or epsilon <= 0:
            raise InvalidArgumentError(f"invalid inputs dist={dist}, mu2={mu2}, epsilon={epsilon}")
        return dist <= epsilon * math.sqrt(mu2)


# Instance globale
scaled_error_checker = ScaledErrorCheck()
