"""
Distances de Wasserstein, lois gaussiennes exactes et critère d'erreur
"""

from app.services.metrics.wasserstein import SampleCloud, wasserstein_calculator
from app.services.metrics.gaussian_laws import GaussianLaw, gaussian_oracle
from app.services.metrics.scaled_error import scaled_error_checker

__all__ = [
    'SampleCloud',
    'GaussianLaw',
    'wasserstein_calculator',
    'gaussian_oracle',
    'scaled_error_checker',
]
