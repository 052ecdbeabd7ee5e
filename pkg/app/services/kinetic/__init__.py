"""
Noyaux de la diffusion cinétique et covariance du bruit corrélé
"""

from app.services.kinetic.kinetic_kernels import KineticKernels, kernel_calculator, kernel_vector
from app.services.kinetic.noise_covariance import NoiseCovariance, covariance_builder

__all__ = [
    'KineticKernels',
    'NoiseCovariance',
    'kernel_calculator',
    'kernel_vector',
    'covariance_builder',
]
