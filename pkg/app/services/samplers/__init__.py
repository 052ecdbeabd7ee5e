"""
Chaînes de Langevin : LMC, KLMC et KLMC2
"""

from app.services.samplers.sampler_steps import langevin_steps
from app.services.samplers.chain_runner import Trajectory, make_generator, sampler_runner

__all__ = [
    'Trajectory',
    'make_generator',
    'langevin_steps',
    'sampler_runner',
]
