"""
Services de potentiels cibles et de vérification de leurs hypothèses
"""

from app.services.potentials.potential_spec import PotentialSpec, SurrogatePotential
from app.services.potentials.builtin_potentials import potential_service
from app.services.potentials.potential_checks import potential_checker

__all__ = [
    'PotentialSpec',
    'SurrogatePotential',
    'potential_service',
    'potential_checker',
]
