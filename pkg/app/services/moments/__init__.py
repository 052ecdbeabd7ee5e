"""
Bornes de moments, fonctions Gamma incomplètes et constante de Khintchine
"""

from app.services.moments.incomplete_gamma import gamma_functions
from app.services.moments.moment_bounds import log_plus, moment_bound_calculator
from app.services.moments.radial_integrals import radial_quadrature
from app.services.moments.khintchine import khintchine_optimizer

__all__ = [
    'gamma_functions',
    'log_plus',
    'moment_bound_calculator',
    'radial_quadrature',
    'khintchine_optimizer',
]
