"""
Planification des paramètres et bornes d'erreur théoriques
"""

from app.services.planner.bias_bounds import BiasConstants, bias_calculator
from app.services.planner.theorem_bounds import bound_evaluator
from app.services.planner.plan_builders import planner
from app.services.planner.complexity_reference import complexity_calculator, kappa_tilde

__all__ = [
    'BiasConstants',
    'bias_calculator',
    'bound_evaluator',
    'planner',
    'complexity_calculator',
    'kappa_tilde',
]
