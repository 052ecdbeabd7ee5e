"""
Sous-commandes de la CLI, une par module
"""

from app.cli.commands import bench, bounds, complexity_table, khintchine, measure, moments, plan, sample

COMMANDS = [plan, sample, measure, bounds, moments, khintchine, complexity_table, bench]

__all__ = ['COMMANDS']
