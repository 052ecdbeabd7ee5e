"""
Banc d'essai bout en bout sur cibles gaussiennes
"""

from app.services.bench.bench_runner import bench_runner

__all__ = ['bench_runner']
