"""
CLI Module
==========

Interface en ligne de commande du calcul de distance entre moyennes.
"""

from . import main
from .main import QAMCommandRunner

__all__ = ['QAMCommandRunner', 'main']
