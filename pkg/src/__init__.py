"""
QAM Distance
============

Distance de Cargo-Shisha entre moyennes quasi-arithmétiques et ses bornes
analytiques par les indices d'Arrow-Pratt.

Modules:
- qam: Générateurs, moyennes, ∗-norme, estimation de ρ, bornes et vérification
- utils: Lecture des arguments et mise en forme des résultats
- cli: Interface en ligne de commande
"""

__version__ = "1.0.0"
__author__ = "QAM Project"
__description__ = "Cargo-Shisha distance between quasi-arithmetic means"
