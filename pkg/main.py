#!/usr/bin/env python3
"""
QAM Distance - Point d'entrée principal
=======================================

Distance de Cargo-Shisha entre moyennes quasi-arithmétiques, avec ses bornes
inférieures et supérieures.

Usage:
    python main.py mean --gen exp:15 --values 0,1          # Moyenne quasi-arithmétique
    python main.py rho --f exp:15 --g exp:20 --interval 0,1 # Mesure de ρ
    python main.py bounds --f pow:1 --g pow:3 --interval 1,2 --format table
    python main.py table                                    # Tableau de l'exemple numérique
    python main.py verify --corpus all                      # Suites de propriétés

Auteur: QAM Project
Version: 1.0.0
"""

import sys
from pathlib import Path

# Ajouter le dossier src au path pour les imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from cli.main import main

if __name__ == "__main__":
    main()
