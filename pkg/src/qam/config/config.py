"""
Configuration centralisée du calcul des distances entre moyennes
Lecture des variables d'environnement (fichier .env supporté)
"""
import logging
import os
import sys
from dataclasses import dataclass, replace
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from ..referentials import (
    DEFAULT_GRID_M,
    DEFAULT_GRID_N,
    DEFAULT_MAX_REFINE_ITERS,
    DEFAULT_THETA_MIN,
    DEFAULT_TOL_REL,
    NUMERIC_DEFAULTS,
    VERIFICATION_DEFAULTS,
)

# Charger les variables d'environnement
load_dotenv()

# Chemins de base
BASE_DIR = Path(__file__).parent.parent.parent.parent
LOGS_DIR = BASE_DIR / "logs"


def get_environment() -> str:
    """Retourne l'environnement actuel"""
    return os.getenv('ENVIRONMENT', 'production').lower()


def is_development() -> bool:
    """Vérifie si on est en mode développement"""
    return get_environment() == 'development'


def is_testing() -> bool:
    """Vérifie si on est en mode test"""
    return get_environment() == 'testing' or 'pytest' in sys.modules


def _get_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ('1', 'true', 'yes', 'on')


def get_optimizer_config() -> Dict[str, Any]:
    """
    Paramètres de la recherche de ρ (grille puis raffinement)
    """
    return {
        'grid_n': int(os.getenv('QAM_GRID_N', str(DEFAULT_GRID_N))),
        'grid_m': int(os.getenv('QAM_GRID_M', str(DEFAULT_GRID_M))),
        'tol_rel': float(os.getenv('QAM_TOL_REL', str(DEFAULT_TOL_REL))),
        'max_refine_iters': int(os.getenv('QAM_MAX_REFINE_ITERS', str(DEFAULT_MAX_REFINE_ITERS))),
        'theta_min': float(os.getenv('QAM_THETA_MIN', str(DEFAULT_THETA_MIN))),
    }


def get_numerics_config() -> Dict[str, Any]:
    """
    Résolutions des balayages et tolérances numériques
    """
    env_names = {
        'scan_points': 'QAM_SCAN_POINTS',
        'monotone_points': 'QAM_MONOTONE_POINTS',
        'verify_points': 'QAM_VERIFY_POINTS',
        'margin_rel': 'QAM_MARGIN_REL',
        'inverse_tol_rel': 'QAM_INVERSE_TOL_REL',
        'star_norm_rtol': 'QAM_STAR_NORM_RTOL',
        'phi_grid': 'QAM_PHI_GRID',
        'sup_grid': 'QAM_SUP_GRID',
        'pales_grid': 'QAM_PALES_GRID',
    }
    config = {}
    for key, env_name in env_names.items():
        default = NUMERIC_DEFAULTS[key]
        cast = type(default)
        config[key] = cast(float(os.getenv(env_name, str(default))))
    return config


def get_performance_config() -> Dict[str, Any]:
    """
    Configuration du parallélisme
    """
    return {
        # 0 = automatique (nombre de processeurs)
        'threads': int(os.getenv('QAM_THREADS', '0')),
    }


def get_verification_config() -> Dict[str, Any]:
    """
    Paramètres des suites de propriétés (commande verify)
    """
    return {
        'seed': int(os.getenv('QAM_SEED', str(VERIFICATION_DEFAULTS['seed']))),
        'trials': int(os.getenv('QAM_TRIALS', str(VERIFICATION_DEFAULTS['trials']))),
        'partition_trials': int(os.getenv(
            'QAM_PARTITION_TRIALS', str(VERIFICATION_DEFAULTS['partition_trials'])
        )),
    }


def get_output_config() -> Dict[str, Any]:
    """
    Configuration des sorties du CLI
    """
    return {
        'float_digits': int(os.getenv('QAM_FLOAT_DIGITS', '17')),
        'default_format': os.getenv('QAM_DEFAULT_FORMAT', 'json').lower(),
    }


def get_logging_config() -> Dict[str, Any]:
    """
    Configuration de logging
    Console sur stderr, fichier avec rotation en option
    """
    default_level = 'DEBUG' if is_development() else 'WARNING'

    return {
        'level': os.getenv('LOG_LEVEL', default_level),
        'format': os.getenv(
            'LOG_FORMAT',
            '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
        ),
        'json': _get_bool('LOG_JSON', 'false'),

        # Fichiers de log
        'file_enabled': _get_bool('LOG_FILE_ENABLED', 'false'),
        'file_path': LOGS_DIR / os.getenv('LOG_FILENAME', 'qam.log'),

        # Rotation des logs
        'max_file_size': int(os.getenv('LOG_MAX_FILE_SIZE', '10485760')),  # 10MB
        'backup_count': int(os.getenv('LOG_BACKUP_COUNT', '5')),
    }


def get_app_config() -> Dict[str, Any]:
    """
    Configuration générale de l'application
    """
    return {
        'app_name': 'qam-distance',
        'version': '1.0.0',
        'description': 'Distance de Cargo-Shisha entre moyennes quasi-arithmétiques',
        'environment': get_environment(),
        'debug': is_development(),
        'testing': is_testing(),
    }


# Configuration globale consolidée
def get_config() -> Dict[str, Any]:
    """
    Retourne la configuration complète de l'application
    """
    return {
        'app': get_app_config(),
        'optimizer': get_optimizer_config(),
        'numerics': get_numerics_config(),
        'performance': get_performance_config(),
        'verification': get_verification_config(),
        'output': get_output_config(),
        'logging': get_logging_config(),
    }


def validate_config() -> List[str]:
    """
    Valide la configuration et retourne la liste des erreurs
    """
    errors = []

    try:
        optimizer = get_optimizer_config()
        if optimizer['grid_n'] < 2 or optimizer['grid_m'] < 2:
            errors.append("Les tailles de grille QAM_GRID_N/QAM_GRID_M doivent être >= 2")
        if not 0 < optimizer['tol_rel'] < 1:
            errors.append("QAM_TOL_REL doit appartenir à (0, 1)")
        if not 0 < optimizer['theta_min'] < 0.5:
            errors.append("QAM_THETA_MIN doit appartenir à (0, 0.5)")
        if optimizer['max_refine_iters'] < 1:
            errors.append("QAM_MAX_REFINE_ITERS doit être >= 1")

        numerics = get_numerics_config()
        for key in ('scan_points', 'monotone_points', 'verify_points',
                    'phi_grid', 'sup_grid', 'pales_grid'):
            if numerics[key] < 2:
                errors.append(f"Résolution {key} trop faible : {numerics[key]}")
        for key in ('margin_rel', 'inverse_tol_rel', 'star_norm_rtol'):
            if not 0 < numerics[key] < 1:
                errors.append(f"Tolérance {key} hors de (0, 1) : {numerics[key]}")

        if get_performance_config()['threads'] < 0:
            errors.append("QAM_THREADS doit être >= 0")

        output = get_output_config()
        if output['default_format'] not in ('json', 'csv', 'table'):
            errors.append(f"Format de sortie inconnu : {output['default_format']}")

    except ValueError as e:
        errors.append(f"Erreur de validation de configuration: {e}")

    return errors


def _make_formatter(log_config: Dict[str, Any]) -> logging.Formatter:
    if log_config['json']:
        from pythonjsonlogger import jsonlogger
        return jsonlogger.JsonFormatter(log_config['format'])
    return logging.Formatter(log_config['format'])


def setup_logging(level: Optional[str] = None) -> None:
    """
    Configure le système de logging selon la configuration

    Args:
        level: Niveau forcé (option --verbose du CLI), sinon LOG_LEVEL
    """
    log_config = get_logging_config()
    level_name = (level or log_config['level']).upper()

    logger = logging.getLogger()
    logger.handlers.clear()
    logger.setLevel(getattr(logging, level_name, logging.WARNING))

    formatter = _make_formatter(log_config)

    # Handler console (stderr: stdout est réservé aux résultats)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Handler fichier avec rotation
    if log_config['file_enabled']:
        log_config['file_path'].parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_config['file_path'],
            maxBytes=log_config['max_file_size'],
            backupCount=log_config['backup_count']
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)


def resolve_threads(threads: Optional[int] = None) -> int:
    """Nombre de threads effectif: QAM_THREADS, 0 signifiant automatique."""
    if threads is None:
        threads = get_settings().performance['threads']
    if threads <= 0:
        return os.cpu_count() or 1
    return threads


@dataclass(frozen=True)
class OptimizerConfig:
    """Paramètres de estimate_rho; tol=None signifie tol_rel·|U|."""
    grid_n: int = DEFAULT_GRID_N
    grid_m: int = DEFAULT_GRID_M
    tol: Optional[float] = None
    tol_rel: float = DEFAULT_TOL_REL
    max_refine_iters: int = DEFAULT_MAX_REFINE_ITERS
    theta_min: float = DEFAULT_THETA_MIN

    @classmethod
    def from_settings(cls, **overrides: Any) -> "OptimizerConfig":
        """Construit la configuration depuis l'environnement puis applique les options du CLI."""
        base = cls(**get_settings().optimizer)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **overrides)

    def absolute_tol(self, length: float) -> float:
        """Tolérance absolue de raffinement pour un intervalle de longueur length."""
        if self.tol is not None:
            return self.tol
        return self.tol_rel * length


class Settings:
    def __init__(self):
        self.app = get_app_config()
        self.optimizer = get_optimizer_config()
        self.numerics = get_numerics_config()
        self.performance = get_performance_config()
        self.verification = get_verification_config()
        self.output = get_output_config()
        self.logging = get_logging_config()


# Create a singleton instance
settings = Settings()


def reload_settings() -> Settings:
    """Relit l'environnement (utile après modification de variables en cours d'exécution)."""
    global settings
    settings = Settings()
    return settings


def get_settings() -> Settings:
    """Retourne l'instance courante des paramètres."""
    return settings


__all__ = [
    'settings',
    'Settings',
    'get_settings',
    'reload_settings',
    'get_config',
    'validate_config',
    'setup_logging',
    'resolve_threads',
    'OptimizerConfig',
]
