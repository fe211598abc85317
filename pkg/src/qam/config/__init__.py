"""
Configuration du package qam.
"""

from .config import (
    settings,
    Settings,
    get_settings,
    reload_settings,
    get_config,
    validate_config,
    setup_logging,
    resolve_threads,
    OptimizerConfig,
)

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
