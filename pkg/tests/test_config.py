"""
Tests de la configuration par variables d'environnement.
"""
import logging
import os

import pytest
from pydantic import ValidationError as PydanticValidationError
from pythonjsonlogger import jsonlogger

from qam.config.config import (
    OptimizerConfig,
    get_logging_config,
    get_optimizer_config,
    get_settings,
    reload_settings,
    resolve_threads,
    setup_logging,
    validate_config,
)
from qam.referentials import DEFAULT_GRID_N, DEFAULT_TOL_REL
from qam.schemas.run import RunConfig

QAM_VARIABLES = ("QAM_GRID_N", "QAM_GRID_M", "QAM_TOL_REL", "QAM_THREADS", "QAM_DEFAULT_FORMAT",
                 "QAM_SEED", "QAM_TRIALS", "LOG_JSON", "LOG_LEVEL", "LOG_FILE_ENABLED", "ENVIRONMENT")


@pytest.fixture
def env(monkeypatch):
    """Environnement vierge; les paramètres sont relus à la fin du test."""
    for name in QAM_VARIABLES:
        monkeypatch.delenv(name, raising=False)
    yield monkeypatch
    monkeypatch.undo()
    reload_settings()


@pytest.fixture
def root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)


def test_defaults(env):
    settings = reload_settings()
    assert settings.optimizer['grid_n'] == DEFAULT_GRID_N
    assert settings.optimizer['tol_rel'] == DEFAULT_TOL_REL
    assert settings.output == {'float_digits': 17, 'default_format': 'json'}
    assert settings.app['version'] == '1.0.0'
    assert settings.app['testing'] is True
    assert validate_config() == []


def test_environment_overrides(env):
    env.setenv("QAM_GRID_N", "32")
    env.setenv("QAM_SEED", "11")
    env.setenv("QAM_DEFAULT_FORMAT", "CSV")
    settings = reload_settings()
    assert get_settings() is settings
    assert settings.optimizer['grid_n'] == 32
    assert settings.verification['seed'] == 11
    assert settings.output['default_format'] == 'csv'


def test_optimizer_config_from_settings(env):
    env.setenv("QAM_GRID_N", "32")
    reload_settings()
    cfg = OptimizerConfig.from_settings(grid_n=None, grid_m=8)
    assert cfg.grid_n == 32
    assert cfg.grid_m == 8
    assert cfg.tol is None


def test_absolute_tolerance():
    assert OptimizerConfig().absolute_tol(2.0) == pytest.approx(2.0 * DEFAULT_TOL_REL)
    assert OptimizerConfig(tol=1e-6).absolute_tol(2.0) == 1e-6


@pytest.mark.parametrize(
    "name,value",
    [("QAM_GRID_N", "1"), ("QAM_TOL_REL", "2"), ("QAM_THREADS", "-1"), ("QAM_DEFAULT_FORMAT", "xml")],
)
def test_validate_config_reports_problems(env, name, value):
    env.setenv(name, value)
    assert len(validate_config()) == 1


def test_validate_config_non_numeric(env):
    env.setenv("QAM_GRID_N", "many")
    problems = validate_config()
    assert problems and "validation" in problems[0]
    with pytest.raises(ValueError):
        get_optimizer_config()


def test_resolve_threads(env):
    assert resolve_threads(3) == 3
    assert resolve_threads(0) == (os.cpu_count() or 1)
    env.setenv("QAM_THREADS", "2")
    reload_settings()
    assert resolve_threads() == 2


def test_json_logging(env, root_logger):
    env.setenv("LOG_JSON", "true")
    assert get_logging_config()['json'] is True
    setup_logging("info")
    assert root_logger.level == logging.INFO
    assert len(root_logger.handlers) == 1
    assert isinstance(root_logger.handlers[0].formatter, jsonlogger.JsonFormatter)


def test_plain_logging(env, root_logger):
    setup_logging()
    assert root_logger.level == logging.WARNING
    assert not isinstance(root_logger.handlers[0].formatter, jsonlogger.JsonFormatter)


class TestRunConfig:
    def test_format_is_lowercased(self):
        assert RunConfig(command="table", format="CSV").format == "csv"

    @pytest.mark.parametrize(
        "fields",
        [
            {"command": "plot"},
            {"command": "table", "format": "xml"},
            {"command": "verify", "corpus": "everything"},
            {"command": "rho", "grid_n": 1},
            {"command": "rho", "tol": 0.0},
        ],
    )
    def test_invalid(self, fields):
        with pytest.raises(PydanticValidationError):
            RunConfig(**fields)
