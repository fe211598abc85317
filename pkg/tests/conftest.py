"""
Test configuration and shared fixtures for the quasi-arithmetic mean tests.
"""
import os
import sys

import pytest

# Add the src directory to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from qam.config.config import OptimizerConfig  # noqa: E402
from qam.generators.builtins import generator_from_spec  # noqa: E402
from qam.generators.interval import Interval  # noqa: E402

# Worked example: exp(15) against exp(20) on (0, 1)
WORKED_SPECS = ("exp:15", "exp:20")

# Reduced grid for tests that do not check the worked-example band
QUICK_GRID = 24


@pytest.fixture
def unit_open():
    return Interval.open(0.0, 1.0)


@pytest.fixture
def one_two():
    return Interval(1.0, 2.0)


@pytest.fixture
def worked_pair(unit_open):
    f, g = (generator_from_spec(spec, unit_open) for spec in WORKED_SPECS)
    return f, g, unit_open


@pytest.fixture
def power_pair(one_two):
    return generator_from_spec("pow:1", one_two), generator_from_spec("pow:3", one_two), one_two


@pytest.fixture
def quick_cfg():
    return OptimizerConfig(grid_n=QUICK_GRID, grid_m=QUICK_GRID)
