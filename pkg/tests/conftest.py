"""
Shared pytest fixtures for the test suite.
"""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from algebra.catalog import catalog, l12
from algebra.grid import make_grid
from algebra.lattice import chain
from config import CAP_ENV_KEYS, CapsConfig, Config
from models.grid_shape import GridShape

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    """Directory holding the lattice and property JSON files."""
    return FIXTURES_DIR


@pytest.fixture
def m3():
    """The diamond M_3 labelled 0, a, b, c, 1."""
    return catalog("m3").lattice


@pytest.fixture
def n5():
    """The pentagon N_5: 0 < a < b < 1 and 0 < c < 1."""
    return catalog("n5").lattice


@pytest.fixture
def c3():
    """The three-element chain."""
    return chain(3)


@pytest.fixture
def square():
    """C_2 x C_2, the four-element boolean lattice built as a product."""
    return make_grid(GridShape(m=2, n=2))


@pytest.fixture
def l12_lattice():
    """The twelve-element modular fixture."""
    return l12()


@pytest.fixture
def config(tmp_path):
    """Default caps with the data directory in a temporary folder."""
    return Config(caps=CapsConfig(), data_dir=tmp_path / "data")


@pytest.fixture
def isolated_env(tmp_path):
    """Point the config file and the data directory at a temporary folder."""
    config_dir = tmp_path / "home"
    env = {"RETRACTLAB_DATA_DIR": str(tmp_path / "data")}
    with patch.dict(os.environ, env, clear=False):
        for key in CAP_ENV_KEYS.values():
            os.environ.pop(key, None)
        with patch("config.CONFIG_DIR", config_dir):
            with patch("config.CONFIG_FILE", config_dir / "config.env"):
                with patch("main.CONFIG_FILE", config_dir / "config.env"):
                    yield config_dir
