# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from os.path import dirname, join
from random import Random

import pytest

from npcgroups import confighandler
from npcgroups.core import Mat, PrimeField, RationalField, RationalFunctionField, parse_scalar

DATA_DIR = join(dirname(__file__), 'data')
GOLDEN_DIR = join(dirname(__file__), 'golden')


def data_path(name: str) -> str:
    return join(DATA_DIR, name)


def mat(field, rows) -> Mat:
    return Mat(field, ((parse_scalar(x, field) for x in row) for row in rows))


@pytest.fixture(autouse=True)
def default_config(monkeypatch):
    """Run every test against the built-in defaults, whatever the local config file says."""
    monkeypatch.delenv(confighandler.SEED_ENV, raising=False)
    confighandler.load_defaults()
    yield
    confighandler.load_defaults()


@pytest.fixture
def rng():
    return Random(5132355)


@pytest.fixture
def qq():
    return RationalField()


@pytest.fixture
def f2t():
    return RationalFunctionField(PrimeField(2), 't')


@pytest.fixture
def f3t():
    return RationalFunctionField(PrimeField(3), 't')
