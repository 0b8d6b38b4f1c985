"""Shared fixtures: standard configs and cached series used across modules."""

from __future__ import annotations

import numpy as np
import pytest

from tjcm.core import ModelConfig


@pytest.fixture(scope="session")
def cfg11():
    return ModelConfig(k1=1, k2=1, alpha1=5.0, alpha2=5.0)


@pytest.fixture(scope="session")
def cfg31():
    return ModelConfig(k1=3, k2=1, alpha1=5.0, alpha2=5.0)


@pytest.fixture(scope="session")
def cfg13():
    return ModelConfig(k1=1, k2=3, alpha1=5.0, alpha2=5.0)


@pytest.fixture(scope="session")
def cfg22():
    return ModelConfig(k1=2, k2=2, alpha1=5.0, alpha2=5.0)


@pytest.fixture(scope="session")
def cfg_l3():
    return ModelConfig(k1=1, k2=1, l1=3, l2=3, alpha1=5.0, alpha2=5.0)


@pytest.fixture(scope="session")
def grid25():
    return np.linspace(0.0, 25.0, 2000)


@pytest.fixture(scope="session")
def grid10():
    return np.linspace(0.0, 10.0, 2000)
