import logging

import pytest

from nli1d.shared_libraries.types import DomainLayout, Material, RunConfig


@pytest.fixture(autouse=True)
def restore_root_logging():
    """The CLI reconfigures the root logger; put the handlers back after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def default_material():
    return Material(kappa1=1.0, kappa2=3.0)


@pytest.fixture
def default_layout():
    return DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=2.0 ** -5, delta2=2.0 ** -4)


@pytest.fixture
def coarse_config():
    """Default problem on a mesh coarse enough for quick solves."""
    return RunConfig(h=2.0 ** -6, h_fine=2.0 ** -6)
