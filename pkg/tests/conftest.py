import os
import random

import pytest
from hypothesis import HealthCheck, settings

from pumpkit.documents import bundled, parse_cells, parse_path, parse_tileset
from pumpkit.grid import VisiblePath, build_cut

# One knob controls every source of randomness in the suite.
SEED = int(os.environ.get("PUMPKIT_SEED", "20260815"))

settings.register_profile(
    "pumpkit",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("pumpkit")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


@pytest.fixture(scope="session")
def t17():
    return parse_tileset(bundled("t17.tiles.json"))


@pytest.fixture(scope="session")
def p25(t17):
    return parse_path(bundled("p25.path.json"), t17)


@pytest.fixture(scope="session")
def q23(t17):
    return parse_path(bundled("q23.path.json"), t17)


@pytest.fixture(scope="session")
def r25(t17):
    return parse_path(bundled("r25.path.json"), t17)


@pytest.fixture(scope="session")
def v105():
    return parse_cells(bundled("v105.cells.json"))


@pytest.fixture(scope="session")
def d196():
    return parse_cells(bundled("d196.cells.json"))


@pytest.fixture(scope="session")
def visible_cut(v105):
    return build_cut(VisiblePath(v105))
