"""Shared fixtures: built categories are cached per n for the session."""
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.geometry.coamoeba import build_coamoeba  # noqa: E402
from src.geometry.permutohedron import build_tessellation  # noqa: E402
from src.mirror.beilinson import build_exterior_category  # noqa: E402
from src.mirror.verify import build_cone_system  # noqa: E402


@lru_cache(maxsize=None)
def cone_system(n: int):
    return build_cone_system(n)


@lru_cache(maxsize=None)
def coamoeba(n: int):
    return build_coamoeba(n)


@lru_cache(maxsize=None)
def exterior(n: int):
    return build_exterior_category(n)


@lru_cache(maxsize=None)
def tessellation(n: int):
    return build_tessellation(n)


@pytest.fixture
def cones():
    return cone_system


@pytest.fixture
def coamoebas():
    return coamoeba


@pytest.fixture
def exteriors():
    return exterior


@pytest.fixture
def tessellations():
    return tessellation


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for var in ("COAMOEBA_MAX_N", "COAMOEBA_WINDOW_RADIUS", "COAMOEBA_OUTPUT_DIR", "COAMOEBA_CONFIG"):
        monkeypatch.delenv(var, raising=False)
