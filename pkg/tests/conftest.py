import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from amalgams.enumeration import enumerate_levels  # noqa: E402


@lru_cache(maxsize=None)
def levels(n: int, e: str, T: int):
    return tuple(enumerate_levels(n, e, T).catalogs)


@pytest.fixture(scope="session")
def k1():
    """n=1, e=01, levels 0..3."""
    return levels(1, "01", 3)


@pytest.fixture(scope="session")
def k2():
    """n=2, e=0101, levels 0..3."""
    return levels(2, "0101", 3)
