import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _graphs import complete  # noqa: E402


@pytest.fixture
def k4():
    return complete(4)
