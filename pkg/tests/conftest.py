import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import overpartition_count_by_enumeration  # noqa: E402


@pytest.fixture(scope="session")
def enumerated_0_to_60():
    return [overpartition_count_by_enumeration(n) for n in range(61)]
