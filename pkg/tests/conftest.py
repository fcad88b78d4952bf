import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permobius.census import build_principal_table


@pytest.fixture(scope="session")
def mu_table7():
    """Shared principal-Mobius cache covering every permutation of length <= 7."""
    return build_principal_table(7)
