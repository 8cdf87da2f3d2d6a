from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20261017)


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES
