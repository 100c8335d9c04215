# tests/conftest.py
import os
import sys

import numpy as np
import pytest

# Same path setup as verifier/main.py
VERIFIER_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "verifier")
if VERIFIER_DIR not in sys.path:
    sys.path.insert(0, VERIFIER_DIR)

from kummer_chow_verifier.config import RunSettings  # noqa: E402
from kummer_chow_verifier.sub_checks.rational_field.tools import (  # noqa: E402
    BranchPoint,
    random_branch_points,
    random_element,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def settings():
    return RunSettings(samples=50, points=2)


@pytest.fixture
def elements(rng):
    return [random_element(rng) for _ in range(6)]


@pytest.fixture
def branch_points(rng):
    return random_branch_points(rng, 4)


@pytest.fixture
def reference_point():
    return BranchPoint.principal(-1.0, -2.0)
