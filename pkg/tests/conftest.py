import os
import random

import numpy as np
import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("OCTAVIA_HEAVY"):
        return
    skip = pytest.mark.skip(reason="heavy closure; set OCTAVIA_HEAVY=1 to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return random.Random(20260823)


@pytest.fixture
def nprng():
    return np.random.default_rng(20260823)
