import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

LONG = os.environ.get("UNEXPECTED_LONG") == "1"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes more than a few seconds")
    config.addinivalue_line("markers", "long: runs of ten minutes or more, enabled with UNEXPECTED_LONG=1")


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="set UNEXPECTED_LONG=1 to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
