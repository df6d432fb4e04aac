import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running; enable with WDC_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("WDC_SLOW", "") not in ("", "0"):
        return
    skip = pytest.mark.skip(reason="set WDC_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
