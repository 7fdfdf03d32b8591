import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from maghyper import homology  # noqa: E402

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# Every complex constructed anywhere in the session is recorded so that the
# acceptance suite can check d∘d = 0 on all of them.
BUILT_COMPLEXES: list = []
_orig_init = homology.GradedComplex.__init__


def _record(self, *args, **kwargs):
    _orig_init(self, *args, **kwargs)
    BUILT_COMPLEXES.append(self)


homology.GradedComplex.__init__ = _record


@pytest.fixture
def data_dir():
    return DATA


def pytest_collection_modifyitems(session, config, items):
    """Run the acceptance file last, and its d∘d criterion last of all."""
    def key(item):
        in_acc = item.path.name == "test_acceptance.py"
        return (in_acc, in_acc and "c10_" in item.name)

    items.sort(key=key)


_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _RESULTS[report.nodeid] = "PASS" if report.passed else "FAIL"
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _RESULTS[report.nodeid] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def num(nodeid):
        name = nodeid.split("::")[-1]
        return int(name.split("_")[1][1:])

    for nodeid in sorted(_RESULTS, key=num):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"criterion {num(nodeid):2d}  {_RESULTS[nodeid]}  {name}")
