import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bioqa.toydata import write_corpus  # noqa: E402

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def toy_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "toy.json"
    write_corpus(path, 160, seed=3)
    return path


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            status = "PASS"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            status = "SKIP"
        else:
            status = "FAIL"
        _ACCEPTANCE.append((marker.args[0], item.name, status))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, status in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {status}  ({name})")
