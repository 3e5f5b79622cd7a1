import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

import embedding_audit  # noqa: E402

embedding_audit.install()
settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _no_embedding_violations():
    before = len(embedding_audit.violations)
    yield
    assert embedding_audit.violations[before:] == []


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"embedding audit: {embedding_audit.checked} embeddings checked, "
        f"{len(embedding_audit.violations)} violations"
    )
