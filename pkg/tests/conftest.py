import pytest


@pytest.fixture
def announce(capsys):
    """Print a line straight to the terminal, bypassing capture."""

    def _announce(line: str) -> None:
        with capsys.disabled():
            print(line)

    return _announce
