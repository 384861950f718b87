import pytest

from mcrs.fixtures import table1


@pytest.fixture(scope="session")
def t1():
    return table1()


@pytest.fixture(scope="session")
def t1_status(t1):
    from mcrs.models import classify_all

    return classify_all(t1)


def idx(name: str) -> int:
    """0-based index of ``DMUk`` in the bundled nine-DMU dataset."""
    return int(name[3:]) - 1
