import pytest

from heytord.hset import Universe
from heytord.intervals import IntervalAlgebra
from heytord.order import build_upset_algebra, zoo
from heytord.ordinals import witness_pair


@pytest.fixture(scope="session")
def zoo_posets():
    return zoo()


@pytest.fixture(scope="session")
def zoo_algebras(zoo_posets):
    return {name: build_upset_algebra(p) for name, p in zoo_posets.items()}


@pytest.fixture()
def chain2_universe(zoo_algebras):
    return Universe(zoo_algebras["chain2"])


@pytest.fixture(scope="session")
def witness_universe():
    U = Universe(IntervalAlgebra())
    P = witness_pair(U)
    return U, P


def pytest_terminal_summary(terminalreporter):
    # acceptance criterion lines survive output capturing
    import sys

    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "RESULT_LINES", None):
            terminalreporter.section("acceptance criteria")
            for line in mod.RESULT_LINES:
                terminalreporter.write_line(line)
            break
