import pytest

from goeritz import library
from goeritz.shading import both_shadings

LIBRARY_NAMES = library.names()


@pytest.fixture(params=LIBRARY_NAMES)
def lib_diagram(request):
    return request.param, library.load(request.param)


def shadings_of(d):
    return list(zip(("s", "s_bar"), both_shadings(d)))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(test_acceptance.VERDICTS[n])
