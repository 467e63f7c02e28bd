import pytest

from rowcox import parse_poset, ship_corpus

_OUTCOMES = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_OUTCOMES] = {}


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed):
        number, title = marker.args
        outcomes = item.config.stash[_OUTCOMES]
        ok = outcomes.get(number, (title, True))[1] and not report.failed
        outcomes[number] = (title, ok)
    return report


def pytest_terminal_summary(terminalreporter, config):
    outcomes = config.stash[_OUTCOMES]
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        title, ok = outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def corpus():
    return ship_corpus()


@pytest.fixture(scope="session")
def load_poset(corpus):
    def load(name):
        return parse_poset(corpus["posets"][name]).poset

    return load
