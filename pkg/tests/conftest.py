import random

import pytest
from hypothesis import settings, strategies as st

from twograph.catalog import get_entry
from twograph.words import E, F, ThetaSpec

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def theta_from_perm(m, n, perm):
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return ThetaSpec.from_mapping(m, n, {p: pairs[k] for p, k in zip(pairs, perm)})


@st.composite
def thetas(draw, max_m=5, max_n=5, min_m=1, min_n=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    if m == n == 1:
        n = 2
    perm = draw(st.permutations(range(m * n)))
    return theta_from_perm(m, n, perm)


@st.composite
def theta_and_word(draw, max_len=12, **kw):
    theta = draw(thetas(**kw))
    letters = st.one_of(st.integers(1, theta.m).map(E), st.integers(1, theta.n).map(F))
    return theta, tuple(draw(st.lists(letters, max_size=max_len)))


def random_theta(rng: random.Random, m, n):
    perm = list(range(m * n))
    rng.shuffle(perm)
    return theta_from_perm(m, n, perm)


@pytest.fixture
def cat():
    return lambda name: get_entry(name).theta


# acceptance summary: one line per criterion --------------------------------

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: takes minutes")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            num, title = value
            outcome = "PASS" if report.outcome == "passed" else report.outcome.upper()
            if report.outcome == "failed":
                outcome = "FAIL"
            _, was, dur = _RESULTS.get(num, (title, "PASS", 0.0))
            # several tests may share a criterion: the worst outcome wins
            _RESULTS[num] = (title, outcome if was == "PASS" else was, dur + report.duration)


@pytest.fixture(autouse=True)
def _criterion_property(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", tuple(marker.args))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        title, outcome, dur = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {outcome:<7} {title} ({dur:.1f} s)")
