from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# acceptance results, printed at the end of the run
ACCEPTANCE_LINES = []


def small_fractions(bound=9):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


orders = small_fractions()
weights = st.sampled_from([Fraction(v) for v in (1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2)])


def seqs(n_min=1, n_max=24):
    return st.lists(small_fractions(), min_size=n_min, max_size=n_max)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
