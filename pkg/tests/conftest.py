import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from tropdiff.core import Tlde  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def coeff_blocks(n_max=1, k_max=3, lo=-3, hi=3):
    """Strategy for coefficient blocks of one equation."""
    def blocks(orders):
        return st.tuples(*[st.tuples(*[st.integers(lo, hi)] * (k + 1)) for k in orders])
    return (st.lists(st.integers(1, k_max), min_size=1, max_size=n_max)
            .flatmap(lambda ks: blocks(ks)))


def tldes(n_max=1, k_max=3, lo=-3, hi=3):
    return coeff_blocks(n_max, k_max, lo, hi).map(Tlde)


def small_supports(top=6, max_size=3):
    return st.lists(st.integers(0, top), max_size=max_size).map(lambda xs: tuple(sorted(set(xs))))


# acceptance results, filled by test_acceptance and printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s[2:])):
        ok, secs, note = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {note}")
