import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def random_matrix(rng, n, hermitian=False, real=False):
    side = 2**n
    a = rng.normal(size=(side, side))
    if not real:
        a = a + 1j * rng.normal(size=(side, side))
    if hermitian:
        a = (a + a.conj().T) / 2
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
