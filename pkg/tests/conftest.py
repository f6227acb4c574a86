import numpy as np
import pytest
from hypothesis import strategies as st

from spinchain_echo import ChainParams

odd_sizes = st.integers(min_value=1, max_value=100).map(lambda m: 2 * m + 1)
reals = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@st.composite
def chain_params(draw, gamma=None, g=None):
    return ChainParams(
        draw(odd_sizes),
        draw(reals) if gamma is None else gamma,
        draw(reals),
        draw(st.floats(min_value=-0.5, max_value=0.5)) if g is None else g,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    lines = request.config._acceptance_lines

    def log(criterion, ok, detail):
        lines.append(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
