import random

import pytest
from hypothesis import settings

from vanishforge.context import DEFAULT_CONTEXT, PrecisionContext

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx() -> PrecisionContext:
    return DEFAULT_CONTEXT


@pytest.fixture(scope="session")
def mp(ctx):
    return ctx.mp


@pytest.fixture
def rng():
    return random.Random(20240517)


def random_w0_beta(mp, N, rng, real=False):
    """Random complex coefficient vector summing to zero."""
    beta = [mp.mpc(rng.uniform(-1, 1), 0 if real else rng.uniform(-1, 1)) for _ in range(N - 2)]
    beta.append(-mp.fsum(beta))
    return beta


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
