"""Shared fixtures: small rulesets and a deterministic RNG."""
import random

import pytest

from makerbreaker import generate_mnk, generate_trunc7


@pytest.fixture
def rng():
    return random.Random(20260823)


@pytest.fixture(scope="session")
def mnk33():
    return generate_mnk(3, 3, 3)


@pytest.fixture(scope="session")
def mnk44():
    return generate_mnk(4, 4, 3)


@pytest.fixture(scope="session")
def t7():
    return generate_trunc7(7)
