import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20110607,
                     help="seed for the randomized property suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)
