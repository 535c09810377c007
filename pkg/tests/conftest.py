import numpy as np
import pytest

from teicp.problems import build, parse_problem


@pytest.fixture(scope="session")
def ex1():
    return build(parse_problem("ex1"))


@pytest.fixture(scope="session")
def ex2():
    return build(parse_problem("ex2:n=5"))


@pytest.fixture(scope="session")
def ex3():
    return build(parse_problem("ex3"))


@pytest.fixture(scope="session")
def ex4():
    return build(parse_problem("ex4:n=5"))


@pytest.fixture(scope="session")
def ex5():
    return build(parse_problem("ex5:n=5"))


@pytest.fixture(scope="session")
def ex6():
    return build(parse_problem("ex6:n=5"))


@pytest.fixture
def rng():
    return np.random.default_rng(42)
