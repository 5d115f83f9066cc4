import pytest

from vopsens.domination import check_domination
from vopsens.problems import parse_problem, problem_base_point


@pytest.fixture(scope="session")
def linear_frontier_problem():
    return parse_problem("example_4_1")


@pytest.fixture(scope="session")
def linear_frontier_base(linear_frontier_problem):
    return problem_base_point(linear_frontier_problem)


@pytest.fixture(scope="session")
def linear_frontier_certificate(linear_frontier_problem, linear_frontier_base):
    return check_domination(linear_frontier_problem, linear_frontier_base.p, radius=0.5)


@pytest.fixture(scope="session")
def interval_family_problem():
    return parse_problem("example_5_1")


@pytest.fixture(scope="session")
def interval_family_base(interval_family_problem):
    return problem_base_point(interval_family_problem)


@pytest.fixture(scope="session")
def interval_family_certificate(interval_family_problem, interval_family_base):
    return check_domination(interval_family_problem, interval_family_base.p, radius=0.5)
