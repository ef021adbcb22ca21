import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sphnn.corpus import generate_classic256, generate_extended16

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def extended16():
    return generate_extended16()


@pytest.fixture(scope="session")
def classic256():
    return generate_classic256()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_addoption(parser):
    parser.addoption(
        "--full-grid",
        action="store_true",
        default=False,
        help="also run the extended corpus at dimensions 200 to 10000 (slow)",
    )


@pytest.fixture(scope="session")
def full_grid(request):
    return request.config.getoption("--full-grid") or bool(__import__("os").environ.get("SPHNN_FULL_GRID"))
