import pytest
from hypothesis import HealthCheck, settings

from cesaro import kernels

settings.register_profile(
    "cesaro",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cesaro")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay the one-off JIT cost before any timed assertion runs
    kernels.warmup()
