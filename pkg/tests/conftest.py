import pathlib
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(pathlib.Path(__file__).parent))

# differing_executors is suppressed because the acceptance gate re-runs the
# property suites under its own counting wrapper, which hypothesis would
# otherwise flag as a second executor for the same test.
settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                           HealthCheck.data_too_large,
                           HealthCheck.differing_executors],
)
settings.load_profile("suite")

FIXTURES = pathlib.Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures() -> pathlib.Path:
    return FIXTURES
