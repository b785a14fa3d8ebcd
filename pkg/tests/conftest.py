'''
Shared fixtures: a low precision context and the compacts of the two
parameters used throughout, a = 1/2 and a = 1/(1.2 + 1.3i)
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.geometry import TrajectoryConfig, build_compact
from padelab.germs import MARKOV, WeightSpec
from padelab.precision import PrecisionContext

# Definitions aka constants
LOW_BITS = 128
SURFACE_A = 1 / mpmath.mpc('1.2', '1.3')


def pytest_configure(config):
    config.addinivalue_line("markers",
            "slow: traces a non-real compact or runs a whole experiment")


@pytest.fixture
def ctx():
    with PrecisionContext({'bits': LOW_BITS}) as context:
        yield context


@pytest.fixture(scope = 'session')
def low():
    return PrecisionContext({'bits': LOW_BITS})


@pytest.fixture(scope = 'session')
def real_compact(low):
    with low:
        return build_compact(mpmath.mpf('0.5'), TrajectoryConfig(), low)


@pytest.fixture(scope = 'session')
def surface_compact(low):
    with low:
        return build_compact(SURFACE_A, TrajectoryConfig(), low)


@pytest.fixture(scope = 'session')
def surface_model(low, surface_compact):
    # imported here so that the fast tests do not pay for the elliptic package
    from padelab.elliptic import SurfaceModel
    with low:
        spec = WeightSpec(surface_compact, MARKOV)
        return SurfaceModel(spec, low, {'resolution': 24})
