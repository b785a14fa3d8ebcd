'''
Postconditions of the period computation that need no traced compact
'''

# from the standard library
from types import SimpleNamespace

# third party libraries
import mpmath
import pytest

# our code
from padelab.elliptic import periods
from padelab.errors import ConsistencyError


def test_non_real_periods_stop_the_build(ctx, monkeypatch):
    # W = 1 and V = 5/2 on both arcs, so tau = -V / (2 pi i) is imaginary
    monkeypatch.setattr(periods, '_arc_integral',
            lambda compact, label, g: mpmath.mpc(g(mpmath.mpf(2))))
    compact = SimpleNamespace(real = False, b = mpmath.mpc(0, 1))
    with pytest.raises(ConsistencyError):
        periods.compute_periods(compact, ctx, paths = object())


def test_real_parameter_is_rejected(ctx):
    with pytest.raises(ValueError):
        periods.compute_periods(SimpleNamespace(real = True), ctx)
