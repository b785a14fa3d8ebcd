'''
Two-point Pade approximants, their residuals, orthogonality and zeros
'''

# from the standard library
import json

# third party libraries
import mpmath
import pytest

# our code
from padelab.errors import BoundaryError, InsufficientCoefficientsError
from padelab.germs import MARKOV, PowerSeriesPair, WeightSpec, germ_from_weight, germ_log_pair
from padelab.pade import (LinearizedError, a_n_compute, interpolation_residuals,
        orthogonality_check, pade_solve, pade_star, zeros, zeros_csv_rows)

# Definitions aka constants
POLE = 3


def _simple_pole(N):
    '''Germs of 1/(z - POLE) at 0 and infinity'''
    c = mpmath.mpf(POLE)
    coeffs0 = [-c ** (-k - 1) for k in range(N + 1)]
    coeffs_inf = [0] + [c ** (k - 1) for k in range(1, N + 1)]
    return PowerSeriesPair(coeffs0, coeffs_inf, 'pole')


def test_rational_function_is_recovered(ctx):
    approximant = pade_solve(_simple_pole(4), 1, 2, ctx)
    assert not approximant.degenerate
    assert approximant.monic
    assert abs(approximant.Q[0] + POLE) < 1e-30
    assert abs(approximant.P[0] - 1) < 1e-30
    assert abs(approximant.P[1]) < 1e-30


def test_oversized_type_is_flagged_degenerate(ctx):
    pair = _simple_pole(8)
    approximant = pade_solve(pair, 3, 4, ctx)
    assert approximant.degenerate
    assert 1 == approximant.Q.degree
    z = mpmath.mpf('0.7')
    assert abs(approximant(z) - 1 / (z - POLE)) < 1e-15
    assert interpolation_residuals(approximant, pair) < 1e-15


def test_type_validation(ctx):
    pair = germ_log_pair(2, 4)
    with pytest.raises(ValueError):
        pade_solve(pair, 2, 2, ctx)
    with pytest.raises(InsufficientCoefficientsError):
        pade_solve(pair, 6, 7, ctx)


def test_log_pair_approximant(ctx):
    pair = germ_log_pair(2, 8)
    approximant = pade_solve(pair, 5, 6, ctx)
    assert 5 == approximant.Q.degree
    assert interpolation_residuals(approximant, pair) < 1e-15
    star = pade_star(pair, 5, ctx)
    assert (5, 4) == (star.n1, star.n2)
    assert 4 == star.n
    roots = zeros(approximant, ctx)
    assert 5 == len(roots)
    for z in roots:
        assert abs(approximant.Q(z)) < 1e-15 * max(1, abs(z)) ** 5


def test_json_and_csv_rows(ctx):
    approximant = pade_solve(germ_log_pair(2, 4), 2, 3, ctx)
    data = json.loads(approximant.to_json(mpmath.inf))
    assert 'inf' == data['a_n']
    assert 3 == len(data['Q'])
    rows = zeros_csv_rows(2, [mpmath.mpc('0.5', '-1')])
    assert 2 == rows[0][0]
    assert '0.5' == rows[0][1] and '-1.0' == rows[0][2]


def test_markov_denominators_are_orthogonal(real_compact, low):
    n = 6
    with low:
        spec = WeightSpec(real_compact, MARKOV)
        pair = germ_from_weight(spec, real_compact, n + 2, low)
        approximant = pade_solve(pair, n, n + 1, low)
        assert orthogonality_check(approximant.Q, n, real_compact, spec, low) < 1e-12
        star = pade_star(pair, n, low)
        assert orthogonality_check(star.Q, n, real_compact, spec, low,
                star = True) < 1e-12
        a_n = a_n_compute(star, real_compact, spec, low)
        assert mpmath.isfinite(a_n)

        error = LinearizedError(approximant, spec)
        assert mpmath.isfinite(error(mpmath.mpf(10)))
        with pytest.raises(BoundaryError):
            error(mpmath.mpf('1.5'))
