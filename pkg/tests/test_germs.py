'''
Power series germs at 0 and infinity and the weight classes
'''

# from the standard library
import json

# third party libraries
import mpmath
import pytest

# our code
from padelab.errors import BranchError, ClassViolationError
from padelab.geometry import F_A, F_AINV
from padelab.germs import (CLASS_ONE, CLASS_TWO, JACOBI, LOG_PAIR, MARKOV,
        PowerSeriesPair, WeightSpec, germ_from_weight, germ_log_pair,
        germ_markov_pair, weight_from_file)
from padelab.quadrature import BRANCH_LOG


def test_log_pair_coefficients(ctx):
    pair = germ_log_pair(2, 40)
    assert 40 == pair.order
    assert abs(pair.coeffs0[0] - mpmath.log(2)) < 1e-30
    assert abs(pair.coeffs0[3] - mpmath.mpf(7) / 3) < 1e-30
    assert abs(pair.coeffs_inf[3] + mpmath.mpf(7) / 3) < 1e-30
    z = mpmath.mpf('0.01')
    assert abs(pair.eval0(z) - mpmath.log((z - 1) / (z - mpmath.mpf('0.5')))) < 1e-30
    z = mpmath.mpf(100)
    assert abs(pair.eval_inf(z) - mpmath.log((z - 2) / (z - 1))) < 1e-30


def test_log_pair_of_complex_parameter(ctx):
    a = mpmath.mpc('1.2', '1.3')
    pair = germ_log_pair(a, 40)
    z = mpmath.mpc('0.01', '0.02')
    assert abs(pair.eval0(z) - mpmath.log((z - 1) / (z - 1 / a))) < 1e-25
    z = mpmath.mpc(-60, 20)
    assert abs(pair.eval_inf(z) - mpmath.log((z - a) / (z - 1))) < 1e-25


def test_log_pair_rejects_bad_input(ctx):
    with pytest.raises(BranchError):
        germ_log_pair(-2, 5)
    with pytest.raises(ValueError):
        germ_log_pair(1, 5)
    for N in (-1, 2.5):
        with pytest.raises(ValueError):
            germ_log_pair(2, N)


def test_pair_validation_and_json(ctx):
    with pytest.raises(ValueError):
        PowerSeriesPair([1], [1, 2])
    pair = germ_log_pair(2, 4)
    copy = PowerSeriesPair.from_json(pair.to_json())
    assert 4 == copy.order
    assert abs(copy.coeffs0[4] - pair.coeffs0[4]) < 1e-30
    data = json.loads(pair.to_json())
    data['N'] = 7
    with pytest.raises(ValueError):
        PowerSeriesPair.from_json(json.dumps(data))


def test_real_markov_germs_are_inverse_root(real_compact, low):
    with low:
        pair = germ_markov_pair(mpmath.mpf('0.5'), 60)
        z = mpmath.mpf('0.1')
        assert abs(pair.eval0(z) * real_compact.w(z) - 1) < 1e-25
        z = mpmath.mpf(10)
        assert abs(pair.eval_inf(z) * real_compact.w(z) + 1) < 1e-25
        with pytest.raises(ValueError):
            germ_markov_pair(mpmath.mpc('0.5', '0.5'), 4)


def test_weight_classes(real_compact, low):
    with low:
        assert CLASS_TWO == WeightSpec(real_compact, MARKOV).weight_class
        jacobi = WeightSpec(real_compact, JACOBI, {'alpha': 0})
        assert CLASS_ONE == jacobi.weight_class
        assert BRANCH_LOG == jacobi.kinds(F_A)[1]
        assert BRANCH_LOG == jacobi.kinds(F_AINV)[0]
        assert CLASS_TWO == WeightSpec(real_compact, JACOBI).weight_class
        with pytest.raises(ClassViolationError):
            WeightSpec(real_compact, LOG_PAIR)
        with pytest.raises(ClassViolationError):
            WeightSpec(real_compact, JACOBI, {'alpha': -1})
        with pytest.raises(ValueError):
            WeightSpec(real_compact, 'gaussian')


def test_weight_from_file(real_compact, low, tmp_path):
    path = tmp_path / 'weight.json'
    path.write_text(json.dumps({'family': 'jacobi', 'alpha': 0.25,
            'scale': '3'}))
    with low:
        spec = weight_from_file(real_compact, str(path))
    assert JACOBI == spec.family
    assert CLASS_ONE == spec.weight_class
    assert 3 == spec.scale


def test_weight_germs_expand_the_cauchy_transform(real_compact, low):
    with low:
        spec = WeightSpec(real_compact, MARKOV)
        pair = germ_from_weight(spec, real_compact, 60, low)
        assert 0 == pair.coeffs_inf[0]
        densities = spec.densities()
        for z, germ in ((mpmath.mpf('0.1'), pair.eval0),
                (mpmath.mpf(10), pair.eval_inf)):
            assert abs(germ(z) - spec.cauchy_transform(z, densities)) < 1e-12


@pytest.mark.slow
def test_complex_markov_germs(surface_compact, low):
    with low:
        pair = germ_markov_pair(surface_compact.a, 40, surface_compact)
        z = mpmath.mpc('0.05', '0.02')
        assert abs(pair.eval0(z) * surface_compact.w(z) - 1) < 1e-20
        z = mpmath.mpc(50, -10)
        assert abs(pair.eval_inf(z) * surface_compact.w(z) + 1) < 1e-20


@pytest.mark.slow
def test_log_weight_class(surface_compact, low):
    with low:
        spec = WeightSpec(surface_compact, LOG_PAIR)
        assert CLASS_ONE == spec.weight_class
        assert 0 == spec.exponents['b']
