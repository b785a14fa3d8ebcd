'''
The explicit model of the real case a = 1/2 with the Markov weight
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.errors import BoundaryError
from padelab.geometry import D_INFINITY, D_ZERO
from padelab.germs import MARKOV, WeightSpec
from padelab.precision import quad_cheb_segment
from padelab.szego_real import RealModel


@pytest.fixture(scope = 'module')
def model(real_compact, low):
    with low:
        return RealModel(WeightSpec(real_compact, MARKOV), low)


@pytest.mark.slow
def test_needs_a_real_parameter(surface_compact, low):
    with low:
        with pytest.raises(ValueError):
            RealModel(WeightSpec(surface_compact, MARKOV), low)


def test_components(model, low):
    with low:
        assert D_ZERO == model.component(mpmath.mpf('0.2'))
        assert D_INFINITY == model.component(3)
        for z in (1j, mpmath.mpf('1.5')):
            with pytest.raises(BoundaryError):
                model.component(z)


def test_traces_of_w_on_the_segment(model, low):
    with low:
        s = mpmath.mpf('1.5')
        plus = model.eval_w(s, 1)
        minus = model.eval_w(s, -1)
        assert abs(abs(plus) - mpmath.sqrt('0.5')) < 1e-30
        assert abs(plus + minus) < 1e-30
        assert 0 == plus.real
        with pytest.raises(BoundaryError):
            model.eval_w(s)


def test_equilibrium_identities(model, low):
    with low:
        assert model.equilibrium_defect() < 1e-25
        assert model.g(3) > 0
        assert model.g(mpmath.mpf('0.2')) > 0


def test_determinant_closed_form(model, low):
    with low:
        assert abs(model.determinant() - mpmath.mpf(8) / 3) < 1e-30
        assert model.det_check(5) < 1e-25
        assert model.det_check(5, [mpmath.mpf(3), mpmath.mpc('0.2', '0.1')]) < 1e-15
        assert model.check(7, 1e-15) < 1e-15


@pytest.mark.slow
def test_boundary_relations_of_the_model(model, low):
    with low:
        assert model.jump_defect(5, samples = 2) < 1e-4
        assert model.jump_defect(5, star = True, samples = 2) < 1e-4
        assert model.trace_product_defect(samples = 2) < 1e-4


def test_segment_constant_against_chebyshev_rule(model, low):
    # h_hat = 2 on the whole segment for the Markov weight
    with low:
        total = quad_cheb_segment(lambda s: mpmath.log(2), 1 / model.a, model.a,
                low)
        expected = abs(total) / (2 * mpmath.pi)
        assert abs(expected - mpmath.log(2) / 2) < 1e-30
        assert abs(abs(model.S.log(mpmath.inf)) - expected) < 1e-12
