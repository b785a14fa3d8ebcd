'''
Periods, the surface Szego function and Jacobi inversion for
a = 1/(1.2 + 1.3i)
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.elliptic import SurfacePoint, build_surface_szego
from padelab.elliptic.model import model_QR_complex
from padelab.germs import MARKOV, WeightSpec

pytestmark = pytest.mark.slow

# Definitions aka constants
POINTS = [mpmath.mpc('0.2', '0.1'), mpmath.mpc(3, -1), mpmath.mpc('-0.4', '0.7')]


def test_period_constants(surface_model, low):
    periods = surface_model.periods
    with low:
        assert periods.B.imag > 0
        assert periods.realness_defect() < 1e-10
        assert periods.riemann_defect() < 1e-10
        lifts = [SurfacePoint(z, sheet) for z in POINTS for sheet in (0, 1)]
        assert periods.product_defect(lifts) < 1e-15


def test_szego_function_of_a_markov_weight(surface_model, low):
    szego = surface_model.szego
    with low:
        lifts = [SurfacePoint(z, 0) for z in POINTS]
        assert szego.product_defect(lifts) < 1e-15
        infinity = SurfacePoint(mpmath.inf, 0)
        assert abs(szego(infinity) * szego(infinity.star()) - 1) < 1e-15


def test_szego_function_of_unit_weight(surface_compact, surface_model, low):
    with low:
        spec = WeightSpec(surface_compact, MARKOV, {'scale': '0.5'})
        szego = build_surface_szego(spec, surface_model.periods, low)
        assert abs(szego.Lambda) < 1e-20
        for z in POINTS:
            assert abs(szego(SurfacePoint(z, 0)) - 1) < 1e-20


def test_jacobi_inversion(surface_model, low):
    with low:
        for n in (1, 2, 3):
            assert surface_model.jip.translation_defect(n) < 1e-12
        flags = [surface_model.jip.solve(n).in_N_eps for n in range(0, 4)]
        for before, now in zip(flags[:-1], flags[1:]):
            assert before or now
        data = surface_model.jip.solve(2).to_json()
        assert 2 == data['n']
        assert data['z_n'][2] in (0, 1)


def test_model_functions_at_an_admissible_index(surface_model, low):
    with low:
        n = next(n for n in (2, 3, 4) if surface_model.jip.solve(n).in_N_eps)
        assert surface_model.jump_defect(n, samples = 2) < 1e-4
        assert surface_model.jump_defect(n, star = True, samples = 2) < 1e-4
        assert surface_model.theta_continuity(n, samples = 2) < 1e-4

        z = mpmath.mpc(3, -1)
        values = model_QR_complex(surface_model, n, z)
        assert 6 == len(values)
        assert tuple(values[:4]) == tuple(surface_model.model_QR(n, z))
        assert values[4] == surface_model.normalize_gammas(n)[0]

        far = mpmath.mpc(1000, 1000)
        Q = surface_model.model_Q(n, far)
        assert abs(values[4] * Q * far ** -n - 1) < 0.05
