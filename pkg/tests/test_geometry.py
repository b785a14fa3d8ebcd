'''
Parameter normalization, the Chebotarev center and the traced compact
'''

# from the standard library
import io
import logging

# third party libraries
import mpmath
import pytest

# our code
from padelab.errors import BoundaryError
from padelab.geometry import (D_INFINITY, D_ZERO, F_A, F_AINV, F_MINUS_ONE,
        F_ONE, ON_F, TrajectoryConfig, chebotarev_center, chebotarev_residuals,
        is_real_parameter, jukovski, normalize_parameter)

from conftest import SURFACE_A


def test_trajectory_config_validation():
    cfg = TrajectoryConfig({'step': '1e-3'})
    assert 1e-3 == cfg.step
    with pytest.raises(ValueError):
        TrajectoryConfig({'step': '-1'})
    with pytest.raises(ValueError):
        TrajectoryConfig({'step': '0.1', 'matchtol': '1e-4'})
    with pytest.raises(ValueError):
        TrajectoryConfig({'model_vertices': '32'})


def test_normalize_parameter(ctx):
    assert normalize_parameter(2, ctx) == mpmath.mpf('0.5')
    inverted = normalize_parameter(mpmath.mpc('1.2', '1.3'), ctx)
    assert abs(inverted - 1 / mpmath.mpc('1.2', '1.3')) < 1e-30
    assert is_real_parameter(normalize_parameter(mpmath.mpc('0.5', '1e-40'), ctx))
    for bad in (0, 1, -1, 1j):
        with pytest.raises(ValueError):
            normalize_parameter(bad, ctx)


def test_normalization_is_logged_as_a_warning(ctx, caplog):
    with caplog.at_level(logging.WARNING):
        normalize_parameter(2, ctx)
    assert ['WARNING'] == [record.levelname for record in caplog.records]
    caplog.clear()
    with caplog.at_level(logging.WARNING):
        normalize_parameter(mpmath.mpf('0.5'), ctx)
    assert not caplog.records


def test_jukovski():
    assert jukovski(2) == 1.25
    with pytest.raises(ValueError):
        jukovski(0)


def test_real_chebotarev_center(ctx):
    assert chebotarev_center(mpmath.mpf('0.5'), ctx) == 1
    assert chebotarev_center(mpmath.mpf('-0.5'), ctx) == -1


def test_real_compact_layout(real_compact, low):
    with low:
        assert [F_AINV, F_MINUS_ONE, F_A] == real_compact.labels
        assert real_compact.b == 1
        assert abs(real_compact.w(3) - mpmath.sqrt('2.5')) < 1e-30
        assert abs(real_compact.w(3, 1) + mpmath.sqrt('2.5')) < 1e-30
        assert (0.5, 2.0) == pytest.approx(real_compact.extent())


def test_real_compact_classification(real_compact, low):
    with low:
        assert D_ZERO == real_compact.classify_point(mpmath.mpf('0.2'))[0]
        assert D_INFINITY == real_compact.classify_point(3)[0]
        assert ON_F == real_compact.classify_point(1j)[0]
        assert D_INFINITY == real_compact.require_off(-3)
        with pytest.raises(BoundaryError):
            real_compact.require_off(mpmath.mpc('1.5'))
        label, distance = real_compact.nearest_arc(complex(1.5, 0.01))
        assert F_AINV == label
        assert distance == pytest.approx(0.01)


def test_real_compact_is_inversion_symmetric(real_compact, low):
    with low:
        assert real_compact.inversion_defect() < 1e-6


def test_csv_export(real_compact):
    stream = io.StringIO()
    real_compact.to_csv(stream)
    lines = stream.getvalue().splitlines()
    assert 'arc,idx,re,im' == lines[0]
    assert lines[1].startswith(F_AINV + ',0,')


def test_real_boundary_values_of_w(real_compact, low):
    with low:
        rule = real_compact.rule(F_A)
        s, ds, k = rule.nodes[len(rule.nodes) // 2]
        value = real_compact.w_plus(F_A, s, k)
        # the traces on the two sides of the cut differ in sign
        above = real_compact.w(s + mpmath.mpc(0, '1e-20'))
        assert abs(value - above) < 1e-15 or abs(value + above) < 1e-15
        assert abs(value * value - (s - 2) * (s - mpmath.mpf('0.5'))) < 1e-25


@pytest.mark.slow
def test_chebotarev_center_solves_the_real_part_conditions(surface_compact, low):
    with low:
        first, second = chebotarev_residuals(surface_compact.a, surface_compact.b,
                low)
        assert abs(first) < 1e-9 and abs(second) < 1e-9
        assert abs(surface_compact.a - SURFACE_A) < 1e-30
        assert abs(surface_compact.b) < 1 + 1e-9


@pytest.mark.slow
def test_traced_compact(surface_compact, low):
    with low:
        assert [F_AINV, F_MINUS_ONE, F_ONE, F_A] == surface_compact.labels
        assert surface_compact.orientation_area() > 0
        assert surface_compact.inversion_defect() < 1e-6
        assert D_ZERO == surface_compact.classify_point(0)[0]
        assert D_INFINITY == surface_compact.classify_point(10)[0]
        # w ~ z^2 at infinity on the principal sheet
        z = mpmath.mpc(1e6)
        assert abs(surface_compact.w(z) / z ** 2 - 1) < 1e-5
