'''
Panels, arc rules and near-singular Cauchy integrals
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.quadrature import (BRANCH, LOG, REGULAR, ArcRule, ContinuousLog,
        Panel, circle_panels, integrate_adaptive, integrate_segment,
        segment_panels)


def test_panel_geometry(ctx):
    panel = Panel(0, 2j)
    assert panel.point(mpmath.mpf('0.5')) == 1j
    assert panel.tangent(0) == 2j
    t, distance = panel.project(mpmath.mpc(1, 1))
    assert abs(t - mpmath.mpf('0.5')) < 1e-30
    assert abs(distance - 1) < 1e-30
    with pytest.raises(ValueError):
        Panel(0, 1, 'kink')


def test_circular_panel_projection(ctx):
    panel = circle_panels(0, 1, 0, mpmath.pi, 1)[0]
    assert abs(panel.midpoint() - 1j) < 1e-30
    t, distance = panel.project(mpmath.mpc(0, 2))
    assert abs(distance - 1) < 1e-30


def test_integrate_segment_polynomial(ctx):
    value = integrate_segment(lambda s: s * s, 0, 1, ctx)
    assert abs(value - mpmath.mpf(1) / 3) < 1e-15


def test_branch_end_substitution(ctx):
    value = integrate_segment(lambda s: 1 / mpmath.sqrt(s), 0, 1, ctx, BRANCH)
    assert abs(value - 2) < 1e-15
    value = integrate_segment(lambda s: 1 / mpmath.sqrt(1 - s), 0, 1, ctx,
            REGULAR, BRANCH)
    assert abs(value - 2) < 1e-15


def test_adaptive_bisection_near_pole(ctx):
    z = mpmath.mpc('0.5', '1e-3')
    value = integrate_adaptive(lambda s: 1 / (s - z), 0, 1, ctx)
    assert abs(value - mpmath.log((1 - z) / (0 - z))) < 1e-12


def test_logarithmic_grading(ctx):
    rule = ArcRule('segment', segment_panels([0, 1], LOG, REGULAR))
    assert abs(rule.integrate(lambda s, k: mpmath.log(s)) + 1) < 1e-12


def test_cauchy_far_and_near(ctx):
    rule = ArcRule('segment', segment_panels([-1, 1]))
    density = rule.tabulate(lambda s, k: 1)
    assert abs(density.integral() - 2) < 1e-30
    for z in (mpmath.mpc(0, 2), mpmath.mpc(0, '0.1')):
        expected = mpmath.log((1 - z) / (-1 - z))
        assert abs(density.cauchy(z) - expected) < 1e-12


def test_moments_of_a_segment(ctx):
    rule = ArcRule('segment', segment_panels([0, '0.5', 1]))
    moments = rule.tabulate(lambda s, k: 1).moments([0, 2])
    assert abs(moments[0] - 1) < 1e-30
    assert abs(moments[2] - mpmath.mpf(1) / 3) < 1e-30


def test_rule_distance(ctx):
    rule = ArcRule('circle', circle_panels(0, 1, 0, 2 * mpmath.pi, 8))
    assert abs(rule.distance(mpmath.mpc(3)) - 2) < 1e-25
    assert abs(rule.distance(0) - 1) < 1e-25


def test_continuous_log_follows_the_argument(ctx):
    turn = 2 * mpmath.pi * mpmath.mpf('0.9')
    rule = ArcRule('c', circle_panels(0, 1, 0, turn, 8))
    log = ContinuousLog(lambda label, s, k: s, [('c', rule)])
    z = mpmath.expj(3 * mpmath.pi / 2)
    assert abs(log('c', z, 6) - 1.5j * mpmath.pi) < 1e-25
    assert abs(log.last.imag - turn) < 1e-1
