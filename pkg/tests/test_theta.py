'''
Theta function of the lattice Z + B Z and surface points
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.elliptic.sheets import SurfacePoint, chordal
from padelab.elliptic.theta import (half_period, lattice_coordinates,
        lattice_distance, lattice_reduce, quasi_periodicity_defect, theta)

# Definitions aka constants
B = mpmath.mpc('0.2', '1.3')


def test_theta_matches_jacobi_theta(ctx):
    u = mpmath.mpc('0.3', '0.1')
    expected = mpmath.jtheta(3, mpmath.pi * u, mpmath.expjpi(B))
    assert abs(theta(u, B) - expected) < 1e-30


def test_quasi_periodicity_and_zero(ctx):
    points = [mpmath.mpc('0.3', '0.1'), mpmath.mpc('-0.2', '0.4')]
    assert quasi_periodicity_defect(B, points) < 1e-25
    assert abs(theta(half_period(B), B)) < 1e-25
    with pytest.raises(ValueError):
        theta(0, mpmath.mpc(1, 0))


def test_lattice_reduction(ctx):
    u = mpmath.mpc('0.3', '0.1') + 2 + 3 * B
    reduced, j, m = lattice_reduce(u, B)
    assert (2, 3) == (j, m)
    assert abs(reduced - mpmath.mpc('0.3', '0.1')) < 1e-30
    x, y = lattice_coordinates(1 + 2 * B, B)
    assert abs(x - 1) < 1e-30 and abs(y - 2) < 1e-30
    assert lattice_distance(-1 + 4 * B, B) < 1e-30


def test_surface_points(ctx):
    point = SurfacePoint(mpmath.mpc(1, 1), 0)
    assert 1 == point.star().sheet
    assert point.chordal_distance(point.star()) is None
    assert SurfacePoint(mpmath.inf, 1).infinite
    assert ['inf', '0', 1] == SurfacePoint(mpmath.inf, 1).to_list()
    with pytest.raises(ValueError):
        SurfacePoint(0, 2)
    with pytest.raises(ValueError):
        SurfacePoint(0, 0, 3)


def test_chordal_distance(ctx):
    assert 2 == chordal(0, mpmath.inf)
    assert 0 == chordal(mpmath.inf, mpmath.inf)
    assert abs(chordal(1, -1) - 2) < 1e-30
