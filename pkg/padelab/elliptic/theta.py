#!python3

"""
The theta function of the period lattice Z + B Z and lattice reduction.

    theta(u) = sum over n of exp(pi i B n^2 + 2 pi i u n)

theta(u + j + B m) = exp(-pi i B m^2 - 2 pi i u m) theta(u) and the only
zeros are the lattice translates of (1 + B)/2.
"""

# third party libraries
import mpmath

# Definitions aka constants
MINIMUM_TERMS = 2

_BAD_PERIOD_ERROR_MSG = "theta needs Im B > 0, got B = %s"


def theta_terms(u, B, tol):
    '''Smallest N with exp(-pi Im B N^2 + 2 pi |Im u| N) below tol'''
    B = mpmath.mpc(B)
    if not B.imag > 0:
        raise ValueError(_BAD_PERIOD_ERROR_MSG % B)
    a = mpmath.pi * B.imag
    c = 2 * mpmath.pi * abs(mpmath.mpc(u).imag)
    bound = -mpmath.log(tol)
    # a N^2 - c N >= bound
    N = int(mpmath.ceil((c + mpmath.sqrt(c * c + 4 * a * bound)) / (2 * a)))
    return max(N, MINIMUM_TERMS)


def theta(u, B, tol = None):
    '''
    Truncated lattice sum of theta at u
    @param tol - truncation bound, default 2^-prec
    '''
    u = mpmath.mpc(u)
    B = mpmath.mpc(B)
    tol = mpmath.eps if tol is None else tol
    N = theta_terms(u, B, tol)
    q = mpmath.expjpi(B)
    total = mpmath.mpc(1)
    for n in range(1, N + 1):
        weight = q ** (n * n)
        total += weight * (mpmath.expjpi(2 * n * u) + mpmath.expjpi(-2 * n * u))
    return total


def lattice_coordinates(u, B):
    '''Real (x, y) with u = x + y B'''
    u = mpmath.mpc(u)
    B = mpmath.mpc(B)
    y = u.imag / B.imag
    return u.real - y * B.real, y


def lattice_round(u, B):
    '''Integers (j, m) with j + m B closest to u among the nearby points'''
    x, y = lattice_coordinates(u, B)
    j0 = int(mpmath.nint(x))
    m0 = int(mpmath.nint(y))
    best = None
    for dm in (-1, 0, 1):
        for dj in (-1, 0, 1):
            j = j0 + dj
            m = m0 + dm
            distance = abs(u - j - m * B)
            if best is None or distance < best[0]:
                best = (distance, j, m)
    return best[1], best[2]


def lattice_reduce(u, B):
    '''(u - j - m B, j, m) with (j, m) from lattice_round'''
    j, m = lattice_round(u, B)
    return u - j - m * B, j, m


def lattice_distance(u, B):
    '''Distance from u to the lattice Z + B Z'''
    return abs(lattice_reduce(u, B)[0])


def half_period(B):
    return (1 + mpmath.mpc(B)) / 2


def quasi_periodicity_defect(B, points):
    '''
    Largest relative deviation from theta(u + 1) = theta(u) and
    theta(u + B) = exp(-pi i B - 2 pi i u) theta(u) over the given u
    '''
    B = mpmath.mpc(B)
    worst = mpmath.mpf(0)
    for u in points:
        u = mpmath.mpc(u)
        value = theta(u, B)
        scale = abs(value)
        worst = max(worst, abs(theta(u + 1, B) - value) / scale,
                abs(theta(u + B, B) - mpmath.expjpi(-B - 2 * u) * value) / scale)
    return worst
