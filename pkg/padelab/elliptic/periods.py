#!python3

"""
Periods of the holomorphic and Nuttall differentials, Abel's map, Phi and
A_sigma on the surface of w.

With W(L) = int_L ds/w+ and V(L) = int_L (s - b)(s - 1/b) ds/(s w+) over a
model arc L (left traces of w), the cycles over F_1 (alpha) and F_ainv (beta)
give

    C     = 1 / (2 W(F_1))            H = C ds/w, alpha period 1
    B     = -2 C W(F_ainv)            beta period of H, Im B > 0
    tau   = -V(F_1) / (2 pi i)        omega = -V(F_ainv) / (2 pi i)

On sheet 0, abel = C int_a ds/w and Phi = sqrt(a) exp int_a (1 - v) ds/(2s)
along the path library; on sheet 1, abel -> -abel and Phi -> z/Phi.

2026-03-10 Version   padelab
  - periods along the model arcs instead of circles around the cuts

2026-03-18 Version   padelab
  - periods that fail to be real stop the build
"""

# from the standard library
import logging

# third party libraries
import mpmath

# our code
from padelab.elliptic.sheets import PathLibrary, SurfacePoint
from padelab.elliptic.theta import lattice_distance
from padelab.errors import ConsistencyError, OrientationError
from padelab.geometry import F_AINV, F_ONE

# Definitions aka constants
PERIOD_ARCS = (F_ONE, F_AINV)

_NOT_REAL_PERIODS_DETAIL = "periods omega, tau have imaginary parts up to %s"


def _arc_integral(compact, label, g):
    '''int_L g(s) ds / w+(s) along a model arc'''
    rule = compact.rule(label)
    panels = rule.panels
    return rule.integrate(lambda s, k: g(s) / compact.w_arc(label, s,
            panels[k]))


class PeriodData:
    '''
    Period constants and the maps built on them

    @param compact - traced BuslaevCompact of a non-real parameter
    @param (dict) W, V - arc integrals keyed by arc label
    @param (PathLibrary) paths - path library at the working precision
    '''

    def __init__(self, compact, W, V, paths, ctx):
        self.compact = compact
        self.ctx = ctx
        self.W = W
        self.V = V
        self.paths = paths
        self.C = 1 / (2 * W[F_ONE])
        self.B = -2 * self.C * W[F_AINV]
        factor = 2j * mpmath.pi
        self.tau_complex = -V[F_ONE] / factor
        self.omega_complex = -V[F_AINV] / factor
        self.tau = self.tau_complex.real
        self.omega = self.omega_complex.real
        if not self.B.imag > 0:
            raise OrientationError(mpmath.nstr(self.B, 15))
        self.shift = self.omega + self.B * self.tau


    def __repr__(self):
        return "PeriodData(B={}, omega={}, tau={})".format(
                mpmath.nstr(self.B, 12), mpmath.nstr(self.omega, 12),
                mpmath.nstr(self.tau, 12))


    def realness_defect(self):
        '''max(|Im omega|, |Im tau|)'''
        return max(abs(self.omega_complex.imag), abs(self.tau_complex.imag))


    # -- maps ---------------------------------------------------------------

    def abel(self, point):
        '''Abel's map with base point a'''
        H, N = self.paths.integrals(point.z)
        value = self.C * H
        return -value if point.sheet else value


    def abel_derivative(self, point):
        '''d abel / dz at a finite point'''
        value = self.C / self.compact.w(point.z)
        return -value if point.sheet else value


    def Phi(self, point):
        if point.infinite:
            if point.sheet:
                return mpmath.inf
            return mpmath.sqrt(self.compact.a) * mpmath.exp(self.paths.infinity[1])
        if 0 == point.z and point.sheet:
            return mpmath.mpc(0)
        H, N = self.paths.integrals(point.z)
        value = mpmath.sqrt(self.compact.a) * mpmath.exp(N)
        return point.z / value if point.sheet else value


    def A_sigma(self, sigma, point):
        '''exp(-2 pi i sigma abel)'''
        if 0 == sigma:
            return mpmath.mpc(1)
        return mpmath.exp(-2j * mpmath.pi * sigma * self.abel(point))


    # -- checks -------------------------------------------------------------

    def riemann_defect(self):
        '''abel(inf on sheet 1) - abel(0 on sheet 1) - (omega + B tau), mod lattice'''
        difference = (self.abel(SurfacePoint(mpmath.inf, 1)) -
                self.abel(SurfacePoint(0, 1)) - self.shift)
        return lattice_distance(difference, self.B)


    def product_defect(self, points, sigma = mpmath.mpf('0.37')):
        '''
        Largest of |Phi(p) Phi(p*) - z| / |z|, |A(p) A(p*) - 1| and the lattice
        distance of abel(p) + abel(p*) over finite points p
        '''
        worst = mpmath.mpf(0)
        for point in points:
            other = point.star()
            z = point.z
            worst = max(worst, abs(self.Phi(point) * self.Phi(other) - z) / abs(z),
                    abs(self.A_sigma(sigma, point) * self.A_sigma(sigma, other) - 1),
                    lattice_distance(self.abel(point) + self.abel(other), self.B))
        return worst


def compute_periods(compact, ctx, paths = None):
    '''
    Periods of a non-real parameter's surface

    @param compact - traced BuslaevCompact
    @param (PrecisionContext) ctx - working precision
    @param (PathLibrary) paths - reuse a library built at this precision
    '''
    if compact.real:
        raise ValueError("periods need a non-real parameter")
    b = compact.b
    W = {}
    V = {}
    for label in PERIOD_ARCS:
        W[label] = _arc_integral(compact, label, lambda s: 1)
        V[label] = _arc_integral(compact, label,
                lambda s: (s - b) * (s - 1 / b) / s)
    ctx.check_finite(list(W.values()) + list(V.values()), "periods")
    defect = max(abs((V[label] / (2j * mpmath.pi)).imag) for label in PERIOD_ARCS)
    if defect > mpmath.sqrt(ctx.tol):
        raise ConsistencyError(_NOT_REAL_PERIODS_DETAIL % mpmath.nstr(defect, 5))
    paths = PathLibrary(compact, ctx) if paths is None else paths
    periods = PeriodData(compact, W, V, paths, ctx)
    logging.info("Periods: %s", periods)
    return periods


def eval_Phi(periods, point):
    return periods.Phi(point)


def eval_A_sigma(periods, sigma, point):
    return periods.A_sigma(sigma, point)


def abel_map(periods, point):
    return periods.abel(point)
