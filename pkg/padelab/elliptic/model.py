#!python3

"""
Asymptotic model of the approximants for a non-real parameter.

    Theta(p; q) = theta(abel(p) - abel(q) - (1 + B)/2)
                  / theta(abel(p) - abel(inf0) - (1 + B)/2)
    Psi_n       = Phi^n A_{n tau + m_n} S_h Theta(.; z_n)
    Psi*_n      = Phi^n A_{n tau + m*_n} S_h Theta(.; 0 on sheet 1) Theta(.; z*_n)

Q_n is Psi_n on sheet 0 over D0 and on sheet 1 over Dinf; R_n is z^-n Psi_n
on the other sheet, with a sign change over Dinf. The starred pair uses
Psi*_{n-1} and z^-n.

2026-03-14 Version   padelab
  - gamma*_{n-1} by extrapolation along the positive real axis
"""

# from the standard library
import logging

# third party libraries
import mpmath
import numpy as np

# our code
from padelab.elliptic.jip import JIPSolver
from padelab.elliptic.periods import compute_periods
from padelab.elliptic.sheets import (EDGE, JUMP_SIDES, SurfacePoint,
        arc_normal, sample_arc_points)
from padelab.elliptic.szego import build_surface_szego
from padelab.elliptic.theta import half_period, theta
from padelab.errors import BoundaryError, IndexSelectionError
from padelab.geometry import (D_INFINITY, D_ZERO, F_AINV, F_MINUS_ONE, F_ONE,
        _polyline_distance, _winding_number)
from padelab.precision import complex_pair, one_sided, richardson_limit

# Definitions aka constants
EXTRAPOLATION_POINTS = 8
JUMP_SAMPLES = 10
ENDPOINT_STEPS = (mpmath.mpf(10) ** -4, mpmath.mpf(10) ** -6)


class SurfaceModel:
    '''
    Everything the strong asymptotics need for one weight on a non-real
    compact: periods, S_h, Jacobi inversion and the functions Psi_n

    @param spec - WeightSpec on a non-real BuslaevCompact
    @param (PrecisionContext) ctx - working precision
    @param (dict) settings - 'eps' and 'resolution' for the inversion
    '''

    def __init__(self, spec, ctx, settings = {}):
        compact = spec.compact
        if compact.real:
            raise ValueError("the surface model needs a non-real parameter")
        self.spec = spec
        self.compact = compact
        self.ctx = ctx
        self.periods = compute_periods(compact, ctx)
        self.szego = build_surface_szego(spec, self.periods, ctx)
        self.jip = JIPSolver(self.periods, self.szego, ctx, settings)
        self.eps = self.jip.eps
        self.B = self.periods.B
        self.half = half_period(self.B)
        self.abel_infinity = self.jip.abel_infinity
        self.abel_origin = self.jip.abel_origin
        model = compact.model
        self._closed = np.array([complex(v) for v in
                list(model[F_ONE][:-1]) + list(model[F_MINUS_ONE][:-1])])
        self._arcs = [np.array([complex(v) for v in model[label]])
                for label in compact.labels]
        self._gammas = {}
        logging.info("Surface model for a = %s, weight %s",
                mpmath.nstr(compact.a, 15), spec)


    def __repr__(self):
        return "SurfaceModel(a={}, {})".format(mpmath.nstr(self.compact.a, 10),
                self.spec)


    # -- location -----------------------------------------------------------

    def distance(self, z):
        point = complex(z)
        return min(_polyline_distance(arc, point) for arc in self._arcs)


    def component(self, z):
        '''D0 or Dinf of the model arcs; BoundaryError on F'''
        distance = self.distance(z)
        if distance < EDGE:
            raise BoundaryError(z, distance)
        return D_ZERO if _winding_number(self._closed, complex(z)) else D_INFINITY


    def _evaluate(self, f, point):
        '''f at a point, as a one sided limit for traces on F'''
        if point.side:
            label, normal = arc_normal(self.compact, point.z)
            return one_sided(lambda z: f(SurfacePoint(z, point.sheet)),
                    point.z, normal, point.side)
        if not point.infinite:
            distance = self.distance(point.z)
            if distance < EDGE:
                raise BoundaryError(point.z, distance)
        return f(point)


    # -- theta quotients ----------------------------------------------------

    def _theta(self, u):
        return theta(u - self.half, self.B)


    def Theta(self, point, target):
        '''Theta(p; q) given abel(q) = target'''
        u = self.periods.abel(point)
        return self._theta(u - target) / self._theta(u - self.abel_infinity)


    def Theta_n(self, n, point):
        target = self.periods.abel(self.jip.solve(n).point)
        return self._evaluate(lambda p: self.Theta(p, target), point)


    # -- Psi ----------------------------------------------------------------

    def _product(self, n, sigma, targets, point):
        if point.infinite and (0 == point.sheet or 0 < n):
            return mpmath.inf
        u = self.periods.abel(point)
        value = self.periods.A_sigma(sigma, point) * self.szego(point)
        if 0 < n:
            value *= self.periods.Phi(point) ** n
        for target in targets:
            value *= self._theta(u - target) / self._theta(u - self.abel_infinity)
        return self.ctx.check_finite(value, "Psi")


    def eval_Psi(self, n, point):
        solution = self.jip.solve(n)
        sigma = n * self.periods.tau + solution.m
        targets = [self.periods.abel(solution.point)]
        return self._evaluate(lambda p: self._product(n, sigma, targets, p),
                point)


    def eval_Psi_star(self, n, point):
        solution = self.jip.solve(n)
        sigma = n * self.periods.tau + solution.m_star
        targets = [self.abel_origin, self.periods.abel(solution.point_star)]
        return self._evaluate(lambda p: self._product(n, sigma, targets, p),
                point)


    def upsilon(self, n, point):
        '''Psi*_n / Psi_n'''
        return self.eval_Psi_star(n, point) / self.eval_Psi(n, point)


    # -- model functions ----------------------------------------------------

    def normalize_gammas(self, n):
        '''
        (gamma_n, gamma*_{n-1}) with gamma_n Q_n(z) z^-n -> 1 and
        gamma*_{n-1} z^(n-2) R*_{n-1}(z) -> 1 at infinity
        '''
        if n in self._gammas:
            return self._gammas[n]
        solution = self.jip.solve(n)
        infinity = SurfacePoint(mpmath.inf, 1)
        sigma = n * self.periods.tau + solution.m
        Phi = self.periods.Phi(SurfacePoint(mpmath.inf, 0))
        rest = (self.periods.A_sigma(sigma, infinity) * self.szego(infinity) *
                self.Theta(infinity, self.periods.abel(solution.point)))
        gamma = Phi ** n / rest

        R0 = 2 * self.periods.paths.far
        radii = [R0 * 2 ** j for j in range(EXTRAPOLATION_POINTS)]
        values = [-R * R / self.eval_Psi_star(n - 1, SurfacePoint(R, 0))
                for R in radii]
        gamma_star = richardson_limit([1 / R for R in radii], values)
        self._gammas[n] = (gamma, gamma_star)
        return gamma, gamma_star


    def require_index(self, n):
        solution = self.jip.solve(n)
        if not solution.in_N_eps:
            raise IndexSelectionError(n, self.eps)
        return solution


    def model_QR(self, n, z):
        '''(Q_n, R_n, Q*_{n-1}, R*_{n-1}) at z off F'''
        if 1 > n:
            raise ValueError("model functions need n >= 1")
        self.require_index(n)
        z = mpmath.mpc(z)
        zero = SurfacePoint(z, 0)
        one = SurfacePoint(z, 1)
        scale = z ** -n
        if D_ZERO == self.component(z):
            return (self.eval_Psi(n, zero), scale * self.eval_Psi(n, one),
                    self.eval_Psi_star(n - 1, zero),
                    scale * self.eval_Psi_star(n - 1, one))
        return (self.eval_Psi(n, one), -scale * self.eval_Psi(n, zero),
                self.eval_Psi_star(n - 1, one),
                -scale * self.eval_Psi_star(n - 1, zero))


    def model_Q(self, n, z):
        return self.model_QR(n, z)[0]


    def model_R(self, n, z):
        return self.model_QR(n, z)[1]


    def g(self, z):
        '''log|Phi| of the lift of z to sheet 0 over D0, sheet 1 over Dinf'''
        sheet = 0 if D_ZERO == self.component(z) else 1
        return mpmath.log(abs(self.periods.Phi(SurfacePoint(z, sheet))))


    # -- checks -------------------------------------------------------------

    def jump_defect(self, n, star = False, samples = JUMP_SAMPLES):
        '''
        Largest |Psi- / (Psi+ h) - 1| over sampled points of both lifts of
        every arc
        '''
        Psi = self.eval_Psi_star if star else self.eval_Psi
        worst = mpmath.mpf(0)
        for label in self.compact.labels:
            rule = self.compact.rule(label)
            for s, panel, normal in sample_arc_points(rule, samples):
                h = self.spec.h(label, s, panel)
                for lift in (0, 1):
                    (plus_sign, plus_sheet), (minus_sign, minus_sheet) = \
                            JUMP_SIDES[label][lift]
                    plus = one_sided(lambda z: Psi(n, SurfacePoint(z,
                            plus_sheet)), s, normal, plus_sign)
                    minus = one_sided(lambda z: Psi(n, SurfacePoint(z,
                            minus_sheet)), s, normal, minus_sign)
                    worst = max(worst, abs(minus / (plus * h) - 1))
        logging.debug("Psi jump defect n = %d: %s", n, mpmath.nstr(worst, 5))
        return worst


    def theta_continuity(self, n, samples = JUMP_SAMPLES):
        '''Largest |Theta_n+ / Theta_n- - 1| across the cycle over F_ainv'''
        target = self.periods.abel(self.jip.solve(n).point)
        worst = mpmath.mpf(0)
        for s, panel, normal in sample_arc_points(self.compact.rule(F_AINV),
                samples):
            for lift in (0, 1):
                (plus_sign, plus_sheet), (minus_sign, minus_sheet) = \
                        JUMP_SIDES[F_AINV][lift]
                plus = one_sided(lambda z: self.Theta(SurfacePoint(z,
                        plus_sheet), target), s, normal, plus_sign)
                minus = one_sided(lambda z: self.Theta(SurfacePoint(z,
                        minus_sheet), target), s, normal, minus_sign)
                worst = max(worst, abs(plus / minus - 1))
        return worst


    def bound_profile(self, n, points):
        '''(|Q_n| e^(-n g), |R_n| e^(n g)) at each point'''
        out = []
        for z in points:
            Q, R, Qs, Rs = self.model_QR(n, z)
            g = self.g(z)
            out.append((abs(Q) * mpmath.exp(-n * g), abs(R) * mpmath.exp(n * g)))
        return out


    def ratio_profile(self, n, points):
        '''|Q*_{n-1} / Q_n| at each point'''
        out = []
        for z in points:
            Q, R, Qs, Rs = self.model_QR(n, z)
            out.append(abs(Qs / Q))
        return out


    def endpoint_slope(self, n, sheet, at_a = True):
        '''
        Slope of log|Psi_n|^2 against log|z - e| approaching e = a (or 1/a)
        from outside the arcs
        '''
        vertices = self.periods.paths.vertices
        if at_a:
            e, inner = vertices[-1], vertices[-2]
        else:
            e, inner = vertices[0], vertices[1]
        direction = (e - inner) / abs(e - inner)
        logs = []
        for t in ENDPOINT_STEPS:
            value = self.eval_Psi(n, SurfacePoint(e + t * direction, sheet))
            logs.append((mpmath.log(t), 2 * mpmath.log(abs(value))))
        (x0, y0), (x1, y1) = logs
        return (y1 - y0) / (x1 - x0)


    def to_json(self, n):
        solution = self.jip.solve(n)
        out = solution.to_json()
        if solution.in_N_eps:
            gamma, gamma_star = self.normalize_gammas(n)
            out['gamma_n'] = complex_pair(gamma)
            out['gamma_star'] = complex_pair(gamma_star)
        else:
            out['gamma_n'] = None
            out['gamma_star'] = None
        return out


def model_QR_complex(model, n, z):
    '''(Q_n, R_n, Q*_{n-1}, R*_{n-1}, gamma_n, gamma*_{n-1})'''
    values = model.model_QR(n, z)
    return values + model.normalize_gammas(n)


def eval_Psi(model, n, point):
    return model.eval_Psi(n, point)


def eval_Psi_star(model, n, point):
    return model.eval_Psi_star(n, point)
