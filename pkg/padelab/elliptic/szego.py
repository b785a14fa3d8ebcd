#!python3

"""
Szego function S_h of a weight on the surface of w.

With lambda = -log h continued smoothly along each arc of F and the signs
eps = -1 on F_ainv, +1 elsewhere,

    K(z)     = 2 sum eps int lambda ds / ((s - z) w+)
    Lambda_H = 2 C sum eps int lambda ds / w+
    S_h      = exp{(w / 4 pi i) [K(z) - 2 int_F_1 ds / ((s - z) w) Lambda_H]}

so that S_h(p) S_h(p*) = 1 and S_h+ = S_h- / h away from the cycle over F_1.
"""

# from the standard library
import logging

# third party libraries
import mpmath

# our code
from padelab.elliptic.sheets import JUMP_SIDES, SurfacePoint, sample_arc_points
from padelab.errors import BranchError, ClassViolationError
from padelab.geometry import F_A, F_AINV, F_MINUS_ONE, F_ONE
from padelab.germs import CLASS_ONE
from padelab.precision import one_sided
from padelab.quadrature import BRANCH_LOG, ContinuousLog

# Definitions aka constants
CYCLE_SIGNS = {F_ONE: 1, F_MINUS_ONE: 1, F_A: 1, F_AINV: -1}
JUMP_ARCS = (F_MINUS_ONE, F_A, F_AINV)
EXPONENT_STEPS = (mpmath.mpf(10) ** -6, mpmath.mpf(10) ** -8)
EXPONENT_TOLERANCE = 0.05
JUMP_SAMPLES = 5

# where each endpoint sits: (arc, True for the arc's start)
_ENDPOINTS = {'a': (F_A, False), 'b': (F_A, True), 'ainv': (F_AINV, True),
        'binv': (F_AINV, False)}


class SurfaceSzego:
    '''
    S_h on the surface for a WeightSpec on a non-real compact

    @param spec - WeightSpec
    @param (PeriodData) periods - supplies C
    @param (PrecisionContext) ctx - working precision
    '''

    def __init__(self, spec, periods, ctx):
        compact = spec.compact
        self.spec = spec
        self.compact = compact
        self.periods = periods
        self.ctx = ctx
        self.rules = {}
        self.lambdas = {}
        self.densities = []
        for label in compact.labels:
            start, end, singular = spec.kinds(label)
            rule = compact.rule(label, BRANCH_LOG, BRANCH_LOG, singular)
            self.rules[label] = rule
            panels = rule.panels
            h = lambda label, s, k, panels = panels: spec.h(label, s, panels[k])
            try:
                self.lambdas[label] = ContinuousLog(h, [(label, rule)])
            except BranchError as e:
                raise ClassViolationError("log h on %s: %s" % (label, e))
            sign = CYCLE_SIGNS[label]
            density = lambda s, k, label = label, panels = panels, sign = sign: \
                    -sign * self.lambdas[label](label, s, k) / \
                    compact.w_arc(label, s, panels[k])
            self.densities.append(rule.tabulate(density))

        alpha_rule = compact.rule(F_ONE)
        alpha_panels = alpha_rule.panels
        self.alpha_density = alpha_rule.tabulate(lambda s, k:
                1 / compact.w_arc(F_ONE, s, alpha_panels[k]))

        self.Lambda = 2 * periods.C * mpmath.fsum(d.integral()
                for d in self.densities)
        first = 2 * mpmath.fsum(d.integral(lambda s: s) for d in self.densities)
        alpha_first = 2 * self.alpha_density.integral(lambda s: s)
        self._infinity = (-first + self.Lambda * alpha_first) / (4j * mpmath.pi)
        self.exponents = self.endpoint_exponents()
        if CLASS_ONE == spec.weight_class:
            for e in ('b', 'binv'):
                if abs(self.exponents[e]) > EXPONENT_TOLERANCE:
                    logging.warning("Weight exponent at %s estimated as %s, "
                            "the sum condition expects 0", e,
                            mpmath.nstr(self.exponents[e], 5))
        logging.info("Surface Szego function: Lambda_H = %s",
                mpmath.nstr(self.Lambda, 15))


    def __repr__(self):
        return "SurfaceSzego({})".format(self.spec)


    def lam(self, label, s, panel):
        '''lambda = -log h on an arc'''
        return -self.lambdas[label](label, s, panel.index)


    def log(self, point):
        if point.infinite:
            return -self._infinity if point.sheet else self._infinity
        z = point.z
        K = 2 * mpmath.fsum(d.cauchy(z) for d in self.densities)
        correction = 2 * self.alpha_density.cauchy(z) * self.Lambda
        return self.compact.w(z, point.sheet) * (K - correction) / (4j * mpmath.pi)


    def __call__(self, point):
        return self.ctx.check_finite(mpmath.exp(self.log(point)), "S_h")


    def endpoint_exponents(self):
        '''
        alpha(e) estimated from the slope of log|h| toward each endpoint,
        h ~ |s - e|^(alpha + 1/2)
        '''
        out = {}
        for e, (label, at_start) in _ENDPOINTS.items():
            panels = self.rules[label].panels
            panel = panels[0] if at_start else panels[-1]
            end = panel.start if at_start else panel.end
            logs = []
            for t in EXPONENT_STEPS:
                u = t if at_start else 1 - t
                s = panel.point(u)
                logs.append((mpmath.log(abs(s - end)),
                        mpmath.log(abs(self.spec.h(label, s, panel)))))
            (x0, y0), (x1, y1) = logs
            out[e] = (y1 - y0) / (x1 - x0) - mpmath.mpf(1) / 2
        return out


    # -- checks -------------------------------------------------------------

    def product_defect(self, points):
        return max(abs(self(p) * self(p.star()) - 1) for p in points)


    def jump_defect(self, samples = JUMP_SAMPLES):
        '''Largest |S_h+ h / S_h- - 1| over sampled points away from F_1'''
        worst = mpmath.mpf(0)
        for label in JUMP_ARCS:
            for s, panel, normal in sample_arc_points(self.rules[label], samples):
                h = self.spec.h(label, s, panel)
                for lift in (0, 1):
                    (plus_sign, plus_sheet), (minus_sign, minus_sheet) = \
                            JUMP_SIDES[label][lift]
                    plus = one_sided(lambda z: self(SurfacePoint(z, plus_sheet)),
                            s, normal, plus_sign)
                    minus = one_sided(lambda z: self(SurfacePoint(z,
                            minus_sheet)), s, normal, minus_sign)
                    worst = max(worst, abs(plus * h / minus - 1))
        return worst


def build_surface_szego(spec, periods, ctx):
    if spec.compact is not periods.compact:
        raise ValueError("weight and periods belong to different compacts")
    return SurfaceSzego(spec, periods, ctx)
