#!python3

"""
Truncated germs (f0, finf) at the origin and at infinity, and the weights
that generate them as Cauchy transforms over the compact F.

2026-03-04 Version   padelab
  - log pair weight added for the surface case
  - germs serialize to JSON
"""

# from the standard library
import json
import logging

# third party libraries
import mpmath
import numpy as np

# our code
from padelab.errors import BranchError, ClassViolationError
from padelab.geometry import (F_A, F_AINV, F_MINUS_ONE, F_ONE,
        _straight_root, jukovski)
from padelab.precision import complex_pair, continue_log, parse_complex
from padelab.quadrature import BRANCH, BRANCH_LOG, LOG, REGULAR

# Definitions aka constants
MARKOV = 'markov'
JACOBI = 'jacobi'
LOG_PAIR = 'log'
FAMILIES = (MARKOV, JACOBI, LOG_PAIR)
CLASS_ONE = 'W1'
CLASS_TWO = 'W2'
SUM_CONDITION_SAMPLES = 8
SUM_CONDITION_RADIUS = 1e-3

_BAD_ORDER_ERROR_MSG = "Germ order N is expected to be a non-negative integer"
_BAD_FAMILY_ERROR_MSG = "Weight family must be one of markov, jacobi, log"
_BAD_EXPONENT_ERROR_MSG = "Endpoint exponent must exceed -1, got %s"
_BAD_LENGTH_ERROR_MSG = "Both coefficient lists must have length N + 1"
_LOG_RAY_DETAIL = ("a = %s lies on the negative real axis where the principal "
                "logarithm is discontinuous")


class PowerSeriesPair:
    '''
    Coefficients f_{k,0} of f0(z) = sum f_{k,0} z^k and f_{k,inf} of
    finf(z) = sum f_{k,inf} z^(-k), k = 0..N
    '''

    def __init__(self, coeffs0, coeffs_inf, label = '', a = None):
        if len(coeffs0) != len(coeffs_inf) or not coeffs0:
            raise ValueError(_BAD_LENGTH_ERROR_MSG)
        self.coeffs0 = [mpmath.mpc(c) for c in coeffs0]
        self.coeffs_inf = [mpmath.mpc(c) for c in coeffs_inf]
        self.label = label
        self.a = a


    @property
    def order(self):
        return len(self.coeffs0) - 1


    def __repr__(self):
        return "PowerSeriesPair({}, N={})".format(self.label, self.order)


    def eval0(self, z):
        return mpmath.polyval(self.coeffs0[::-1], z)


    def eval_inf(self, z):
        return mpmath.polyval(self.coeffs_inf[::-1], 1 / mpmath.mpc(z))


    def to_json(self):
        return json.dumps({
            'label': self.label,
            'a': None if self.a is None else complex_pair(self.a),
            'N': self.order,
            'coeffs0': [complex_pair(c) for c in self.coeffs0],
            'coeffsInf': [complex_pair(c) for c in self.coeffs_inf],
        })


    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        a = None if data.get('a') is None else parse_complex(data['a'])
        pair = cls([parse_complex(c) for c in data['coeffs0']],
                [parse_complex(c) for c in data['coeffsInf']],
                data.get('label', ''), a)
        if pair.order != int(data['N']):
            raise ValueError(_BAD_LENGTH_ERROR_MSG)
        return pair


def _check_order(N):
    if type(N) is not int or 0 > N:
        raise ValueError(_BAD_ORDER_ERROR_MSG)


def germ_log_pair(a, N):
    '''
    f0 = log((z - 1)/(z - 1/a)), finf = log((z - a)/(z - 1))
    @param a - the parameter as given (not normalized)
    '''
    _check_order(N)
    a = mpmath.mpc(a)
    if 0 == a or 1 == a:
        raise ValueError("Log pair needs a outside {0, 1}")
    if 0 == a.imag and a.real < 0:
        raise BranchError(_LOG_RAY_DETAIL % mpmath.nstr(a, 10))
    coeffs0 = [mpmath.log(a)]
    coeffs_inf = [mpmath.mpc(0)]
    power = mpmath.mpc(1)
    for k in range(1, N + 1):
        power *= a
        coeffs0.append((power - 1) / k)
        coeffs_inf.append((1 - power) / k)
    return PowerSeriesPair(coeffs0, coeffs_inf, 'log', a)


def _inverse_root_series(points, N):
    '''Taylor coefficients of prod (1 - z/e)^(-1/2) over e in points'''
    series = [mpmath.mpc(1)] + [mpmath.mpc(0)] * N
    for e in points:
        factor = [mpmath.mpc(1)]
        for k in range(1, N + 1):
            factor.append(factor[-1] * (2 * k - 1) / (2 * k * e))
        series = [mpmath.fsum(series[j] * factor[k - j] for j in range(k + 1))
                for k in range(N + 1)]
    return series


def germ_markov_pair(a, N, compact = None):
    '''
    Germs of (1/w, -1/w)

    For real a the coefficients follow the Legendre recurrence in j(a);
    otherwise compact supplies b and the sign of w(0).
    '''
    _check_order(N)
    a = mpmath.mpc(a)
    if compact is None or compact.real:
        if 0 != a.imag:
            raise ValueError("Markov germs of complex a need the traced compact")
        x = jukovski(a)
        w0 = _straight_root(mpmath.mpc(0), 1 / a, a)
        legendre = [mpmath.mpc(1), x]
        for k in range(1, N):
            legendre.append(((2 * k + 1) * x * legendre[k] - k *
                    legendre[k - 1]) / (k + 1))
        legendre = legendre[:N + 1]
        coeffs0 = [p / w0 for p in legendre]
        coeffs_inf = [mpmath.mpc(0)] + [-p for p in legendre[:N]]
        return PowerSeriesPair(coeffs0, coeffs_inf, MARKOV, a)

    if compact.distance(0) < compact.cfg.matchtol:
        raise BranchError("the origin lies on F")
    w0 = compact.w(0)
    at_zero = _inverse_root_series(compact.E, N)
    coeffs0 = [c / w0 for c in at_zero]
    # at infinity 1/w = z^(-2) prod (1 - e/z)^(-1/2) on the sheet w ~ z^2
    at_infinity = _inverse_root_series([1 / e for e in compact.E], N)
    coeffs_inf = [mpmath.mpc(0), mpmath.mpc(0)] + [-c for c in at_infinity]
    return PowerSeriesPair(coeffs0, coeffs_inf[:N + 1], MARKOV, compact.a)


def _continue_along(f, points, start):
    '''Values of a logarithmic function continued along points from start'''
    values = []
    reference = start
    for s in points:
        reference = continue_log(f(s), reference)
        values.append(reference)
    return values


class WeightSpec:
    '''
    A weight rho on F with its class data

    Families: markov (h = 2), jacobi (real case, h = 2 q^(alpha + 1/2) with
    q = -b (s - a)(s - 1/a)/s, alpha = beta), log (surface case, the jumps
    of the log pair of the parameter as given with |a| > 1).

    @param compact - the traced BuslaevCompact
    @param (str) family - one of FAMILIES
    @param (dict) settings - optional 'alpha', 'scale' and 'raw_a'
    '''

    def __init__(self, compact, family = MARKOV, settings = {}):
        if family not in FAMILIES:
            raise ValueError(_BAD_FAMILY_ERROR_MSG)
        self.compact = compact
        self.family = family
        self.scale = mpmath.mpc(settings['scale']) if 'scale' in settings \
                else mpmath.mpc(1)
        self.alpha = mpmath.mpf(settings['alpha']) if 'alpha' in settings \
                else mpmath.mpf(-0.5)
        if not self.alpha > -1:
            raise ClassViolationError(_BAD_EXPONENT_ERROR_MSG % self.alpha)
        E = compact.E
        if MARKOV == family:
            self.weight_class = CLASS_TWO
            self.exponents = {'a': -0.5, 'ainv': -0.5, 'b': -0.5, 'binv': -0.5}
        elif JACOBI == family:
            if not compact.real:
                raise ClassViolationError("jacobi weights need a real parameter")
            self.weight_class = CLASS_TWO if -0.5 == self.alpha else CLASS_ONE
            self.exponents = {'a': self.alpha, 'ainv': self.alpha}
        else:
            if compact.real:
                raise ClassViolationError("the log weight needs a complex parameter")
            raw = mpmath.mpc(settings['raw_a']) if 'raw_a' in settings \
                    else 1 / compact.a
            if abs(raw) <= 1:
                raise ClassViolationError("the log weight needs |a| > 1 as given")
            self.raw_a = raw
            self.weight_class = CLASS_ONE
            self.exponents = {'a': 0, 'ainv': 0, 'b': 0, 'binv': 0}
            self._prepare_log()
        logging.debug("Weight %s of class %s", family, self.weight_class)


    def __repr__(self):
        return "WeightSpec({}, {})".format(self.family, self.weight_class)


    # -- log pair -------------------------------------------------------

    def _L(self, s):
        return (2 * mpmath.log(s - 1) - mpmath.log(s - self.raw_a) -
                mpmath.log(s - 1 / self.raw_a))


    def _prepare_log(self):
        compact = self.compact
        raw = self.raw_a
        one = mpmath.mpc(1)
        f0 = lambda z: mpmath.log((z - 1) / (z - 1 / raw))
        finf = lambda z: mpmath.log((z - raw) / (z - 1))
        steps = [mpmath.mpf(j) / 64 for j in range(65)]
        # f0 from the origin and finf from far out, both to -1
        inner = _continue_along(f0, [-t for t in steps], mpmath.log(raw))[-1]
        far = 10 * max(abs(e) for e in compact.E)
        outer = _continue_along(finf, [-(far - (far - 1) * t) for t in steps],
                finf(mpmath.mpc(-far)))[-1]
        at_minus_one = inner - outer

        vertices = compact.model[F_MINUS_ONE]
        middle = vertices.index(min(vertices, key = lambda v: abs(v + 1)))
        left = _continue_along(self._L, vertices[middle::-1], at_minus_one)
        right = _continue_along(self._L, vertices[middle:], at_minus_one)
        self._reference = {F_MINUS_ONE: (vertices, left[::-1] + right[1:])}

        # F_1 is split at its vertex 1, each half fixed by its end branch
        vertices = compact.model[F_ONE]
        middle = vertices.index(min(vertices, key = lambda v: abs(v - one)))
        at_b = self._reference[F_MINUS_ONE][1][0] - 2j * mpmath.pi
        at_binv = self._reference[F_MINUS_ONE][1][-1] - 2j * mpmath.pi
        from_binv = _continue_along(self._L, vertices[:middle], at_binv)
        from_b = _continue_along(self._L, vertices[-1:middle:-1], at_b)
        self._reference[F_ONE] = (vertices[:middle] + vertices[-1:middle:-1],
                from_binv + from_b)
        self._one_index = middle


    def _log_rho(self, label, s):
        if label in (F_A, F_AINV):
            return mpmath.mpc(-2j * mpmath.pi)
        vertices, values = self._reference[label]
        nearest = min(range(len(vertices)), key = lambda j: abs(vertices[j] - s))
        return continue_log(self._L(s), values[nearest])


    # -- evaluation -----------------------------------------------------

    def rho(self, label, s, panel):
        '''rho(s) on arc label; panel is the quadrature Panel carrying s'''
        if LOG_PAIR == self.family:
            return self.scale * self._log_rho(label, s)
        return self.h(label, s, panel) / self._w_side(label, s, panel)


    def _w_side(self, label, s, panel):
        '''w_+ on F_a, w_- on F_ainv, w elsewhere'''
        value = self.compact.w_arc(label, s, panel)
        return -value if F_AINV == label else value


    def h(self, label, s, panel):
        if LOG_PAIR == self.family:
            return self.rho(label, s, panel) * self._w_side(label, s, panel)
        if MARKOV == self.family:
            return 2 * self.scale
        a = self.compact.a
        q = -self.compact.b * (s - a) * (s - 1 / a) / s
        return 2 * self.scale * q ** (self.alpha + mpmath.mpf(1) / 2)


    def kinds(self, label):
        '''(start kind, end kind, singular vertices) of the arc rule'''
        compact = self.compact
        if compact.real:
            if label in (F_ONE, F_MINUS_ONE):
                return REGULAR, REGULAR, ()
            end = BRANCH if -0.5 == self.alpha else BRANCH_LOG
            return (end, REGULAR, ()) if F_AINV == label else (REGULAR, end, ())
        if LOG_PAIR == self.family and F_ONE == label:
            return BRANCH, BRANCH, (self._one_index,)
        return BRANCH, BRANCH, ()


    def rule(self, label):
        start, end, singular = self.kinds(label)
        return self.compact.rule(label, start, end, singular)


    def densities(self, f = None):
        '''
        One TabulatedDensity per arc of rho(s) f(s), f defaulting to 1
        '''
        out = []
        for label in self.compact.labels:
            rule = self.rule(label)
            panels = rule.panels
            if f is None:
                density = lambda s, k, label = label, panels = panels: \
                        self.rho(label, s, panels[k])
            else:
                density = lambda s, k, label = label, panels = panels: \
                        self.rho(label, s, panels[k]) * f(s)
            out.append(rule.tabulate(density))
        return out


    def cauchy_transform(self, z, densities = None):
        '''(1/2 pi i) int_F rho(s) ds / (s - z)'''
        densities = self.densities() if densities is None else densities
        return mpmath.fsum(d.cauchy(z) for d in densities) / (2j * mpmath.pi)


    def sum_condition_defect(self, samples = SUM_CONDITION_SAMPLES):
        '''
        Largest |rho_a + rho_-1 - rho_1| near b and |rho_ainv + rho_-1 -
        rho_1| near 1/b over sampled points, each rho continued off its arc
        '''
        if CLASS_ONE != self.weight_class or self.compact.real:
            return mpmath.mpf(0)
        worst = mpmath.mpf(0)
        for center, slit in ((self.compact.b, F_A), (1 / self.compact.b, F_AINV)):
            for k in range(samples):
                z = center + SUM_CONDITION_RADIUS * mpmath.expjpi(
                        mpmath.mpf(2 * k) / samples)
                value = (self._log_rho(slit, z) + self._log_rho(F_MINUS_ONE, z) -
                        self._log_rho(F_ONE, z))
                worst = max(worst, abs(value))
        return worst


def weight_from_file(compact, path):
    '''WeightSpec from a JSON file {"family": ..., "scale": ..., "alpha": ...}'''
    with open(path) as stream:
        data = json.load(stream)
    settings = {key: data[key] for key in ('scale', 'alpha', 'raw_a') if key in data}
    if 'raw_a' in settings:
        settings['raw_a'] = parse_complex(settings['raw_a'])
    if 'scale' in settings:
        settings['scale'] = parse_complex(settings['scale'])
    return WeightSpec(compact, data.get('family', MARKOV), settings)


def germ_from_densities(densities, N, label = ''):
    '''
    Germs of the Cauchy transform (1/2 pi i) int rho(s) ds / (s - z) given
    the tabulated densities of rho on each arc
    '''
    _check_order(N)
    powers = list(range(-N - 1, N))
    moments = {m: mpmath.mpc(0) for m in powers}
    for density in densities:
        for m, value in density.moments(powers).items():
            moments[m] += value
    scale = 1 / (2j * mpmath.pi)
    coeffs0 = [scale * moments[-k - 1] for k in range(N + 1)]
    coeffs_inf = [mpmath.mpc(0)] + [-scale * moments[k - 1] for k in range(1, N + 1)]
    return PowerSeriesPair(coeffs0, coeffs_inf, label)


def germ_from_weight(spec, compact, N, ctx):
    '''
    Germs of f_rho by arcwise quadrature of the moments of rho
    '''
    if spec.compact is not compact:
        raise ValueError("weight and compact do not match")
    for e, exponent in spec.exponents.items():
        if not exponent > -1:
            raise ClassViolationError(_BAD_EXPONENT_ERROR_MSG % exponent)
    pair = germ_from_densities(spec.densities(), N, spec.family)
    ctx.check_finite(pair.coeffs0 + pair.coeffs_inf, "weight moments")
    pair.a = compact.a
    return pair
