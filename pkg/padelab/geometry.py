#!python3

"""
The compact F of the branch set {a, 1/a, b, 1/b}.

For a real the compact is the unit circle joined to the segment [1/a, a] and
every arc has an exact parameterization. Otherwise the Chebotarev center b is
found by Newton's method on two trajectory conditions, and the four arcs are
traced as critical trajectories of the quadratic differential
-(z - b)(z - 1/b) dz^2 / ((z - a)(z - 1/a) z^2).

Every arc is kept twice: a fine numpy polyline (the traced trajectory, used
for distances, classification and export) and a coarse model polyline with
exact endpoints (the branch cut used by every analytic quantity and the
support of the quadrature rules).

2026-03-02 Version   padelab
  - tracing moved to numpy, coarse model polylines added
"""

# from the standard library
import csv
import logging
import math

# third party libraries
import mpmath
import numpy as np

# our code
from padelab.errors import (BoundaryError, BranchError, ConsistencyError,
        GeometryError)
from padelab.precision import quad_cheb_segment, newton_system, sqrt_cut
from padelab.quadrature import (ArcRule, BRANCH, REGULAR, circle_panels,
        integrate_segment, segment_panels)

# Definitions aka constants
F_A = 'F_a'
F_AINV = 'F_ainv'
F_ONE = 'F_1'
F_MINUS_ONE = 'F_-1'
EXPORT_ORDER = (F_AINV, F_MINUS_ONE, F_ONE, F_A)

D_ZERO = 'D0'
D_INFINITY = 'Dinf'
ON_F = 'onF'

DEFAULT_STEP = 2e-3
DEFAULT_MAXLEN = 20.0
DEFAULT_MATCHTOL = 1e-4
DEFAULT_MODEL_VERTICES = 33
LANDING_STEPS = 2.5
CIRCLE_PANELS = 32
SEGMENT_PANELS = 8
CIRCLE_POINTS = 4096
SEGMENT_POINTS = 1024
CLEARANCE = 1e-3

_BAD_STEP_ERROR_MSG = "Trajectory step is expected to be a positive real number"
_BAD_MAXLEN_ERROR_MSG = "Trajectory maxlen is expected to be a positive real number"
_BAD_MATCHTOL_ERROR_MSG = ("matchtol is expected to be at least ten times the "
                        "squared step")
_BAD_VERTICES_ERROR_MSG = ("model_vertices is expected to be an odd integer "
                        "of at least five")
_BAD_PARAMETER_ERROR_MSG = "Parameter a must satisfy 0 < |a| and |a| != 1, got %s"
_ZERO_ERROR_MSG = "The Jukovski map is not defined at z = 0"


class TrajectoryConfig:
    '''
    Step control of the trajectory tracer

    Caller passes a dict (ConfigParser.SectionProxy) initialized from the
    'geometry' section of the config file.
    '''

    def __init__(self, settings = {}):
        self.step = DEFAULT_STEP
        self.maxlen = DEFAULT_MAXLEN
        self.matchtol = DEFAULT_MATCHTOL
        self.model_vertices = DEFAULT_MODEL_VERTICES
        try:
            if 'step' in settings:
                self.step = float(settings['step'])
            if 'maxlen' in settings:
                self.maxlen = float(settings['maxlen'])
            if 'matchtol' in settings:
                self.matchtol = float(settings['matchtol'])
            if 'model_vertices' in settings:
                self.model_vertices = int(settings['model_vertices'])
        except (TypeError, ValueError):
            raise ValueError(_BAD_STEP_ERROR_MSG)

        if not 0 < self.step:
            raise ValueError(_BAD_STEP_ERROR_MSG)
        if not 0 < self.maxlen:
            raise ValueError(_BAD_MAXLEN_ERROR_MSG)
        if self.matchtol < 10 * self.step ** 2:
            raise ValueError(_BAD_MATCHTOL_ERROR_MSG)
        if 5 > self.model_vertices or 0 == self.model_vertices % 2:
            raise ValueError(_BAD_VERTICES_ERROR_MSG)


def jukovski(z):
    '''(z + 1/z) / 2'''
    if 0 == z:
        raise ValueError(_ZERO_ERROR_MSG)
    return (z + 1 / z) / 2


def normalize_parameter(a, ctx):
    '''
    Map a into the punctured unit disk; the branch set is symmetric under
    a <-> 1/a. Values within tol of the real axis are made exactly real.
    '''
    a = mpmath.mpc(a)
    if 0 == a or abs(abs(a) - 1) < ctx.tol:
        raise ValueError(_BAD_PARAMETER_ERROR_MSG % a)
    if abs(a) > 1:
        logging.warning("Parameter a = %s replaced by 1/a", mpmath.nstr(a, 15))
        a = 1 / a
    if abs(a.imag) < ctx.tol:
        a = mpmath.mpc(a.real, 0)
    return a


def is_real_parameter(a):
    return 0 == mpmath.mpc(a).imag


def perpendicular_cut(e, p, q):
    '''Unit direction of a cut from e perpendicular to [p, q], pointing away'''
    normal = 1j * (q - p) / abs(q - p)
    side = ((e - p) * mpmath.conj(q - p)).imag
    return -normal if side < 0 else normal


def _segment_distance(e, p, q):
    direction = q - p
    u = ((e - p) * mpmath.conj(direction)).real / abs(direction) ** 2
    u = min(max(u, 0), 1)
    return abs(p + u * direction - e)


def _check_clear(points, p, q, what):
    for e in points:
        if _segment_distance(e, p, q) < CLEARANCE * abs(q - p):
            raise BranchError("%s passes through %s" % (what,
                    mpmath.nstr(e, 10)))


def chebotarev_residuals(a, b, ctx):
    '''
    Real parts of the integrals of v(t) dt / t from a to b and from b to 1,
    each up to an overall sign, along straight segments with square root
    cuts perpendicular to them
    '''
    ainv = 1 / a
    binv = 1 / b
    _check_clear((0, ainv, binv), a, b, "segment [a, b]")
    _check_clear((0, a, ainv), b, mpmath.mpc(1), "segment [b, 1]")

    c1 = perpendicular_cut(binv, a, b)
    c2 = perpendicular_cut(ainv, a, b)

    # the Chebyshev substitution absorbs sqrt((t - a)(t - b))
    def along_ab(t):
        return (t - b) * sqrt_cut(t - binv, c1) / (sqrt_cut(t - ainv, c2) * t)

    first = quad_cheb_segment(along_ab, a, b, ctx).imag

    one = mpmath.mpc(1)
    d1 = perpendicular_cut(binv, b, one)
    d2 = perpendicular_cut(a, b, one)
    d3 = perpendicular_cut(ainv, b, one)
    root = mpmath.sqrt(1 - b)

    # t = b + (1 - b) u^2 removes the root at b
    def along_b1(u):
        t = b + (1 - b) * u * u
        return (2 * (1 - b) * root * u * u * sqrt_cut(t - binv, d1) /
                (sqrt_cut(t - a, d2) * sqrt_cut(t - ainv, d3) * t))

    second = integrate_segment(along_b1, 0, 1, ctx).real
    return first, second


def chebotarev_center(a, ctx):
    '''
    The Chebotarev center b of {-1, 1, j(a)} pulled back to the unit disk

    @param (mpc) a - parameter, normalized to the punctured unit disk
    @param (PrecisionContext) ctx - working precision
    '''
    a = normalize_parameter(a, ctx)
    if is_real_parameter(a):
        return mpmath.mpc(1) if a.real > 0 else mpmath.mpc(-1)

    def residuals(x):
        return list(chebotarev_residuals(a, mpmath.mpc(x[0], x[1]), ctx))

    start = a / abs(a)
    x = newton_system(residuals, [start.real, start.imag], ctx)
    b = mpmath.mpc(x[0], x[1])
    if abs(b) > 1 + math.sqrt(ctx.tol):
        raise ConsistencyError("Chebotarev center %s lies outside the unit "
                "disk" % mpmath.nstr(b, 15))
    logging.info("Chebotarev center b = %s", mpmath.nstr(b, 20))
    return b


def _direction(v_squared, z, reference):
    '''Unit vector along i z / v(z), signed to agree with reference'''
    d = 1j * z / np.sqrt(v_squared(z))
    d /= abs(d)
    if (d * np.conj(reference)).real < 0:
        d = -d
    return d


def _trace(v_squared, start, direction, targets, label, cfg):
    '''
    Classical fourth order stepping along the unit speed direction field
    from start until one of the targets is within LANDING_STEPS steps

    Returns (points, landed target index).
    '''
    h = cfg.step
    z = complex(start)
    reference = complex(direction)
    points = [z]
    length = 0.0
    landing = LANDING_STEPS * h
    while length < cfg.maxlen:
        for index, target in enumerate(targets):
            if abs(z - target) < landing and length > landing:
                points.append(complex(target))
                return np.array(points), index
        k1 = _direction(v_squared, z, reference)
        k2 = _direction(v_squared, z + h / 2 * k1, k1)
        k3 = _direction(v_squared, z + h / 2 * k2, k1)
        k4 = _direction(v_squared, z + h * k3, k1)
        step = h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        reference = step / abs(step)
        z = z + step
        points.append(z)
        length += h
    raise GeometryError(label, z)


def _v_squared(a, b):
    '''v(z)^2 as a numpy function'''
    a = complex(a)
    b = complex(b)
    return lambda z: (z - b) * (z - 1 / b) / ((z - a) * (z - 1 / a))


def _resample(points, count):
    '''count + 1 points equally spaced in arclength along a polyline'''
    lengths = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(points)))])
    targets = np.linspace(0.0, lengths[-1], count + 1)
    return (np.interp(targets, lengths, points.real) +
            1j * np.interp(targets, lengths, points.imag))


def _coarse(points, count, first, last):
    '''Model vertices on a fine polyline with exact end values'''
    sample = _resample(points, count)
    vertices = [mpmath.mpc(complex(z)) for z in sample]
    vertices[0] = mpmath.mpc(first)
    vertices[-1] = mpmath.mpc(last)
    return vertices


def _polyline_distance(vertices, z):
    p = vertices[:-1]
    d = vertices[1:] - p
    length2 = np.abs(d) ** 2
    safe = np.where(length2 > 0, length2, 1.0)
    u = np.clip(((z - p) * np.conj(d)).real / safe, 0.0, 1.0)
    return float(np.min(np.abs(p + u * d - z)))


def _winding_number(closed, z):
    turns = np.angle((np.roll(closed, -1) - z) / (closed - z))
    return int(round(float(np.sum(turns)) / (2 * math.pi)))


def _inside(polygon, z):
    '''Even-odd rule for the polygon closed by its last edge'''
    x0 = polygon.real
    y0 = polygon.imag
    x1 = np.roll(x0, -1)
    y1 = np.roll(y0, -1)
    straddle = (y0 > z.imag) != (y1 > z.imag)
    with np.errstate(divide = 'ignore', invalid = 'ignore'):
        crossing = x0 + (z.imag - y0) * (x1 - x0) / (y1 - y0)
    return bool(np.count_nonzero(straddle & (z.real < crossing)) % 2)


def _straight_root(z, p, q):
    '''sqrt((z - p)(z - q)) with its cut on [p, q], ~ z at infinity'''
    middle = (p + q) / 2
    half = (q - p) / 2
    shift = z - middle
    return shift * mpmath.sqrt(1 - (half / shift) ** 2)


class BuslaevCompact:
    '''
    The traced compact with its branch bookkeeping

    @param (mpc) a - normalized parameter
    @param (mpc) b - Chebotarev center
    @param (dict) fine - label -> numpy polyline of the traced arc
    @param (dict) model - label -> list of mpc model vertices, or None for
        the real case circle
    @param (TrajectoryConfig) cfg - tracer settings used
    '''

    def __init__(self, a, b, fine, model, cfg):
        self.a = mpmath.mpc(a)
        self.b = mpmath.mpc(b)
        self.real = is_real_parameter(a)
        self.fine = fine
        self.model = model
        self.cfg = cfg
        self.E = [self.a, 1 / self.a, self.b, 1 / self.b]
        if self.real:
            self.branch_points = [self.a, 1 / self.a]
        else:
            self.branch_points = list(self.E)
        self.labels = [label for label in EXPORT_ORDER if label in fine]
        self._rules = {}
        self._panel_data = {}
        self._lunes = []
        if not self.real:
            for label in (F_A, F_AINV):
                self._lunes.append(np.array([complex(v) for v in model[label]]))
        self._closed = self._jordan_curve()


    def __repr__(self):
        return "BuslaevCompact(a={}, b={}, arcs={})".format(
                mpmath.nstr(self.a, 10), mpmath.nstr(self.b, 10), self.labels)


    def _jordan_curve(self):
        if self.real:
            return self.fine[F_ONE if F_ONE in self.fine else F_MINUS_ONE][:-1]
        return np.concatenate([self.fine[F_ONE][:-1], self.fine[F_MINUS_ONE][:-1]])


    def orientation_area(self):
        '''Signed area enclosed by F_1 and F_-1, positive when counterclockwise'''
        x = self._closed.real
        y = self._closed.imag
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


    # -- branches of w ----------------------------------------------------

    def w(self, z, sheet = 0):
        '''
        w on the given sheet; sheet 0 is the branch with w ~ z^2 (z in the
        real case) at infinity, cut along F_a and F_ainv
        '''
        z = mpmath.mpc(z)
        if self.real:
            value = _straight_root(z, 1 / self.a, self.a)
            flips = sheet
        else:
            value = (_straight_root(z, self.a, self.b) *
                    _straight_root(z, 1 / self.a, 1 / self.b))
            point = complex(z)
            flips = sheet + sum(_inside(lune, point) for lune in self._lunes)
        return -value if flips % 2 else value


    def panels(self, label, start_kind = None, end_kind = None, singular = ()):
        '''Quadrature panels of a model arc; ends default to branch kinds'''
        if self.real and label in (F_ONE, F_MINUS_ONE):
            theta = mpmath.arg(self.b)
            return circle_panels(0, 1, theta, theta + 2 * mpmath.pi,
                    CIRCLE_PANELS, start_kind or REGULAR, end_kind or REGULAR)
        if self.real:
            first, last = self.model[label][0], self.model[label][-1]
            vertices = [first + (last - first) * mpmath.mpf(j) / SEGMENT_PANELS
                    for j in range(SEGMENT_PANELS + 1)]
            natural = (BRANCH, REGULAR) if F_AINV == label else (REGULAR, BRANCH)
        else:
            vertices = self.model[label]
            natural = (BRANCH, BRANCH)
        return segment_panels(vertices, start_kind or natural[0],
                end_kind or natural[1], singular)


    def rule(self, label, start_kind = None, end_kind = None, singular = ()):
        '''Cached ArcRule on a model arc'''
        key = (label, start_kind, end_kind, tuple(singular), mpmath.mp.prec)
        if key not in self._rules:
            self._rules[key] = ArcRule(label, self.panels(label, start_kind,
                    end_kind, singular))
        return self._rules[key]


    def vertex_index(self, label, value):
        '''Index of the model vertex of an arc equal to value (e.g. 1 on F_1)'''
        panels = self.panels(label)
        for k, panel in enumerate(panels):
            if abs(panel.start - value) < 1e-20:
                return k
        raise ValueError("%s is not a vertex of %s" % (value, label))


    def _panel_branch(self, label, panel):
        key = (label, panel.index, mpmath.mp.prec)
        if key not in self._panel_data:
            directions = [perpendicular_cut(e, panel.start, panel.end)
                    for e in self.branch_points]
            middle = panel.midpoint()
            tangent = panel.tangent(mpmath.mpf(1) / 2)
            normal = 1j * tangent / abs(tangent)
            probe = middle + normal * panel.length * mpmath.ldexp(1, -10)
            product = self._product(probe, directions)
            sign = 1 if (self.w(probe) * mpmath.conj(product)).real > 0 else -1
            self._panel_data[key] = (sign, directions)
        return self._panel_data[key]


    def _product(self, s, directions):
        value = mpmath.mpc(1)
        for e, d in zip(self.branch_points, directions):
            value *= sqrt_cut(s - e, d)
        return value


    def w_arc(self, label, s, panel):
        '''
        Trace of w at s on the positive (left) side of a model arc; this is
        w_+ on F_a and F_ainv and the value of w on the other arcs
        @param panel - the Panel of self.panels(label) carrying s
        '''
        sign, directions = self._panel_branch(label, panel)
        return sign * self._product(s, directions)


    def w_plus(self, label, s, k):
        '''w_arc with the panel given by its index'''
        return self.w_arc(label, s, self.panels(label)[k])


    # -- location ---------------------------------------------------------

    def distance(self, z):
        point = complex(z)
        return min(_polyline_distance(self.fine[label], point)
                for label in self.labels)


    def nearest_arc(self, z):
        '''(label, distance) of the arc closest to z'''
        point = complex(z)
        return min(((label, _polyline_distance(self.fine[label], point))
                for label in self.labels), key = lambda item: item[1])


    def extent(self):
        '''(min |z|, max |z|) over F'''
        sizes = np.abs(np.concatenate([self.fine[label] for label in self.labels]))
        return float(sizes.min()), float(sizes.max())


    def classify_point(self, z, tol = None):
        '''
        (D0 | Dinf | onF, distance to F)
        @param tol - distance under which z counts as on F, default matchtol
        '''
        tol = self.cfg.matchtol if tol is None else tol
        distance = self.distance(z)
        if distance < tol:
            return ON_F, distance
        if self.real:
            label = D_ZERO if abs(z) < 1 else D_INFINITY
        else:
            inside = _winding_number(self._closed, complex(z))
            label = D_ZERO if inside else D_INFINITY
        return label, distance


    def require_off(self, z, tol = None):
        '''Raise BoundaryError if z lies on F, else return its component'''
        label, distance = self.classify_point(z, tol)
        if ON_F == label:
            raise BoundaryError(z, distance)
        return label


    # -- checks -----------------------------------------------------------

    def trajectory_defect(self):
        '''
        Upper bound of |Re int v(t) dt / t| over every subarc of every
        traced arc
        '''
        v_squared = _v_squared(self.a, self.b)
        worst = 0.0
        for label in self.labels:
            points = self.fine[label]
            middle = (points[1:] + points[:-1]) / 2
            increments = np.sqrt(v_squared(middle)) * np.diff(points) / middle
            worst = max(worst, float(np.sum(np.abs(increments.real))))
        return worst


    def inversion_defect(self, samples = 400):
        '''Largest distance from 1/z to F over sampled arc points z'''
        worst = 0.0
        for label in self.labels:
            points = self.fine[label]
            stride = max(1, len(points) // samples)
            for z in points[::stride]:
                worst = max(worst, self.distance(1 / z))
        return worst


    def to_csv(self, stream):
        '''Rows arc,idx,re,im of every fine polyline node'''
        writer = csv.writer(stream)
        writer.writerow(['arc', 'idx', 're', 'im'])
        for label in self.labels:
            for idx, z in enumerate(self.fine[label]):
                writer.writerow([label, idx, repr(float(z.real)),
                        repr(float(z.imag))])


def _real_compact(a, b, cfg):
    x = float(a.real)
    fine = {}
    model = {}
    theta = float(mpmath.arg(b))
    angles = np.linspace(theta, theta + 2 * math.pi, CIRCLE_POINTS + 1)
    circle = np.exp(1j * angles)
    circle[-1] = circle[0]
    fine[F_ONE if x < 0 else F_MINUS_ONE] = circle
    model[F_ONE if x < 0 else F_MINUS_ONE] = None
    bb = float(b.real)
    fine[F_AINV] = np.linspace(1 / x, bb, SEGMENT_POINTS + 1).astype(complex)
    fine[F_A] = np.linspace(bb, x, SEGMENT_POINTS + 1).astype(complex)
    model[F_AINV] = [1 / a, b]
    model[F_A] = [b, a]
    return BuslaevCompact(a, b, fine, model, cfg)


def trace_compact(a, b, cfg, ctx):
    '''
    Trace F for the normalized parameter a and its Chebotarev center b

    @param (TrajectoryConfig) cfg - step, maxlen, matchtol, model_vertices
    @param (PrecisionContext) ctx - working precision
    '''
    a = normalize_parameter(a, ctx)
    b = mpmath.mpc(b)
    if is_real_parameter(a):
        return _real_compact(a, b, cfg)

    ainv = 1 / a
    binv = 1 / b
    v_squared = _v_squared(a, b)
    fa = complex(a)
    fb = complex(b)
    targets = (fb, 1 / fb)
    half = (cfg.model_vertices - 1) // 2

    # F_a leaves a along the local square root direction -1/K^2
    K2 = (a - b) * (a - binv) / ((a - ainv) * a ** 2)
    launch = complex(-1 / K2)
    path, landed = _trace(v_squared, fa, launch / abs(launch), targets, F_A, cfg)
    if 0 != landed:
        raise GeometryError(F_A, path[-1])
    fine_a = path[::-1]
    coarse_a = _coarse(fine_a, cfg.model_vertices - 1, b, a)

    fine = {F_A: fine_a, F_AINV: (1 / fine_a)[::-1]}
    model = {F_A: coarse_a, F_AINV: [1 / v for v in reversed(coarse_a)]}

    # F_1 and F_-1 are traced from +-1 to whichever of b, 1/b they reach
    for label, start in ((F_ONE, 1.0), (F_MINUS_ONE, -1.0)):
        launch = 1j * start / np.sqrt(v_squared(start))
        path, landed = _trace(v_squared, start, launch / abs(launch), targets,
                label, cfg)
        if 0 == landed:
            to_b = path
        else:
            to_b = 1 / path
        coarse_b = _coarse(to_b, half, mpmath.mpc(start), b)
        to_binv = 1 / to_b
        coarse_binv = [1 / v for v in coarse_b]
        if F_ONE == label:
            # 1/b -> 1 -> b
            fine[label] = np.concatenate([to_binv[::-1], to_b[1:]])
            model[label] = list(reversed(coarse_binv)) + coarse_b[1:]
        else:
            # b -> -1 -> 1/b
            fine[label] = np.concatenate([to_b[::-1], to_binv[1:]])
            model[label] = list(reversed(coarse_b)) + coarse_binv[1:]

    compact = BuslaevCompact(a, b, fine, model, cfg)
    if compact.orientation_area() < 0:
        raise ConsistencyError("F_1 and F_-1 do not form a counterclockwise "
                "curve")
    logging.info("Traced %s", compact)
    return compact


def build_compact(a, cfg, ctx):
    '''Normalize a, find b and trace F'''
    a = normalize_parameter(a, ctx)
    return trace_compact(a, chebotarev_center(a, ctx), cfg, ctx)


def g_function(z, model):
    '''
    Green type function of the problem: log|phi| in Dinf and log|z/phi| in
    D0 (real case), log|Phi| of the lift of z (surface case)
    '''
    model.compact.require_off(z)
    return model.g(z)
