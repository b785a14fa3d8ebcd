#!python3

"""
Points of the two sheeted surface of w and the fixed library of integration
paths used by every surface integral.

Sheet 0 is the plane cut along F_a and F_ainv with the branch w ~ z^2 at
infinity, sheet 1 carries -w. The cycles over F_1 and F_ainv are removed,
so each sheet is represented by the plane minus the arc

    Gamma = F_ainv + F_1 + F_a        (1/a -> 1/b -> 1 -> b -> a)

which is simply connected on the sphere. Integrals of the holomorphic and
the Nuttall differentials start at the branch point a, follow a polygonal
halo around Gamma and leave it along one straight segment. Sheet 1 values
follow from the involution.

2026-03-09 Version   padelab
  - halo path library, far field in the coordinate 1/z
"""

# from the standard library
import logging
import math

# third party libraries
import mpmath
import numpy as np

# our code
from padelab.errors import BoundaryError, ConsistencyError, PathError
from padelab.geometry import F_A, F_AINV, F_MINUS_ONE, F_ONE, _polyline_distance
from padelab.quadrature import BRANCH, REGULAR, integrate_adaptive

# Definitions aka constants
HALO_FRACTION = 0.3
CAP_POINTS = 7
FAR_FACTOR = 10
EDGE = 1e-12

_BAD_SHEET_ERROR_MSG = "Sheet is expected to be 0 or 1, got %s"
_BAD_SIDE_ERROR_MSG = "Side is expected to be -1, 0 or 1, got %s"
_ORIGIN_ERROR_MSG = "w(0) = %s on sheet 0, expected 1"


class SurfacePoint:
    '''
    z on the given sheet, or its one sided trace on an arc of F

    @param z - finite complex number or mpmath.inf
    @param (int) sheet - 0 or 1
    @param (int) side - 0 off F, +1 (-1) for the left (right) trace
    '''

    def __init__(self, z, sheet = 0, side = 0):
        if sheet not in (0, 1):
            raise ValueError(_BAD_SHEET_ERROR_MSG % sheet)
        if side not in (-1, 0, 1):
            raise ValueError(_BAD_SIDE_ERROR_MSG % side)
        self.z = mpmath.inf if z == mpmath.inf else mpmath.mpc(z)
        self.sheet = sheet
        self.side = side


    def __repr__(self):
        where = 'inf' if self.infinite else mpmath.nstr(self.z, 12)
        return "SurfacePoint({}, sheet={}{})".format(where, self.sheet,
                ", side={}".format(self.side) if self.side else '')


    @property
    def infinite(self):
        return self.z == mpmath.inf


    def star(self):
        '''Image under the sheet involution'''
        return SurfacePoint(self.z, 1 - self.sheet, self.side)


    def moved(self, z):
        return SurfacePoint(z, self.sheet)


    def chordal_distance(self, other):
        '''Chordal distance of the projections; None across sheets'''
        if other.sheet != self.sheet:
            return None
        return chordal(self.z, other.z)


    def to_list(self):
        if self.infinite:
            return ['inf', '0', self.sheet]
        return [mpmath.nstr(self.z.real, 20), mpmath.nstr(self.z.imag, 20),
                self.sheet]


def chordal(z, u):
    '''2|z - u| / sqrt((1 + |z|^2)(1 + |u|^2)), with infinity allowed'''
    if z == mpmath.inf and u == mpmath.inf:
        return mpmath.mpf(0)
    if z == mpmath.inf:
        z, u = u, z
    if u == mpmath.inf:
        return 2 / mpmath.sqrt(1 + abs(z) ** 2)
    return 2 * abs(z - u) / mpmath.sqrt((1 + abs(z) ** 2) * (1 + abs(u) ** 2))


def gamma_vertices(compact):
    '''Model vertices of Gamma from 1/a to a'''
    model = compact.model
    return list(model[F_AINV]) + list(model[F_ONE][1:]) + list(model[F_A][1:])


def _cross(u, v):
    return (np.conj(u) * v).imag


def segment_crosses(p, q, polyline):
    '''True when the segment [p, q] meets the numpy polyline'''
    p = complex(p)
    q = complex(q)
    start = polyline[:-1]
    end = polyline[1:]
    d1 = _cross(q - p, start - p)
    d2 = _cross(q - p, end - p)
    d3 = _cross(end - start, p - start)
    d4 = _cross(end - start, q - start)
    return bool(np.any((d1 * d2 <= 0) & (d3 * d4 <= 0)))


def crossings(p, q, polyline):
    '''Number of edges of the polyline crossed by [p, q]'''
    p = complex(p)
    q = complex(q)
    start = polyline[:-1]
    end = polyline[1:]
    d1 = _cross(q - p, start - p)
    d2 = _cross(q - p, end - p)
    d3 = _cross(end - start, p - start)
    d4 = _cross(end - start, q - start)
    return int(np.count_nonzero((d1 * d2 < 0) & (d3 * d4 < 0)))


def arc_normal(compact, z):
    '''(label, unit left normal) of the model arc nearest to z'''
    point = complex(z)
    best = None
    for label in (F_AINV, F_ONE, F_A, F_MINUS_ONE):
        vertices = np.array([complex(v) for v in compact.model[label]])
        p = vertices[:-1]
        d = vertices[1:] - p
        u = np.clip(((point - p) * np.conj(d)).real / np.abs(d) ** 2, 0.0, 1.0)
        distances = np.abs(p + u * d - point)
        j = int(np.argmin(distances))
        if best is None or distances[j] < best[0]:
            best = (distances[j], label, d[j] / abs(d[j]))
    distance, label, tangent = best
    return label, 1j * mpmath.mpc(tangent)


class PathLibrary:
    '''
    Integrals from a of ds/w and (1 - v(s)) ds/(2s), v = (s - b)(s - 1/b)/w,
    to points of sheet 0

    The halo is a closed polygon at a fixed small distance around Gamma with
    round caps at 1/a and a. Cumulative integrals are tabulated at its
    vertices once; a point is reached from the nearest vertex that sees it
    without crossing Gamma. Points beyond the far radius are reached from
    infinity along the ray, integrating in t = 1/s.

    @param compact - a traced BuslaevCompact of a non-real parameter
    @param (PrecisionContext) ctx - working precision of every tabulated value
    '''

    def __init__(self, compact, ctx):
        self.compact = compact
        self.ctx = ctx
        self.a = compact.a
        self.b = compact.b
        self.vertices = gamma_vertices(compact)
        self.gamma = np.array([complex(v) for v in self.vertices])
        self.offset = HALO_FRACTION * float(np.min(np.abs(np.diff(self.gamma))))
        self.far = FAR_FACTOR * max(float(np.max(np.abs(self.gamma))),
                max(float(abs(e)) for e in compact.E))

        origin = compact.w(0)
        if abs(origin - 1) > mpmath.sqrt(ctx.tol):
            raise ConsistencyError(_ORIGIN_ERROR_MSG % mpmath.nstr(origin, 10))

        self.halo = self._halo()
        self.values = self._walk()
        self._cache = {}
        self.infinity = self._at_infinity()
        logging.debug("Path library: %d halo vertices, offset %s, far radius %s",
                len(self.halo), self.offset, self.far)


    # -- integrands -------------------------------------------------------

    def _holomorphic(self, s):
        return 1 / self.compact.w(s)


    def _nuttall(self, s):
        v = (s - self.b) * (s - 1 / self.b) / self.compact.w(s)
        return (1 - v) / (2 * s)


    def _holomorphic_far(self, t):
        return 1 / (t * t * self.compact.w(1 / t))


    def _nuttall_far(self, t):
        s = 1 / t
        v = (s - self.b) * (s - 1 / self.b) / self.compact.w(s)
        return (1 - v) / (2 * t)


    def _segment(self, p, q, start_kind = REGULAR):
        return (integrate_adaptive(self._holomorphic, p, q, self.ctx,
                start_kind),
                integrate_adaptive(self._nuttall, p, q, self.ctx, start_kind))


    # -- halo ---------------------------------------------------------------

    def _halo(self):
        g = self.gamma
        d = self.offset
        tangents = np.diff(g)
        tangents = tangents / np.abs(tangents)
        normals = 1j * tangents
        left = []
        right = []
        for j in range(1, len(g) - 1):
            n = normals[j - 1] + normals[j]
            n = n / abs(n)
            stretch = d / max(float((n * np.conj(normals[j])).real), 0.5)
            left.append(g[j] + stretch * n)
            right.append(g[j] - stretch * n)

        def cap(center, t, start, stop):
            return [center + d * t * np.exp(1j * phi)
                    for phi in np.linspace(start, stop, CAP_POINTS)]

        t0 = tangents[0]
        t1 = tangents[-1]
        loop = (cap(g[-1], t1, 0.0, -math.pi / 2) + right[::-1] +
                cap(g[0], t0, -math.pi / 2, -3 * math.pi / 2) + left +
                cap(g[-1], t1, math.pi / 2, 0.0)[:-1])
        return [mpmath.mpc(p) for p in loop]


    def _walk(self):
        values = [self._segment(self.a, self.halo[0], BRANCH)]
        for p, q in zip(self.halo[:-1], self.halo[1:]):
            H, N = self._segment(p, q)
            values.append((values[-1][0] + H, values[-1][1] + N))
        closing = self._segment(self.halo[-1], self.halo[0])
        defect = max(abs(values[-1][0] + closing[0] - values[0][0]),
                abs(values[-1][1] + closing[1] - values[0][1]))
        logging.debug("Halo closing defect %s", mpmath.nstr(defect, 5))
        self.closing_defect = defect
        return values


    def _at_infinity(self):
        P = mpmath.mpc(self.far)
        H, N = self._near(P)
        t = 1 / P
        return (H + integrate_adaptive(self._holomorphic_far, 0, t, self.ctx),
                N + integrate_adaptive(self._nuttall_far, 0, t, self.ctx))


    # -- evaluation ---------------------------------------------------------

    def gamma_distance(self, z):
        return _polyline_distance(self.gamma, complex(z))


    def _near(self, z):
        if abs(z - self.a) < EDGE:
            return mpmath.mpc(0), mpmath.mpc(0)
        distance = self.gamma_distance(z)
        if distance < EDGE:
            raise PathError(z)
        point = complex(z)
        order = sorted(range(len(self.halo)),
                key = lambda j: abs(complex(self.halo[j]) - point))
        for j in order:
            if segment_crosses(self.halo[j], z, self.gamma):
                continue
            H, N = self._segment(self.halo[j], z)
            return self.values[j][0] + H, self.values[j][1] + N
        raise PathError(z)


    def _far_value(self, z):
        t = 1 / z
        H, N = self.infinity
        return (H - integrate_adaptive(self._holomorphic_far, 0, t, self.ctx),
                N - integrate_adaptive(self._nuttall_far, 0, t, self.ctx))


    def integrals(self, z):
        '''
        (int ds/w, int (1 - v) ds/(2s)) from a to z on sheet 0
        @param z - a point off Gamma or mpmath.inf
        '''
        if z == mpmath.inf:
            return self.infinity
        z = mpmath.mpc(z)
        key = (z.real, z.imag)
        if key not in self._cache:
            if abs(z) >= self.far:
                value = self._far_value(z)
            else:
                value = self._near(z)
            self._cache[key] = self.ctx.check_finite(value, "path integral")
        return self._cache[key]


    def crosses_cut(self, p, q):
        '''Parity of crossings of the cuts F_a and F_ainv by [p, q]'''
        count = 0
        for label in (F_A, F_AINV):
            polyline = np.array([complex(v) for v in self.compact.model[label]])
            count += crossings(p, q, polyline)
        return count % 2


def require_off_gamma(library, z):
    '''Raise BoundaryError for points of Gamma'''
    distance = library.gamma_distance(z)
    if distance < EDGE:
        raise BoundaryError(z, distance)


# (normal sign, sheet) of the + and - traces at the lift to sheet k of a
# point of each arc, the normal being the left normal of the model arc
JUMP_SIDES = {
    F_ONE: {0: ((1, 0), (-1, 0)), 1: ((-1, 1), (1, 1))},
    F_MINUS_ONE: {0: ((1, 0), (-1, 0)), 1: ((-1, 1), (1, 1))},
    F_A: {0: ((1, 0), (-1, 1)), 1: ((-1, 0), (1, 1))},
    F_AINV: {0: ((-1, 1), (1, 0)), 1: ((1, 1), (-1, 0))},
}


def sample_arc_points(rule, samples):
    '''(s, panel, left unit normal) at panel midpoints spread along an arc'''
    panels = rule.panels
    stride = max(1, len(panels) // samples)
    out = []
    for panel in panels[::stride][:samples]:
        u = mpmath.mpf(1) / 2
        tangent = panel.tangent(u)
        out.append((panel.point(u), panel, 1j * tangent / abs(tangent)))
    return out
