#!python3

"""
Panel quadrature along oriented arcs.

An arc is split into panels, each a straight segment or a circular arc
parameterized by u in [0, 1]. A panel end may carry an inverse square root
singularity (a branch point of w), removed by a quadratic substitution, and/or
a logarithmic singularity, resolved by geometric grading toward that end.
Gauss-Legendre rules are applied on the resulting sub-intervals.

Cauchy-type integrals with the kernel 1/(s - z) reuse tabulated density values
on panels far from z and re-evaluate the density on panels near z, refined
geometrically around the projection of z.
"""

# from the standard library
import logging
import math

# third party libraries
import mpmath

# our code
from padelab.errors import BranchError, QuadratureError
from padelab.precision import continue_log, gauss_legendre

# Definitions aka constants
REGULAR = 'regular'
BRANCH = 'branch'
LOG = 'log'
BRANCH_LOG = 'branch_log'

DEFAULT_DEGREE = 5
MAXIMUM_DEGREE = 8
GRADING_RATIO = 4
BISECTION_DEPTH = 40
NEAR_FACTOR = 1.0

_BAD_END_ERROR_MSG = "Panel end kind must be one of regular, branch, log, branch_log"


def _has_branch(kind):
    return kind in (BRANCH, BRANCH_LOG)


def _has_log(kind):
    return kind in (LOG, BRANCH_LOG)


class Panel:
    '''
    One piece of an arc: s(u) for u in [0, 1], either a segment or a circular
    arc, with end singularity kinds

    The quadrature variable t maps to u by u = t^2 (branch at the start),
    u = 1 - (1 - t)^2 (branch at the end) or u = (1 - cos(pi t))/2 (both).
    '''

    def __init__(self, start, end, start_kind = REGULAR, end_kind = REGULAR,
            center = None, radius = None, angles = None, index = 0):
        for kind in (start_kind, end_kind):
            if kind not in (REGULAR, BRANCH, LOG, BRANCH_LOG):
                raise ValueError(_BAD_END_ERROR_MSG)
        self.start = mpmath.mpc(start)
        self.end = mpmath.mpc(end)
        self.start_kind = start_kind
        self.end_kind = end_kind
        self.index = index
        self.circular = center is not None
        if self.circular:
            self.center = mpmath.mpc(center)
            self.radius = mpmath.mpf(radius)
            self.theta0 = mpmath.mpf(angles[0])
            self.theta1 = mpmath.mpf(angles[1])
            self.length = abs(self.theta1 - self.theta0) * self.radius
        else:
            self.length = abs(self.end - self.start)


    def point(self, u):
        if self.circular:
            theta = self.theta0 + u * (self.theta1 - self.theta0)
            return self.center + self.radius * mpmath.expj(theta)
        return self.start + u * (self.end - self.start)


    def tangent(self, u):
        '''ds/du'''
        if self.circular:
            theta = self.theta0 + u * (self.theta1 - self.theta0)
            return (1j * self.radius * (self.theta1 - self.theta0) *
                    mpmath.expj(theta))
        return self.end - self.start


    def midpoint(self):
        return self.point(mpmath.mpf(1) / 2)


    def _u_of_t(self, t):
        '''(u, du/dt)'''
        first = _has_branch(self.start_kind)
        last = _has_branch(self.end_kind)
        if first and last:
            return ((1 - mpmath.cospi(t)) / 2,
                    mpmath.pi * mpmath.sinpi(t) / 2)
        if first:
            return t * t, 2 * t
        if last:
            return 1 - (1 - t) ** 2, 2 * (1 - t)
        return t, mpmath.mpf(1)


    def _t_of_u(self, u):
        first = _has_branch(self.start_kind)
        last = _has_branch(self.end_kind)
        if first and last:
            return mpmath.acos(1 - 2 * u) / mpmath.pi
        if first:
            return mpmath.sqrt(u)
        if last:
            return 1 - mpmath.sqrt(1 - u)
        return u


    def project(self, z):
        '''(t, distance) of the panel point closest to z'''
        if self.circular:
            theta = mpmath.arg((z - self.center) * mpmath.expj(-self.theta0))
            span = self.theta1 - self.theta0
            # compare both representatives of the angle
            candidates = [theta / span, (theta + 2 * mpmath.pi) / span,
                    (theta - 2 * mpmath.pi) / span]
            u = min((min(max(c, 0), 1) for c in candidates),
                    key = lambda c: abs(self.point(c) - z))
        else:
            direction = self.end - self.start
            u = ((z - self.start) * mpmath.conj(direction)).real / abs(direction) ** 2
            u = min(max(u, mpmath.mpf(0)), mpmath.mpf(1))
        return self._t_of_u(u), abs(self.point(u) - z)


    def breakpoints(self, levels):
        '''Sub-interval ends in t, graded toward logarithmic ends'''
        points = [mpmath.mpf(0), mpmath.mpf(1)]
        ratio = mpmath.mpf(GRADING_RATIO)
        if _has_log(self.start_kind):
            points += [ratio ** (-k) for k in range(1, levels + 1)]
        if _has_log(self.end_kind):
            points += [1 - ratio ** (-k) for k in range(1, levels + 1)]
        return sorted(set(points))


    def nodes(self, degree, levels, extra = ()):
        '''List of (s, ds) pairs integrating along the panel'''
        points = sorted(set(self.breakpoints(levels)) | set(extra))
        rule = gauss_legendre(degree)
        out = []
        for left, right in zip(points[:-1], points[1:]):
            half = (right - left) / 2
            middle = (right + left) / 2
            for x, weight in rule:
                t = middle + half * x
                u, du = self._u_of_t(t)
                out.append((self.point(u), weight * half * du * self.tangent(u)))
        return out


def refinement_breakpoints(t_star, width):
    '''Breakpoints in [0, 1] graded geometrically around t_star'''
    points = []
    ratio = mpmath.mpf(GRADING_RATIO)
    step = width
    while step < 2:
        for candidate in (t_star - step, t_star + step):
            if 0 < candidate < 1:
                points.append(candidate)
        step *= ratio
    if 0 < t_star < 1:
        points.append(t_star)
    return points


class ArcRule:
    '''
    Quadrature nodes along an oriented arc made of panels

    @param (str) label - arc label, for example 'F_a'
    @param (list) panels - Panel objects joined end to start
    @param (int) degree - Gauss-Legendre degree per sub-interval
    @param (int) levels - grading levels toward logarithmic ends
    '''

    def __init__(self, label, panels, degree = DEFAULT_DEGREE, levels = None):
        self.label = label
        self.panels = panels
        self.degree = degree
        if levels is None:
            levels = max(8, mpmath.mp.prec // 4)
        self.levels = levels
        self.nodes = []
        for panel in panels:
            for s, ds in panel.nodes(degree, levels):
                self.nodes.append((s, ds, panel.index))
        logging.debug("Arc rule %s: %d panels, %d nodes", label, len(panels),
                len(self.nodes))


    @property
    def start(self):
        return self.panels[0].start


    @property
    def end(self):
        return self.panels[-1].end


    def integrate(self, f):
        '''Integral of f(s, panel_index) ds along the arc'''
        return mpmath.fsum(f(s, k) * ds for s, ds, k in self.nodes)


    def tabulate(self, f):
        return TabulatedDensity(self, f)


    def distance(self, z):
        return min(panel.project(z)[1] for panel in self.panels)


class TabulatedDensity:
    '''
    Density values f(s, panel) cached at the nodes of an ArcRule
    '''

    def __init__(self, rule, f):
        self.rule = rule
        self.f = f
        self.values = [f(s, k) * ds for s, ds, k in rule.nodes]


    def integral(self, kernel = None):
        '''Integral of f(s) kernel(s) ds; kernel must be smooth along the arc'''
        if kernel is None:
            return mpmath.fsum(self.values)
        return mpmath.fsum(v * kernel(node[0])
                for v, node in zip(self.values, self.rule.nodes))


    def moments(self, powers):
        '''Integrals of f(s) s^m ds for each m in powers'''
        out = {m: mpmath.mpc(0) for m in powers}
        for v, (s, ds, k) in zip(self.values, self.rule.nodes):
            for m in powers:
                out[m] += v * s ** m
        return out


    def cauchy(self, z):
        '''
        Integral of f(s) ds / (s - z) along the arc

        Panels closer to z than NEAR_FACTOR times their length are integrated
        afresh on sub-intervals graded around the projection of z.
        '''
        near = {}
        for panel in self.rule.panels:
            t_star, distance = panel.project(z)
            if distance < NEAR_FACTOR * panel.length:
                near[panel.index] = (panel, t_star, distance)
        total = mpmath.mpc(0)
        for v, (s, ds, k) in zip(self.values, self.rule.nodes):
            if k not in near:
                total += v / (s - z)
        for panel, t_star, distance in near.values():
            if not distance:
                raise QuadratureError(0, mpmath.inf, mpmath.inf)
            u, du = panel._u_of_t(t_star)
            speed = abs(panel.tangent(u) * du)
            width = mpmath.sqrt(distance / panel.length)
            if speed:
                width = min(width, distance / speed)
            extra = refinement_breakpoints(t_star, width)
            for s, ds in panel.nodes(self.rule.degree, self.rule.levels, extra):
                total += self.f(s, panel.index) * ds / (s - z)
        return total


def segment_panels(vertices, start_kind = REGULAR, end_kind = REGULAR,
        singular = (), first_index = 0):
    '''
    Panels of a polyline; interior vertices listed in `singular` (by index)
    get logarithmic ends on both adjacent panels
    '''
    panels = []
    count = len(vertices) - 1
    for j in range(count):
        left = start_kind if 0 == j else (LOG if j in singular else REGULAR)
        right = end_kind if count - 1 == j else (LOG if j + 1 in singular
                else REGULAR)
        panels.append(Panel(vertices[j], vertices[j + 1], left, right,
                index = first_index + j))
    return panels


def circle_panels(center, radius, theta0, theta1, count, start_kind = REGULAR,
        end_kind = REGULAR, first_index = 0):
    '''Panels of the circular arc from angle theta0 to theta1'''
    panels = []
    center = mpmath.mpc(center)
    step = (mpmath.mpf(theta1) - theta0) / count
    for j in range(count):
        a0 = theta0 + j * step
        a1 = theta0 + (j + 1) * step
        panels.append(Panel(center + radius * mpmath.expj(a0),
                center + radius * mpmath.expj(a1),
                start_kind if 0 == j else REGULAR,
                end_kind if count - 1 == j else REGULAR,
                center = center, radius = radius, angles = (a0, a1),
                index = first_index + j))
    return panels


def integrate_segment(f, p, q, ctx, start_kind = REGULAR, end_kind = REGULAR,
        tol = None):
    '''
    Integral of f(s) ds along the segment from p to q, raising the
    Gauss-Legendre degree until two successive rules agree to tol
    '''
    tol = ctx.tol if tol is None else tol
    panel = Panel(p, q, start_kind, end_kind)
    levels = max(8, int(math.ceil(ctx.bits / 4)))
    previous = None
    for degree in range(3, MAXIMUM_DEGREE + 1):
        estimate = mpmath.fsum(f(s) * ds for s, ds in panel.nodes(degree,
                levels))
        ctx.check_finite(estimate, "segment quadrature")
        if previous is not None and abs(estimate - previous) < tol * max(1,
                abs(estimate)):
            return estimate
        last, previous = previous, estimate
    raise QuadratureError(3 * 2 ** (MAXIMUM_DEGREE - 1), last, previous)


def integrate_adaptive(f, p, q, ctx, start_kind = REGULAR, end_kind = REGULAR,
        tol = None, depth = BISECTION_DEPTH):
    '''
    integrate_segment with bisection of the segment wherever the rule does
    not settle, for integrands nearly singular close to the segment
    '''
    try:
        return integrate_segment(f, p, q, ctx, start_kind, end_kind, tol)
    except QuadratureError:
        if 0 == depth:
            raise
    middle = (p + q) / 2
    return (integrate_adaptive(f, p, middle, ctx, start_kind, REGULAR, tol,
            depth - 1) + integrate_adaptive(f, middle, q, ctx, REGULAR,
            end_kind, tol, depth - 1))


class ContinuousLog:
    '''
    A continuous logarithm of g(label, s, k) along the nodes of arc rules

    The chain of nodes runs through the given (label, ArcRule) pairs in
    order and is continued both ways from the node closest to anchor.
    References are kept per (label, panel) so that a value anywhere on a
    panel is continued from the nearest tabulated node.
    '''

    def __init__(self, g, rules, anchor = None):
        self.g = g
        chain = []
        for label, rule in rules:
            for s, ds, k in rule.nodes:
                chain.append((label, k, s))
        start = 0
        if anchor is not None:
            start = min(range(len(chain)), key = lambda j: abs(chain[j][2] -
                    anchor))
        values = [None] * len(chain)
        label, k, s = chain[start]
        values[start] = mpmath.log(g(label, s, k))
        for order in (range(start + 1, len(chain)), range(start - 1, -1, -1)):
            reference = values[start]
            for j in order:
                label, k, s = chain[j]
                value = continue_log(mpmath.log(g(label, s, k)), reference)
                if abs((value - reference).imag) > mpmath.pi / 2:
                    raise BranchError("log of %s jumps near %s" % (label,
                            mpmath.nstr(s, 10)))
                values[j] = reference = value
        self.references = {}
        for (label, k, s), value in zip(chain, values):
            self.references.setdefault((label, k), []).append((s, value))
        self.first = values[0]
        self.last = values[-1]


    def __call__(self, label, s, k):
        nodes = self.references[(label, k)]
        reference = min(nodes, key = lambda pair: abs(pair[0] - s))[1]
        return continue_log(mpmath.log(self.g(label, s, k)), reference)
