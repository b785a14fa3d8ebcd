#!python3

"""
Jacobi inversion on the surface of w.

For each n the point z_n solves

    abel(z_n) = r_n + j_n + B m_n,
    r_n = abel(inf on sheet 0) - Lambda_H / (2 pi i) + n (omega + B tau)

and z*_n solves the same problem with r*_n = r_n + abel(inf on sheet 0) -
abel(0 on sheet 1). Candidates come from a scan of the lattice distance of
abel - r over a logarithmic polar grid on both sheets, evaluated once at low
precision; Newton's method in z (in 1/z far out) then converges on the
surface, changing sheet whenever a step crosses F_a or F_ainv.

2026-03-12 Version   padelab
  - Abel values of the scan grid computed once per surface
"""

# from the standard library
import logging
import math

# third party libraries
import mpmath

# our code
from padelab.elliptic.sheets import PathLibrary, SurfacePoint, chordal
from padelab.elliptic.theta import lattice_distance, lattice_reduce
from padelab.errors import JIPError, PadeLabError
from padelab.precision import PrecisionContext

# Definitions aka constants
DEFAULT_RESOLUTION = 48
DEFAULT_EPS = 0.05
SCAN_BITS = 64
SCAN_TOL = 1e-12
SCAN_CONVERGED = 1e-9
CANDIDATES = 4
MORE_CANDIDATES = 12
NEWTON_STEPS = 60
POLISH_STEPS = 12
POLISH_POWER = mpmath.mpf(3) / 4
SAME_POINT = 1e-6
DAMPING = 0.5

_BAD_RESOLUTION_ERROR_MSG = "Scan resolution is expected to be an integer of at least 8"
_BAD_EPS_ERROR_MSG = "eps is expected to be a positive real number"


class JIPSolution:
    '''
    z_n, z*_n with their lattice integers and the N_eps flag

    n is in N_eps unless z_n lies on sheet 1 within chordal distance eps
    of infinity.
    '''

    def __init__(self, n, point, j, m, point_star, j_star, m_star, eps,
            residual, residual_star):
        self.n = n
        self.point = point
        self.j = j
        self.m = m
        self.point_star = point_star
        self.j_star = j_star
        self.m_star = m_star
        self.eps = eps
        self.residual = residual
        self.residual_star = residual_star
        self.in_N_eps = not (1 == point.sheet and
                chordal(point.z, mpmath.inf) < eps)


    def __repr__(self):
        return "JIPSolution(n={}, z_n={}, j={}, m={}, in_N_eps={})".format(
                self.n, self.point, self.j, self.m, self.in_N_eps)


    def to_json(self):
        return {'n': self.n, 'z_n': self.point.to_list(), 'j_n': self.j,
                'm_n': self.m, 'z_n_star': self.point_star.to_list(),
                'j_n_star': self.j_star, 'm_n_star': self.m_star,
                'in_N_eps': self.in_N_eps, 'eps': self.eps,
                'residual': mpmath.nstr(self.residual, 5)}


class JIPSolver:
    '''
    Solves the inversion problems of one surface and weight

    Caller passes a dict (ConfigParser.SectionProxy) initialized from the
    'lab' section of the config file: 'eps' and 'resolution' are read.

    @param (PeriodData) periods - periods at the working precision
    @param (SurfaceSzego) szego - supplies Lambda_H
    @param (PrecisionContext) ctx - working precision
    '''

    def __init__(self, periods, szego, ctx, settings = {}):
        self.periods = periods
        self.szego = szego
        self.ctx = ctx
        self.compact = periods.compact
        self.B = periods.B
        self.resolution = DEFAULT_RESOLUTION
        self.eps = DEFAULT_EPS
        try:
            if 'resolution' in settings:
                self.resolution = int(settings['resolution'])
        except (TypeError, ValueError):
            raise ValueError(_BAD_RESOLUTION_ERROR_MSG)
        if 8 > self.resolution:
            raise ValueError(_BAD_RESOLUTION_ERROR_MSG)
        try:
            if 'eps' in settings:
                self.eps = float(settings['eps'])
        except (TypeError, ValueError):
            raise ValueError(_BAD_EPS_ERROR_MSG)
        if not 0 < self.eps:
            raise ValueError(_BAD_EPS_ERROR_MSG)

        infinity = SurfacePoint(mpmath.inf, 0)
        self.abel_infinity = periods.abel(infinity)
        self.abel_origin = periods.abel(SurfacePoint(0, 1))
        self.base = self.abel_infinity - szego.Lambda / (2j * mpmath.pi)
        self.star_shift = self.abel_infinity - self.abel_origin
        self.far = periods.paths.far
        self._scan = None
        self._low = None
        self._solutions = {}


    # -- right hand sides ---------------------------------------------------

    def rhs(self, n):
        return self.base + n * self.periods.shift


    def rhs_star(self, n):
        return self.rhs(n) + self.star_shift


    # -- low precision scan -------------------------------------------------

    def _scan_table(self):
        '''[(SurfacePoint, abel value)] over the grid and the special points'''
        if self._scan is not None:
            return self._scan
        low = PrecisionContext({'bits': SCAN_BITS, 'tol': SCAN_TOL})
        table = []
        with low:
            paths = PathLibrary(self.compact, low)
            C = +self.periods.C
            self._low = (low, paths, C)
            radius = math.log(self.far)
            count = self.resolution
            for ix in range(count):
                x = -radius + 2 * radius * ix / (count - 1)
                for iy in range(count):
                    z = mpmath.exp(mpmath.mpc(x, 2 * math.pi * iy / count))
                    try:
                        H = paths.integrals(z)[0]
                    except PadeLabError:
                        continue
                    table.append((SurfacePoint(z, 0), C * H))
                    table.append((SurfacePoint(z, 1), -C * H))
            for z in (mpmath.inf, mpmath.mpc(0)):
                H = paths.integrals(z)[0]
                table.append((SurfacePoint(z, 0), C * H))
                table.append((SurfacePoint(z, 1), -C * H))
        logging.info("Jacobi inversion scan: %d grid values", len(table))
        self._scan = table
        return table


    def _candidates(self, target, count):
        table = self._scan_table()
        scored = sorted(table, key = lambda item: lattice_distance(item[1] -
                target, self.B))
        chosen = []
        for point, value in scored:
            if any(p.sheet == point.sheet and chordal(p.z, point.z) <
                    4 * math.pi / self.resolution for p in chosen):
                continue
            chosen.append(point)
            if len(chosen) == count:
                break
        return chosen


    # -- Newton -------------------------------------------------------------

    def _near_branch(self, z, dz):
        nearest = min(abs(z - e) for e in self.compact.E)
        if abs(dz) > DAMPING * nearest:
            return dz * DAMPING * nearest / abs(dz)
        return dz


    def _step(self, point, residual, paths, C):
        '''Next SurfacePoint of Newton's method'''
        sign = -1 if point.sheet else 1
        if point.infinite or abs(point.z) > self.far:
            # t = 1/z, d abel/dt = -sign C / (t^2 w(1/t))
            if point.infinite:
                t = mpmath.mpc(0)
                slope = -sign * C
            else:
                t = 1 / point.z
                slope = -sign * C / (t * t * self.compact.w(point.z))
            t_new = t - residual / slope
            if 0 == t_new:
                return SurfacePoint(mpmath.inf, point.sheet)
            z_new = 1 / t_new
            if abs(z_new) > self.far:
                return SurfacePoint(z_new, point.sheet)
            start = 1 / t if t else z_new * 2
        else:
            start = point.z
            dz = -residual / (sign * C / self.compact.w(start))
            z_new = start + self._near_branch(start, dz)
        sheet = point.sheet
        if paths.crosses_cut(start, z_new):
            sheet = 1 - sheet
        return SurfacePoint(z_new, sheet)


    def _abel(self, point, paths, C):
        H = paths.integrals(point.z)[0]
        return -C * H if point.sheet else C * H


    def _newton(self, target, point, paths, C, tol, steps):
        residual = None
        for iteration in range(steps):
            try:
                value = self._abel(point, paths, C)
            except PadeLabError:
                return point, None
            residual = lattice_reduce(value - target, self.B)[0]
            if abs(residual) < tol:
                return point, residual
            candidate = self._step(point, residual, paths, C)
            # halve steps that land on Gamma
            for halving in range(20):
                if candidate.infinite or \
                        paths.gamma_distance(candidate.z) > 1e-10:
                    break
                middle = (point.z + candidate.z) / 2
                candidate = SurfacePoint(middle, candidate.sheet)
            point = candidate
        return point, None


    def _same(self, p, q):
        if chordal(p.z, q.z) > SAME_POINT:
            return False
        if p.sheet == q.sheet:
            return True
        return not p.infinite and min(abs(p.z - e)
                for e in self.compact.E) < SAME_POINT


    def locate(self, target, n):
        '''The unique point with abel = target mod lattice'''
        self._scan_table()
        low, paths, C = self._low
        found = []
        for count in (CANDIDATES, MORE_CANDIDATES):
            with low:
                low_target = +target
                for start in self._candidates(low_target, count):
                    point, residual = self._newton(low_target, start, paths,
                            C, SCAN_CONVERGED, NEWTON_STEPS)
                    if residual is None:
                        continue
                    if not any(self._same(point, other) for other in found):
                        found.append(point)
            if found:
                break
        if not found:
            raise JIPError(n, "no scan candidate converged")
        if 1 < len(found):
            raise JIPError(n, "distinct solutions %s" % found)
        point = found[0]
        point = SurfacePoint(point.z, point.sheet)
        point, residual = self._newton(target, point, self.periods.paths,
                self.periods.C, self.ctx.tol ** POLISH_POWER, POLISH_STEPS)
        if residual is None:
            raise JIPError(n, "polishing at full precision did not converge")
        return point, residual


    def solve(self, n):
        if n in self._solutions:
            return self._solutions[n]
        r = self.rhs(n)
        point, residual = self.locate(r, n)
        zero, j, m = lattice_reduce(self.periods.abel(point) - r, self.B)
        r_star = self.rhs_star(n)
        point_star, residual_star = self.locate(r_star, n)
        zero, j_star, m_star = lattice_reduce(self.periods.abel(point_star) -
                r_star, self.B)
        solution = JIPSolution(n, point, j, m, point_star, j_star, m_star,
                self.eps, residual, residual_star)
        logging.info("n = %d: %s", n, solution)
        self._solutions[n] = solution
        return solution


    def translation_defect(self, n):
        '''Lattice distance of abel(z_n) - abel(z_n-1) - (omega + B tau)'''
        now = self.periods.abel(self.solve(n).point)
        before = self.periods.abel(self.solve(n - 1).point)
        return lattice_distance(now - before - self.periods.shift, self.B)


def jip_solve(n, szego, periods, ctx, solver = None):
    solver = JIPSolver(periods, szego, ctx) if solver is None else solver
    return solver.solve(n)
