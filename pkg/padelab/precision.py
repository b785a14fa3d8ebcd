#!python3

# from the standard library
import logging

# third party libraries
import mpmath
from mpmath.calculus.quadrature import GaussLegendre
import numpy as np

# our code
from padelab.errors import (QuadratureError, NewtonError,
        SingularJacobianError, DegenerateSystemError, PrecisionError)

# Definitions aka constants
DEFAULT_BITS = 512
MINIMUM_BITS = 53
FIRST_TRAPEZOID_NODES = 64
MAXIMUM_TRAPEZOID_NODES = 2 ** 20
FIRST_CHEBYSHEV_NODES = 16
NEWTON_MAXIMUM_ITERATIONS = 100
ABERTH_MAXIMUM_SWEEPS = 400
DECIMAL_DIGITS = 40
ONE_SIDED_OFFSETS = [mpmath.mpf(10) ** -k for k in range(4, 9)]

_BAD_BITS_ERROR_MSG = ("Precision is expected to be an integer number of "
                        "bits no smaller than 53")
_BAD_TOL_ERROR_MSG = "Tolerance is expected to be a positive real number"
_BAD_DEGREE_ERROR_MSG = "Root finding needs a polynomial of degree one or more"
_BAD_COMPLEX_ERROR_MSG = ("Complex values are expected as RE or RE,IM, got "
                        "'%s'")

_gauss_legendre_cache = {}


class PrecisionContext:
    '''
    Working precision shared by every computation of one run

    Caller passes a dict (ConfigParser.SectionProxy) initialized from the
    'precision' section of the config file. Entering the context with the
    `with` statement switches mpmath to the configured number of bits and
    restores the previous precision on exit.
    '''

    def __init__(self, settings = {}):
        bits = DEFAULT_BITS
        if 'bits' in settings:
            try:
                bits = int(settings['bits'])
            except (TypeError, ValueError):
                raise ValueError(_BAD_BITS_ERROR_MSG)
        if MINIMUM_BITS > bits:
            raise ValueError(_BAD_BITS_ERROR_MSG)
        self.bits = bits

        with mpmath.workprec(bits):
            if 'tol' in settings and settings['tol'] not in (None, ''):
                tol = mpmath.mpf(settings['tol'])
                if not tol > 0:
                    raise ValueError(_BAD_TOL_ERROR_MSG)
            else:
                tol = mpmath.ldexp(1, -(bits // 2))
        self.tol = tol
        self._saved = []


    def __enter__(self):
        self._saved.append(mpmath.mp.prec)
        mpmath.mp.prec = self.bits
        return self


    def __exit__(self, exc_type, exc_value, traceback):
        mpmath.mp.prec = self._saved.pop()
        return False


    def __repr__(self):
        return "PrecisionContext(bits={}, tol={})".format(self.bits,
                mpmath.nstr(self.tol, 5))


    @property
    def fd_step(self):
        '''Step used for central finite differences, 2^(-bits/3)'''
        return mpmath.ldexp(1, -(self.bits // 3))


    def check_finite(self, value, where):
        '''
        Raise PrecisionError for NaN or infinite values
        @param value - an mpf, mpc or a sequence of them
        @param (str) where - names the computation in the error message
        '''
        if isinstance(value, (list, tuple)):
            for item in value:
                self.check_finite(item, where)
            return value
        if not mpmath.isfinite(value):
            raise PrecisionError(where)
        return value


    def settings(self):
        '''Plain dict that rebuilds an equivalent context in a worker'''
        return {'bits': self.bits, 'tol': mpmath.nstr(self.tol, 30)}


def parse_complex(text):
    '''
    Read "RE" or "RE,IM" into an mpc at the current precision
    '''
    if isinstance(text, (list, tuple)):
        parts = [str(part) for part in text]
    else:
        parts = str(text).replace(' ', '').split(',')
    try:
        if 1 == len(parts):
            return mpmath.mpc(mpmath.mpf(parts[0]), 0)
        if 2 == len(parts):
            return mpmath.mpc(mpmath.mpf(parts[0]), mpmath.mpf(parts[1]))
    except (TypeError, ValueError):
        pass
    raise ValueError(_BAD_COMPLEX_ERROR_MSG % text)


def to_decimal(x):
    '''Real scalar as a 40 significant digit decimal string'''
    return mpmath.nstr(mpmath.mpf(x), DECIMAL_DIGITS)


def complex_pair(z):
    '''[re, im] decimal strings of a complex scalar'''
    z = mpmath.mpc(z)
    return [to_decimal(z.real), to_decimal(z.imag)]


def continue_log(value, reference):
    '''value + 2 pi i k closest to reference'''
    k = mpmath.nint((reference - value).imag / (2 * mpmath.pi))
    return value + 2j * mpmath.pi * k


def sqrt_cut(x, direction):
    '''
    Square root of x whose branch cut is the ray x = r*direction, r >= 0

    @param (mpc) x - the argument
    @param (mpc) direction - unit vector of the cut ray
    '''
    return mpmath.sqrt(-x / direction) * mpmath.sqrt(-direction)


def gauss_legendre(degree):
    '''
    Gauss-Legendre nodes and weights on [-1, 1] from mpmath's rule

    The rule of a given degree has 3*2^(degree-1) nodes. Results are cached
    per (degree, precision).
    '''
    key = (degree, mpmath.mp.prec)
    if key not in _gauss_legendre_cache:
        rule = GaussLegendre(mpmath.mp)
        _gauss_legendre_cache[key] = rule.calc_nodes(degree, mpmath.mp.prec)
    return _gauss_legendre_cache[key]


def richardson_limit(steps, values):
    '''
    Polynomial extrapolation of values(step) to step = 0 (Neville)
    @param (list) steps - distinct nonzero step sizes
    @param (list) values - function values at those steps
    '''
    table = list(values)
    count = len(steps)
    for level in range(1, count):
        for i in range(count - level):
            h0 = steps[i]
            h1 = steps[i + level]
            table[i] = (h1 * table[i] - h0 * table[i + 1]) / (h1 - h0)
    return table[0]


def one_sided(f, s, normal, side, offsets = ONE_SIDED_OFFSETS):
    '''Limit of f(s + side t normal) as t -> 0+, extrapolated from offsets'''
    values = [f(s + side * t * normal) for t in offsets]
    return richardson_limit(offsets, values)


def quad_trapezoid_periodic(f, center, radius, ctx, tol = None,
        nmax = MAXIMUM_TRAPEZOID_NODES):
    '''
    (1/2 pi i) times the contour integral of f over the circle
    |s - center| = radius, counterclockwise.

    The N node trapezoid rule is refined by doubling N from 64, reusing the
    previous nodes, until successive estimates agree to tol.
    '''
    tol = ctx.tol if tol is None else tol
    center = mpmath.mpc(center)
    radius = mpmath.mpf(radius)

    def term(k, N):
        s = center + radius * mpmath.expjpi(mpmath.mpf(2 * k) / N)
        return f(s) * (s - center)

    N = FIRST_TRAPEZOID_NODES
    total = mpmath.fsum(term(k, N) for k in range(N))
    estimate = total / N
    previous = estimate
    while True:
        if N >= nmax:
            raise QuadratureError(N, previous, estimate)
        N *= 2
        total += mpmath.fsum(term(k, N) for k in range(1, N, 2))
        previous = estimate
        estimate = total / N
        ctx.check_finite(estimate, "periodic trapezoid")
        if abs(estimate - previous) < tol * max(1, abs(estimate)):
            logging.debug("Periodic trapezoid converged with %d nodes", N)
            return estimate


def quad_cheb_segment(g, p, q, ctx, tol = None, nmax = MAXIMUM_TRAPEZOID_NODES):
    '''
    Integral over theta in [0, pi] of g(s(theta)) with
    s(theta) = (p+q)/2 + ((q-p)/2) cos(theta).

    This equals the integral of g(s) ds / R(s) along the segment from p to q
    where R is the branch of sqrt((s-p)(q-s)) equal to (q-p)/2 at the
    midpoint. The even periodic extension makes the endpoint trapezoid rule
    spectrally accurate for smooth g.
    '''
    tol = ctx.tol if tol is None else tol
    p = mpmath.mpc(p)
    q = mpmath.mpc(q)
    middle = (p + q) / 2
    half = (q - p) / 2

    def node(k, N):
        return g(middle + half * mpmath.cospi(mpmath.mpf(k) / N))

    N = FIRST_CHEBYSHEV_NODES
    total = (node(0, N) + node(N, N)) / 2 + mpmath.fsum(node(k, N)
            for k in range(1, N))
    estimate = total * mpmath.pi / N
    previous = estimate
    while True:
        if N >= nmax:
            raise QuadratureError(N, previous, estimate)
        N *= 2
        total += mpmath.fsum(node(k, N) for k in range(1, N, 2))
        previous = estimate
        estimate = total * mpmath.pi / N
        ctx.check_finite(estimate, "Chebyshev segment quadrature")
        if abs(estimate - previous) < tol * max(1, abs(estimate)):
            return estimate


def _max_norm(vector):
    return max(abs(x) for x in vector) if vector else mpmath.mpf(0)


def newton_system(F, x0, ctx, tol = None, maxiter = NEWTON_MAXIMUM_ITERATIONS):
    '''
    Solve F(x) = 0 for a real vector x

    The Jacobian is formed by central differences with step 2^(-bits/3).
    A step is halved while it fails to decrease the residual.
    @param F - callable taking and returning lists of mpf
    @param x0 - starting vector
    '''
    tol = ctx.tol if tol is None else tol
    x = [mpmath.mpf(v) for v in x0]
    fx = [mpmath.mpf(v) for v in F(x)]
    residual = _max_norm(fx)
    k = len(x)
    for iteration in range(maxiter):
        if residual < tol:
            return x
        h = ctx.fd_step
        J = mpmath.matrix(k, k)
        for j in range(k):
            step = h * max(1, abs(x[j]))
            forward = list(x)
            backward = list(x)
            forward[j] += step
            backward[j] -= step
            f_forward = F(forward)
            f_backward = F(backward)
            for i in range(k):
                J[i, j] = (f_forward[i] - f_backward[i]) / (2 * step)
        try:
            dx = mpmath.lu_solve(J, mpmath.matrix([-v for v in fx]))
        except ZeroDivisionError:
            raise SingularJacobianError(x)
        dx = [dx[i] for i in range(k)]
        ctx.check_finite(dx, "Newton step")

        damping = mpmath.mpf(1)
        while True:
            trial = [x[i] + damping * dx[i] for i in range(k)]
            f_trial = [mpmath.mpf(v) for v in F(trial)]
            trial_residual = _max_norm(f_trial)
            if trial_residual < residual or damping < mpmath.ldexp(1, -30):
                break
            damping /= 2
        step_size = damping * _max_norm(dx)
        x, fx, residual = trial, f_trial, trial_residual
        logging.debug("Newton iteration %d residual %s", iteration,
                mpmath.nstr(residual, 5))
        if step_size < tol * max(1, _max_norm(x)):
            # noise floor of F reached
            if residual < mpmath.sqrt(tol):
                return x
            raise NewtonError(iteration + 1, residual)
    if residual < tol:
        return x
    raise NewtonError(maxiter, residual)


def solve_nullspace(A, ctx, tol = None, return_basis = False):
    '''
    Nonzero solution v of A v = 0 by completely pivoted elimination

    Rows are equilibrated first. The returned vector is normalized so that its
    largest entry has modulus one and is checked by re-multiplication.
    Raises DegenerateSystemError (basis attached) when the kernel has
    dimension above one, unless return_basis is set.
    @param A - list of rows, each a list of mpc
    '''
    tol = ctx.tol if tol is None else tol
    rows = len(A)
    columns = len(A[0]) if rows else 0
    original = [[mpmath.mpc(x) for x in row] for row in A]
    work = []
    for row in original:
        scale = _max_norm(row)
        work.append([x / scale for x in row] if scale else list(row))
    amax = max([_max_norm(row) for row in work] + [mpmath.mpf(0)])
    threshold = tol * amax

    order = list(range(columns))
    rank = 0
    for k in range(min(rows, columns)):
        best = mpmath.mpf(-1)
        pivot_row = pivot_column = k
        for i in range(k, rows):
            row = work[i]
            for j in range(k, columns):
                size = abs(row[j])
                if size > best:
                    best = size
                    pivot_row, pivot_column = i, j
        if best <= threshold:
            break
        work[k], work[pivot_row] = work[pivot_row], work[k]
        if pivot_column != k:
            for row in work:
                row[k], row[pivot_column] = row[pivot_column], row[k]
            order[k], order[pivot_column] = order[pivot_column], order[k]
        pivot = work[k][k]
        for i in range(k + 1, rows):
            factor = work[i][k] / pivot
            if factor:
                row = work[i]
                top = work[k]
                for j in range(k, columns):
                    row[j] -= factor * top[j]
        rank += 1

    basis = []
    for free in range(rank, columns):
        x = [mpmath.mpc(0)] * columns
        x[free] = mpmath.mpc(1)
        for i in range(rank - 1, -1, -1):
            acc = work[i][free]
            for j in range(i + 1, rank):
                acc += work[i][j] * x[j]
            x[i] = -acc / work[i][i]
        v = [mpmath.mpc(0)] * columns
        for position, index in enumerate(order):
            v[index] = x[position]
        basis.append(_normalize_max(v))

    if not basis:
        raise DegenerateSystemError([])
    if return_basis:
        return basis
    if 1 < len(basis):
        raise DegenerateSystemError(basis)
    v = basis[0]
    residual = nullspace_residual(original, v)
    logging.debug("Nullspace residual %s (rank %d)", mpmath.nstr(residual, 5),
            rank)
    if not residual < tol:
        raise PrecisionError("nullspace residual %s" % mpmath.nstr(residual, 5))
    return v


def _normalize_max(v):
    biggest = max(v, key = abs)
    return [x / biggest for x in v]


def nullspace_residual(A, v):
    '''Relative residual |A v| / (|A| |v|) in max norms'''
    norm_A = max(mpmath.fsum(abs(x) for x in row) for row in A)
    norm_v = _max_norm(v)
    if not norm_A or not norm_v:
        return mpmath.mpf(0)
    worst = max(abs(mpmath.fsum(a * x for a, x in zip(row, v))) for row in A)
    return worst / (norm_A * norm_v)


class Polynomial:
    '''
    Polynomial with mpc coefficients stored in ascending degree

    Trailing zeros are removed on construction so that degree is len - 1.
    '''

    def __init__(self, coefficients):
        coefficients = [mpmath.mpc(c) for c in coefficients]
        while 1 < len(coefficients) and not coefficients[-1]:
            coefficients.pop()
        if not coefficients:
            coefficients = [mpmath.mpc(0)]
        self.coefficients = coefficients


    def __repr__(self):
        return "Polynomial(degree={})".format(self.degree)


    def __len__(self):
        return len(self.coefficients)


    def __getitem__(self, k):
        if k < len(self.coefficients):
            return self.coefficients[k]
        return mpmath.mpc(0)


    @property
    def degree(self):
        return len(self.coefficients) - 1


    @property
    def leading(self):
        return self.coefficients[-1]


    def is_zero(self):
        return 1 == len(self.coefficients) and not self.coefficients[0]


    def __call__(self, z):
        acc = mpmath.mpc(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc


    def derivative(self):
        return Polynomial([k * c for k, c in enumerate(self.coefficients)][1:]
                or [0])


    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coefficients])
        out = [mpmath.mpc(0)] * (len(self) + len(other) - 1)
        for i, c in enumerate(self.coefficients):
            for j, d in enumerate(other.coefficients):
                out[i + j] += c * d
        return Polynomial(out)

    __rmul__ = __mul__


    def __sub__(self, other):
        size = max(len(self), len(other))
        return Polynomial([self[k] - other[k] for k in range(size)])


    def trimmed(self, tol):
        '''Drop leading coefficients below tol relative to the largest one'''
        scale = _max_norm(self.coefficients)
        coefficients = list(self.coefficients)
        while 1 < len(coefficients) and abs(coefficients[-1]) <= tol * scale:
            coefficients.pop()
        return Polynomial(coefficients)


    def monic(self):
        return Polynomial([c / self.leading for c in self.coefficients])


    def norm(self):
        return mpmath.fsum(abs(c) for c in self.coefficients)


    def backward_error(self, z):
        '''|p(z)| relative to sum |c_k| |z|^k'''
        size = abs(z)
        scale = mpmath.fsum(abs(c) * size ** k
                for k, c in enumerate(self.coefficients))
        return abs(self(z)) / scale if scale else mpmath.mpf(0)


    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p


    def to_json(self):
        return [complex_pair(c) for c in self.coefficients]


class RootReport:
    '''
    Roots of a polynomial with their backward errors and multiplicities

    A root whose refinement did not converge is listed in `flagged` by index.
    '''

    def __init__(self, roots, residuals, multiplicities, flagged):
        self.roots = roots
        self.residuals = residuals
        self.multiplicities = multiplicities
        self.flagged = flagged


def _root_seeds(p):
    descending = [complex(c) for c in reversed(p.coefficients)]
    try:
        with np.errstate(all = 'raise'):
            seeds = np.roots(np.array(descending, dtype = np.complex128))
    except (FloatingPointError, np.linalg.LinAlgError, OverflowError):
        seeds = np.array([])
    if len(seeds) != p.degree or not np.all(np.isfinite(seeds)):
        # spread the seeds on a circle of Cauchy bound radius
        bound = 1 + max(abs(c) for c in descending[1:]) / abs(descending[0])
        radius = min(bound, 1e3)
        seeds = radius * np.exp(2j * np.pi * (np.arange(p.degree) + 0.25) /
                p.degree)
    return [mpmath.mpc(complex(s)) for s in seeds]


def poly_roots(p, ctx, tol = None, report = False):
    '''
    All roots of p, double precision companion seeds refined at full
    precision by Newton corrections with Aberth's repulsion term

    @param (Polynomial) p - degree one or more
    @param (bool) report - return a RootReport instead of the bare list
    '''
    tol = ctx.tol if tol is None else tol
    if p.degree < 1:
        raise ValueError(_BAD_DEGREE_ERROR_MSG)
    dp = p.derivative()
    roots = _root_seeds(p)
    degree = p.degree
    done = [False] * degree
    for sweep in range(ABERTH_MAXIMUM_SWEEPS):
        moved = False
        for k in range(degree):
            if done[k]:
                continue
            z = roots[k]
            value = p(z)
            if p.backward_error(z) < tol:
                done[k] = True
                continue
            slope = dp(z)
            if not slope:
                z += mpmath.mpc(tol, tol)
                roots[k] = z
                moved = True
                continue
            ratio = value / slope
            repulsion = mpmath.fsum(1 / (z - roots[j])
                    for j in range(degree) if j != k and roots[j] != z)
            correction = ratio / (1 - ratio * repulsion)
            roots[k] = z - correction
            moved = True
            if abs(correction) < tol * max(1, abs(z)):
                done[k] = True
        if not moved or all(done):
            break
    residuals = [p.backward_error(z) for z in roots]
    flagged = [k for k, r in enumerate(residuals) if not r < tol]
    for k in flagged:
        logging.debug("Root %s not refined, residual %s", mpmath.nstr(roots[k],
                10), mpmath.nstr(residuals[k], 5))
    if not report:
        return roots
    return RootReport(roots, residuals, root_multiplicities(roots, tol),
            flagged)


def root_multiplicities(roots, tol):
    '''
    Multiplicity m of each root: size of its cluster of radius tol^(1/m)
    '''
    out = []
    count = len(roots)
    for z in roots:
        multiplicity = 1
        for m in range(count, 1, -1):
            radius = tol ** (mpmath.mpf(1) / m) * max(1, abs(z))
            if sum(1 for y in roots if abs(y - z) <= radius) >= m:
                multiplicity = m
                break
        out.append(multiplicity)
    return out


# Rest of this file is a quick self check. Use `python3 -m padelab.precision`
# check prevents running of the check when loading (import) as a module
if __name__ == "__main__":
    logging.basicConfig(format = '%(message)s', level = logging.DEBUG)
    with PrecisionContext({'bits': 128}) as ctx:
        print(quad_trapezoid_periodic(lambda s: 1 / s, 0, 1, ctx))
        print(quad_cheb_segment(lambda s: s * s, -1, 1, ctx))
        print(poly_roots(Polynomial([1, 0, 1]), ctx))
