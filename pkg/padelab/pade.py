#!python3

"""
Two-point Pade approximants to a germ pair (f0, finf).

The polynomials P and Q of degree at most n interpolate f0 at the origin to
order n1 and finf at infinity to order n2, n1 + n2 = 2n + 1:

    (Q f0 - P)(z) = O(z^n1)             as z -> 0
    (Q finf - P)(z) = O(z^(n - n2))     as z -> infinity

The homogeneous system is assembled in coefficient space and solved with the
completely pivoted null space solver.
"""

# from the standard library
import json
import logging

# third party libraries
import mpmath

# our code
from padelab.errors import (BoundaryError, ConsistencyError,
        DegenerateSystemError, InsufficientCoefficientsError)
from padelab.precision import (Polynomial, complex_pair, nullspace_residual,
        poly_roots, solve_nullspace)

# Definitions aka constants
NEAR_F = 1e-3
SAMPLE_RADII = (mpmath.mpf('0.37'), mpmath.mpf('2.9'))

_BAD_TYPE_ERROR_MSG = "Type (n1, n2) must have n1 + n2 odd and both positive"


class PadeApproximant:
    '''
    P/Q of type (n1, n2)

    @param (int) n - common degree bound, (n1 + n2 - 1) / 2
    @param (Polynomial) P, Q - numerator and denominator
    @param (bool) degenerate - deg Q < n
    '''

    def __init__(self, n, n1, n2, P, Q, degenerate = False):
        self.n = n
        self.n1 = n1
        self.n2 = n2
        self.P = P
        self.Q = Q
        self.degenerate = degenerate
        self.monic = not degenerate and 1 == Q.leading


    def __repr__(self):
        return "PadeApproximant(n={}, type=({},{}), deg Q={})".format(self.n,
                self.n1, self.n2, self.Q.degree)


    def __call__(self, z):
        return self.P(z) / self.Q(z)


    def to_json(self, a_n = None):
        if a_n is None or a_n == mpmath.inf:
            coded = None if a_n is None else 'inf'
        else:
            coded = complex_pair(a_n)
        return json.dumps({'n': self.n, 'n1': self.n1, 'n2': self.n2,
                'Q': self.Q.to_json(), 'P': self.P.to_json(), 'a_n': coded})


def _system(pair, n, n1, n2):
    '''Rows of the interpolation conditions on (q_0..q_n, p_0..p_n)'''
    f0 = pair.coeffs0
    finf = pair.coeffs_inf
    zero = mpmath.mpc(0)
    rows = []
    for k in range(n1):
        row = [f0[k - j] if j <= k else zero for j in range(n + 1)]
        row += [mpmath.mpc(-1) if j == k else zero for j in range(n + 1)]
        rows.append(row)
    for i in range(n, n - n2, -1):
        row = [finf[j - i] if j >= i else zero for j in range(n + 1)]
        row += [mpmath.mpc(-1) if j == i else zero for j in range(n + 1)]
        rows.append(row)
    return rows


def _minimal_degree(basis, n, tol):
    '''Member of the kernel spanned by basis with the smallest deg Q'''
    vectors = [list(v) for v in basis]
    while 1 < len(vectors):
        def top(v):
            for d in range(n, -1, -1):
                if abs(v[d]) > tol:
                    return d
            return -1
        degree = max(top(v) for v in vectors)
        pivot = max(vectors, key = lambda v: abs(v[degree]))
        rest = []
        for v in vectors:
            if v is pivot:
                continue
            factor = v[degree] / pivot[degree]
            rest.append([x - factor * y for x, y in zip(v, pivot)])
        vectors = rest
    v = vectors[0]
    biggest = max(v, key = abs)
    return [x / biggest for x in v]


def _ratios_agree(basis, n, tol):
    points = [r * mpmath.expjpi(mpmath.mpf(k) / 3) for r in SAMPLE_RADII
            for k in range(3)]
    ratios = []
    for v in basis:
        Q = Polynomial(v[:n + 1])
        P = Polynomial(v[n + 1:])
        if Q.is_zero():
            continue
        ratios.append([P(z) / Q(z) for z in points])
    for other in ratios[1:]:
        for x, y in zip(ratios[0], other):
            if abs(x - y) > mpmath.sqrt(tol) * max(1, abs(x)):
                return False
    return True


def pade_solve(pair, n1, n2, ctx):
    '''
    Two-point Pade approximant of type (n1, n2)

    @param (PowerSeriesPair) pair - the germs
    @param (int) n1, n2 - interpolation orders at 0 and infinity
    @param (PrecisionContext) ctx - working precision
    '''
    if n1 < 0 or n2 < 0 or 0 == (n1 + n2) % 2:
        raise ValueError(_BAD_TYPE_ERROR_MSG)
    n = (n1 + n2 - 1) // 2
    needed = max(n1, n2) - 1
    if pair.order < needed:
        raise InsufficientCoefficientsError(n1, n2, needed, pair.order)
    A = _system(pair, n, n1, n2)
    try:
        v = solve_nullspace(A, ctx)
        degenerate = False
    except DegenerateSystemError as e:
        if not _ratios_agree(e.basis, n, ctx.tol):
            raise ConsistencyError("kernel members of type (%d,%d) give "
                    "different ratios" % (n1, n2))
        v = _minimal_degree(e.basis, n, ctx.tol)
        degenerate = True
    Q = Polynomial(v[:n + 1]).trimmed(ctx.tol)
    P = Polynomial(v[n + 1:])
    if Q.degree == n and not degenerate:
        scale = Q.leading
        Q = Q.monic()
        P = Polynomial([c / scale for c in P.coefficients])
    else:
        degenerate = True
        logging.info("Type (%d,%d): deg Q = %d < %d", n1, n2, Q.degree, n)
    approximant = PadeApproximant(n, n1, n2, P, Q, degenerate)
    logging.debug("Solved %s", approximant)
    return approximant


def pade_star(pair, n, ctx):
    '''Companion approximant Q*_{n-1}, P*_{n-1} of type (n, n-1)'''
    return pade_solve(pair, n, n - 1, ctx)


def interpolation_residuals(approximant, pair):
    '''Relative residual of the interpolation conditions'''
    n = approximant.n
    A = _system(pair, n, approximant.n1, approximant.n2)
    v = [approximant.Q[j] for j in range(n + 1)] + [approximant.P[j]
            for j in range(n + 1)]
    return nullspace_residual(A, v)


class LinearizedError:
    '''
    R(z) = z^(-n) (Q f_rho - P)(z), with f_rho the Cauchy transform of the
    weight over F

    @param (PadeApproximant) owner - Q_n (n1 = n) or Q*_{n-1} (n1 = n)
    @param spec - WeightSpec whose Cauchy transform is f_rho
    '''

    def __init__(self, owner, spec):
        self.owner = owner
        self.spec = spec
        self.power = owner.n1
        self._densities = spec.densities()
        self.a_n = None


    def f_rho(self, z):
        distance = self.spec.compact.distance(z)
        if distance < NEAR_F:
            raise BoundaryError(z, distance)
        return self.spec.cauchy_transform(z, self._densities)


    def __call__(self, z):
        z = mpmath.mpc(z)
        Q = self.owner.Q
        P = self.owner.P
        return (Q(z) * self.f_rho(z) - P(z)) / z ** self.power


def linearized_error_eval(err, z, F, spec, ctx):
    '''R_n(z) or R*_{n-1}(z) at a point off F'''
    if err.spec is not spec or spec.compact is not F:
        raise ValueError("linearized error built for another weight")
    return ctx.check_finite(err(z), "linearized error")


def _weighted_moments(Q, spec, powers):
    '''(int Q s^m rho ds, int |Q s^m rho| |ds|) for each m'''
    values = {m: mpmath.mpc(0) for m in powers}
    sizes = {m: mpmath.mpf(0) for m in powers}
    for density in spec.densities(lambda s: Q(s)):
        for value, (s, ds, k) in zip(density.values, density.rule.nodes):
            for m in powers:
                term = value * s ** m
                values[m] += term
                sizes[m] += abs(term)
    return values, sizes


def a_n_compute(pairstar, F, spec, ctx):
    '''
    a_n from R*_{n-1}(z) = 1/(a_n z^n) + O(z^(-n-1)); mpmath.inf when the
    coefficient of z^(-n) vanishes
    '''
    if spec.compact is not F:
        raise ValueError("weight and compact do not match")
    values, sizes = _weighted_moments(pairstar.Q, spec, [-1])
    coefficient = -values[-1] / (2j * mpmath.pi)
    scale = sizes[-1] / (2 * mpmath.pi)
    if abs(coefficient) <= mpmath.sqrt(ctx.tol) * max(scale, ctx.tol):
        return mpmath.inf
    return ctx.check_finite(1 / coefficient, "a_n")


def orthogonality_check(Q, n, F, spec, ctx, star = False):
    '''
    Largest relative |int_F Q(s) s^(k-n) rho(s) ds| over k = 0..n-1
    (k = 0..n-2 for the starred relations)
    '''
    if spec.compact is not F:
        raise ValueError("weight and compact do not match")
    top = n - 2 if star else n - 1
    powers = [k - n for k in range(top + 1)]
    if not powers:
        return mpmath.mpf(0)
    values, sizes = _weighted_moments(Q, spec, powers)
    return max(abs(values[m]) / sizes[m] for m in powers if sizes[m])


def zeros(approximant, ctx):
    '''Zeros of the denominator'''
    if approximant.Q.degree < 1:
        return []
    return poly_roots(approximant.Q, ctx)


def zeros_csv_rows(n, roots):
    return [[n, mpmath.nstr(z.real, 17), mpmath.nstr(z.imag, 17)] for z in roots]
