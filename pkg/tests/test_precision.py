'''
Scalars, root finding, null spaces and the quadrature helpers of
padelab.precision
'''

# third party libraries
import mpmath
import pytest

# our code
from padelab.errors import DegenerateSystemError
from padelab.precision import (Polynomial, PrecisionContext, complex_pair,
        continue_log, gauss_legendre, newton_system, one_sided, parse_complex,
        poly_roots, quad_cheb_segment, quad_trapezoid_periodic,
        richardson_limit, solve_nullspace, to_decimal)


def test_context_defaults_and_restores_precision():
    before = mpmath.mp.prec
    context = PrecisionContext()
    assert 512 == context.bits
    assert context.tol == mpmath.ldexp(1, -256)
    with context:
        assert 512 == mpmath.mp.prec
    assert before == mpmath.mp.prec


def test_context_rejects_bad_settings():
    with pytest.raises(ValueError):
        PrecisionContext({'bits': 20})
    with pytest.raises(ValueError):
        PrecisionContext({'bits': 'many'})
    with pytest.raises(ValueError):
        PrecisionContext({'bits': 128, 'tol': '-1'})


def test_parse_complex_accepts_text_and_pairs(ctx):
    assert parse_complex("1.5,-2") == mpmath.mpc('1.5', '-2')
    assert parse_complex(" 0.25 ") == mpmath.mpc('0.25', 0)
    assert parse_complex(['3', '4']) == mpmath.mpc(3, 4)
    with pytest.raises(ValueError):
        parse_complex("1,2,3")
    with pytest.raises(ValueError):
        parse_complex("one")


def test_decimal_strings_carry_forty_digits():
    with PrecisionContext({'bits': 256}):
        assert '0.' + '3' * 40 == to_decimal(mpmath.mpf(1) / 3)
        re, im = complex_pair(mpmath.mpc(1, -2))
        assert mpmath.mpf(re) == 1 and mpmath.mpf(im) == -2


def test_continue_log_picks_nearest_branch(ctx):
    value = mpmath.log(mpmath.mpc(-1, -1e-3))
    continued = continue_log(value, mpmath.mpc(0, mpmath.pi))
    assert abs(continued.imag - mpmath.pi) < 1e-2


def test_richardson_and_one_sided_limits(ctx):
    steps = [mpmath.mpf(1) / 2 ** k for k in range(1, 4)]
    values = [1 + h + h * h for h in steps]
    assert abs(richardson_limit(steps, values) - 1) < 1e-30
    limit = one_sided(lambda z: z * z, mpmath.mpc(1), 1j, 1)
    assert abs(limit - 1) < 1e-15


def test_gauss_legendre_weights_sum_to_two(ctx):
    nodes = gauss_legendre(3)
    assert abs(mpmath.fsum(w for x, w in nodes) - 2) < 1e-30


def test_periodic_and_chebyshev_quadrature(ctx):
    assert abs(quad_trapezoid_periodic(lambda s: 1 / s, 0, 1, ctx) - 1) < 1e-15
    assert abs(quad_cheb_segment(lambda s: 1, -1, 1, ctx) - mpmath.pi) < 1e-15


def test_newton_system_finds_square_root(ctx):
    x = newton_system(lambda v: [v[0] ** 2 - 2], [1], ctx)
    assert abs(x[0] - mpmath.sqrt(2)) < 1e-15


def test_polynomial_arithmetic(ctx):
    p = Polynomial.from_roots([1, 2])
    assert p.degree == 2
    assert p(1) == 0
    assert p.derivative()(0) == -3
    assert (p * Polynomial([1, 1])).degree == 3
    assert Polynomial([2, 4]).monic()[1] == 1


def test_poly_roots_with_report(ctx):
    expected = [mpmath.mpc(1), mpmath.mpc(2), mpmath.mpc(0, -3)]
    report = poly_roots(Polynomial.from_roots(expected), ctx, report = True)
    assert 3 == len(report.roots)
    for z in expected:
        assert min(abs(z - r) for r in report.roots) < 1e-15
    assert [] == report.flagged
    assert [1, 1, 1] == report.multiplicities
    with pytest.raises(ValueError):
        poly_roots(Polynomial([1]), ctx)


def test_nullspace_of_rank_deficient_rows(ctx):
    v = solve_nullspace([[1, -1]], ctx)
    assert abs(v[0] - v[1]) < 1e-30
    with pytest.raises(DegenerateSystemError) as raised:
        solve_nullspace([[1, 0, 0]], ctx)
    assert 2 == len(raised.value.basis)
