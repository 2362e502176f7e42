"""
tests for the integral remainder, its single-node form and the Green kernel
"""

import math

import numpy as np
import pytest

from expinterp.charsol import characteristic_solution
from expinterp.config import set_config_path
from expinterp.errors import DimensionMismatch, MaxDepthExceeded, UsageError
from expinterp.evaluators import RungeEvaluator, build_evaluator
from expinterp.hermite_basis import make_system, standard_basis, taylor_basis
from expinterp.kernelcore import find_roots, make_operator
from expinterp.remainder import (
    classical_reconstruct,
    green_integral,
    greens_kernel_value,
    greens_kernel_values,
    integration_by_parts_residual,
    make_green_kernel,
    reconstruct,
    reconstruct_many,
    remainder_integral,
    require_polynomial_operator,
    taylor_reconstruct,
)
from test.conftest import SHALLOW_CONFIG, bundle, random_multiplicities, random_operator, spaced_nodes

# (nodes, multiplicities) for the polynomial operator of matching order
POLYNOMIAL_SYSTEMS = [
    ([0.0, 1.0], [1, 1]),
    ([0.0, 1.0], [2, 1]),
    ([0.0, 1.0], [2, 2]),
    ([-1.0, 0.0, 1.0], [1, 1, 1]),
    ([-1.0, 0.5, 1.0], [1, 2, 1]),
    ([0.3], [4]),
    ([-0.5, 0.2, 0.9, 1.5], [1, 1, 1, 1]),
    ([0.0, 2.0], [3, 1]),
    ([-1.0, 1.0], [1, 3]),
    ([-1.0, 0.0, 0.7], [2, 1, 2]),
]


def polynomial_bundle(sys):
    op = make_operator([0] * sys.n + [1])
    rd = find_roots(op)
    return op, characteristic_solution(op, rd), standard_basis(op, rd, sys)


def test_first_order_integral():
    """
    for f' the weight is 1, so the integral is f(x) - f(a)
    """
    op, _, cs = bundle([0, 1])
    sys = make_system([0.2], [1])
    result = remainder_integral(op, cs, sys, build_evaluator('exp'), 1, 0, 1.0)
    assert result.value == pytest.approx(math.e - math.exp(0.2), rel=1e-12)


def test_second_derivative_of_square():
    """
    f'' with omega_c = t and f = t^2: R_(1, 0)(1) = int_0^1 2 (0 - t) dt = -1
    """
    op, _, cs = bundle([0, 0, 1])
    sys = make_system([0.0, 1.0], [1, 1])
    square = build_evaluator('polynomial', {'coefficients': [0, 0, 1]})
    assert remainder_integral(op, cs, sys, square, 1, 0, 1.0).value == pytest.approx(-1)


def test_integral_is_zero_at_its_node(hyperbolic):
    op, _, cs = hyperbolic
    sys = make_system([0.0, 1.0], [1, 1])
    result = remainder_integral(op, cs, sys, build_evaluator('sin'), 2, 0, 1.0)
    assert result.value == 0
    assert result.panels == 0


def test_remainder_integral_bad_slot(hyperbolic):
    op, _, cs = hyperbolic
    sys = make_system([0.0, 1.0], [1, 1])
    with pytest.raises(DimensionMismatch):
        remainder_integral(op, cs, sys, build_evaluator('sin'), 1, 1, 0.5)
    with pytest.raises(DimensionMismatch):
        remainder_integral(op, cs, sys, build_evaluator('sin'), 3, 0, 0.5)


@pytest.mark.parametrize('function', ['exp', 'sin', 'runge'])
@pytest.mark.parametrize('x', [-0.5, 0.25, 0.8, 1.6])
def test_reconstruct_biharmonic(biharmonic, function, x):
    op, rd, cs = biharmonic
    basis = standard_basis(op, rd, make_system([0.0, 1.0], [2, 2]))
    report = reconstruct(op, cs, basis, build_evaluator(function, {'sigma': 1.3}), x, tol=1e-12)
    assert report.converged
    assert report.within_contract
    assert report.residual <= 1e-8


def test_reconstruct_at_node(trigonometric):
    op, rd, cs = trigonometric
    basis = standard_basis(op, rd, make_system([0.0, 1.0], [1, 1]))
    report = reconstruct(op, cs, basis, build_evaluator('exp'), 0.0)
    assert report.interpolant_value == pytest.approx(1)
    assert report.reconstructed == pytest.approx(1)
    assert report.chi_values[(1, 0)] == pytest.approx(1)
    assert report.chi_values[(2, 0)] == pytest.approx(0, abs=1e-14)


def test_kernel_function_needs_no_correction(rng):
    """
    for f in the kernel the integrals vanish and the interpolant is already exact
    """
    op, rd, cs = bundle([-1, 0, 0, 0, 1])
    basis = standard_basis(op, rd, make_system([-0.5, 0.4, 1.0], [2, 1, 1]))
    coordinates = [[value, 0] for value in rng.normal(size=4)]
    f = build_evaluator('kernel', {'coordinates': coordinates}, rd)
    for x in (-1.0, 0.0, 0.7, 2.0):
        report = reconstruct(op, cs, basis, f, x)
        assert max(abs(value) for value in report.per_node_integrals.values()) < 1e-9
        assert report.interpolant_value == pytest.approx(report.true_value, rel=1e-9, abs=1e-9)


def test_reconstruct_dimension_mismatch(hyperbolic):
    op, _, cs = hyperbolic
    op3, rd3, _ = bundle([0, -1, 0, 1])
    basis = standard_basis(op3, rd3, make_system([0.0, 1.0, 2.0], [1, 1, 1]))
    with pytest.raises(DimensionMismatch):
        reconstruct(op, cs, basis, build_evaluator('exp'), 0.5)


def test_reconstruct_taylor_basis(odd_trigonometric):
    op, rd, cs = odd_trigonometric
    basis = taylor_basis(op, rd, 0.2, cs)
    report = reconstruct(op, cs, basis, build_evaluator('poly_sin', {'coefficients': [0, 1]}), 1.4)
    assert report.within_contract


def test_reconstruct_many_keeps_order(hyperbolic):
    op, rd, cs = hyperbolic
    basis = standard_basis(op, rd, make_system([0.0, 1.0], [1, 1]))
    f = build_evaluator('cos')
    xs = [1.5, -0.2, 0.6, 0.6, 0.0]
    reports = reconstruct_many(op, cs, basis, f, xs)
    assert [report.x for report in reports] == xs
    serial = [reconstruct(op, cs, basis, f, x, parallel=False) for x in xs]
    assert [report.reconstructed for report in reports] == [report.reconstructed for report in serial]


def test_strict_quadrature_failure():
    set_config_path(SHALLOW_CONFIG)
    op, rd, cs = bundle([0, 0, 1])
    basis = standard_basis(op, rd, make_system([0.0, 1.0], [1, 1]))
    f = RungeEvaluator(sigma=20)
    flagged = reconstruct(op, cs, basis, f, 0.9, tol=1e-12)
    assert not flagged.converged
    with pytest.raises(MaxDepthExceeded):
        reconstruct(op, cs, basis, f, 0.9, tol=1e-12, strict=True)


@pytest.mark.parametrize(
    'coefficients,function,x',
    [
        ([-1, 0, 1], 'polynomial', 1.0),
        ([0, 0, 0, 1], 'exp', 1.0),
        ([1, 0, 1], 'exp', -0.7),
        ([2, -3, 1], 'sin', 2.2),
    ],
)
def test_taylor_reconstruct(coefficients, function, x):
    op, _, cs = bundle(coefficients)
    f = build_evaluator(function, {'coefficients': [0, 0, 1]})
    report = taylor_reconstruct(op, cs, 0.0, f, x)
    assert report.form == 'taylor'
    assert report.within_contract


def test_taylor_reconstruct_matches_taylor_basis(biharmonic):
    """
    the single-integral form and the per-slot form agree at one node
    """
    op, rd, cs = biharmonic
    f = build_evaluator('cosh', {'sigma': 0.8})
    condensed = taylor_reconstruct(op, cs, 0.3, f, 1.1)
    expanded = reconstruct(op, cs, taylor_basis(op, rd, 0.3, cs), f, 1.1)
    assert condensed.interpolant_value == pytest.approx(expanded.interpolant_value, rel=1e-10)
    per_slot = sum(expanded.per_node_integrals[slot] * expanded.chi_values[slot] for slot in expanded.chi_values)
    assert condensed.condensed_integral == pytest.approx(per_slot, rel=1e-8, abs=1e-10)


@pytest.mark.parametrize('beta,k', [(0, 1), (1, 2), (0, 3)])
def test_integration_by_parts(biharmonic, beta, k):
    _, _, cs = biharmonic
    f = build_evaluator('sin', {'sigma': 1.5})
    assert integration_by_parts_residual(cs, f, 0.2, beta, k, 1.3) < 1e-9


@pytest.mark.parametrize('n', [1, 2, 4])
def test_green_kernel_taylor(n):
    """
    with one node the kernel is (x - t)^(n-1) / (n-1)! between the node and x
    """
    gk = make_green_kernel(make_system([0.0], [n]))
    x = 0.9
    for t in (0.1, 0.5, 0.9):
        assert greens_kernel_value(gk, x, t) == pytest.approx((x - t) ** (n - 1) / math.factorial(n - 1))


def test_green_kernel_outside_is_empty():
    gk = make_green_kernel(make_system([0.0, 1.0], [1, 2]))
    values = greens_kernel_values(gk, 0.5, np.asarray([-0.5, -0.1, 1.2, 2.0]))
    assert np.allclose(values, 0)


@pytest.mark.parametrize('nodes,multiplicities', POLYNOMIAL_SYSTEMS)
def test_green_matches_per_node_integrals(nodes, multiplicities):
    """
    the Green-kernel integral equals the chi-weighted sum of the per-node integrals
    """
    sys = make_system(nodes, multiplicities)
    op, cs, basis = polynomial_bundle(sys)
    gk = make_green_kernel(sys)
    f = build_evaluator('exp', {'sigma': 0.7})
    for x in (nodes[0] - 0.3, (nodes[0] + nodes[-1]) / 2 + 0.05, nodes[-1] + 0.4):
        report = reconstruct(op, cs, basis, f, x, tol=1e-12)
        per_slot = sum(report.per_node_integrals[slot] * report.chi_values[slot] for slot in sys.slots())
        green = green_integral(gk, f, x, tol=1e-12)
        assert green.value == pytest.approx(per_slot, rel=1e-8, abs=1e-8)


@pytest.mark.parametrize('nodes,multiplicities', POLYNOMIAL_SYSTEMS[:5])
def test_classical_reconstruct(nodes, multiplicities):
    sys = make_system(nodes, multiplicities)
    f = build_evaluator('sin', {'sigma': 1.2})
    for x in (nodes[0], 0.33, nodes[-1] + 0.5):
        report = classical_reconstruct(sys, f, x)
        assert report.form == 'classical'
        assert report.within_contract


def test_classical_reconstruct_cubic_error():
    """
    f = t^3 through 0 and 1 with f'': linear interpolant t, error x^3 - x
    """
    sys = make_system([0.0, 1.0], [1, 1])
    cube = build_evaluator('polynomial', {'coefficients': [0, 0, 0, 1]})
    report = classical_reconstruct(sys, cube, 0.5)
    assert report.interpolant_value == pytest.approx(0.5)
    assert report.condensed_integral == pytest.approx(-0.375)


def test_require_polynomial_operator():
    require_polynomial_operator(make_operator([0, 0, 1]))
    with pytest.raises(UsageError):
        require_polynomial_operator(make_operator([1, 0, 1]))


@pytest.mark.slow
@pytest.mark.parametrize('order', [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize('function', ['exp', 'poly_sin', 'runge'])
def test_reconstruct_random_systems(order, function, rng):
    """
    interpolant plus remainder gives back f on random operators and node systems
    """
    op, rd, cs = random_operator(rng, order)
    mults = random_multiplicities(rng, order)
    basis = standard_basis(op, rd, make_system(spaced_nodes(rng, len(mults), 0, 2, 0.3), mults))
    f = build_evaluator(function, {'sigma': 1.5, 'coefficients': [1, -0.5]})
    for x in rng.uniform(-0.5, 2.5, size=20):
        report = reconstruct(op, cs, basis, f, float(x), tol=1e-11)
        assert report.residual <= 1e-7 * (1 + abs(report.true_value))
