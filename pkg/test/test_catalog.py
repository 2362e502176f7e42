"""
tests for the closed-form standard bases
"""

import math

import numpy as np
import pytest

from expinterp.catalog import (
    CASE_IDS,
    OddHyperbolic3,
    OddTrigonometric3,
    catalog_case,
    closed_form_catalog,
)
from expinterp.charsol import characteristic_solution
from expinterp.errors import DegenerateParameters, DimensionMismatch, UsageError
from expinterp.hermite_basis import kronecker_deviation, standard_basis, taylor_basis
from expinterp.kernelcore import find_roots, make_operator
from test.conftest import spaced_nodes

# first positive root of cosh(d) cos(d) = 1
BIHARMONIC_DEGENERATE = 4.730040744862704

CASES = [
    ('hyperbolic2', (0.0, 1.0), None),
    ('trigonometric2', (0.0, 1.0), None),
    ('biharmonic4', (0.0, 1.0), None),
    ('odd_hyperbolic3', (0.0, 0.5, 1.5), None),
    ('odd_trigonometric3', (0.0, 1.0, 2.0), None),
    ('lagrange', (-1.0, 0.0, 0.5, 2.0), None),
    ('taylor_polynomial', (0.5,), 4),
]


@pytest.mark.parametrize('case_id,nodes,n', CASES)
def test_catalog_matches_solved_basis(case_id, nodes, n):
    """
    every closed-form chi agrees with the one from the linear solve
    """
    case = catalog_case(case_id, nodes, n)
    op = case.operator()
    sys = case.system()
    solved = standard_basis(op, find_roots(op), sys)
    closed = closed_form_catalog(case_id, nodes, n)
    ts = np.linspace(nodes[0] - 1, nodes[-1] + 1, 50)
    for alpha, beta in sys.slots():
        expected = np.asarray([solved.evaluate(alpha, beta, t) for t in ts])
        actual = np.asarray([closed.evaluate(alpha, beta, t) for t in ts])
        assert np.allclose(actual, expected, rtol=1e-8, atol=1e-10), (alpha, beta)


@pytest.mark.parametrize('case_id,nodes,n', CASES)
def test_catalog_kronecker(case_id, nodes, n):
    closed = closed_form_catalog(case_id, nodes, n)
    assert closed.kind == 'catalog'
    assert kronecker_deviation(closed) < 1e-10


@pytest.mark.parametrize('case_id,nodes,n', CASES)
def test_catalog_characteristic_solution(case_id, nodes, n):
    case = catalog_case(case_id, nodes, n)
    op = case.operator()
    cs = characteristic_solution(op, find_roots(op))
    for t in (-2.0, -0.3, 0.0, 1.1, 2.5):
        assert cs.value(t) == pytest.approx(case.omega_c(t), rel=1e-9, abs=1e-12)


def test_trigonometric_degenerate():
    with pytest.raises(DegenerateParameters):
        closed_form_catalog('trigonometric2', (0.0, math.pi))


def test_biharmonic_degenerate():
    with pytest.raises(DegenerateParameters):
        closed_form_catalog('biharmonic4', (0.0, BIHARMONIC_DEGENERATE))


def test_odd_trigonometric_degenerate():
    # a_3 - a_1 = 2 pi
    with pytest.raises(DegenerateParameters):
        closed_form_catalog('odd_trigonometric3', (0.0, 1.0, 2 * math.pi))


def test_odd_trigonometric_wronskian_factors():
    a1, a2, a3 = 0.2, 1.1, 2.9
    case = OddTrigonometric3((a1, a2, a3))
    product = -4 * math.sin((a1 - a3) / 2) * math.sin((a2 - a1) / 2) * math.sin((a3 - a2) / 2)
    assert case.wronskian() == pytest.approx(product, rel=1e-12)


def test_odd_hyperbolic_chi_shape():
    """
    chi_(alpha, 0) is a shifted cosh less a constant, one at its own node and zero at the other two
    """
    nodes = (-0.4, 0.3, 1.2)
    closed = closed_form_catalog('odd_hyperbolic3', nodes)
    for alpha, own in enumerate(nodes, start=1):
        values = [closed.evaluate(alpha, 0, node) for node in nodes]
        expected = [1.0 if node == own else 0.0 for node in nodes]
        assert values == pytest.approx(expected, abs=1e-12)
    assert OddHyperbolic3(nodes).wronskian() != 0


def test_wrong_node_count():
    with pytest.raises(DimensionMismatch):
        catalog_case('hyperbolic2', (0.0, 1.0, 2.0))


def test_lagrange_order_must_match_nodes():
    with pytest.raises(DimensionMismatch):
        catalog_case('lagrange', (0.0, 1.0), 3)


def test_taylor_polynomial_needs_order():
    with pytest.raises(UsageError):
        catalog_case('taylor_polynomial', (0.0,))


def test_unknown_case():
    with pytest.raises(UsageError):
        closed_form_catalog('potato', (0.0, 1.0))


def test_taylor_general():
    coefficients = [2, -3, 1]
    op = make_operator(coefficients)
    closed = closed_form_catalog('taylor_general', (0.3,), coefficients=coefficients)
    direct = taylor_basis(op, find_roots(op), 0.3)
    assert closed.kind == 'taylor'
    for beta in range(2):
        assert closed.evaluate(1, beta, 1.7) == pytest.approx(direct.evaluate(1, beta, 1.7))
    with pytest.raises(UsageError):
        closed_form_catalog('taylor_general', (0.3,))
    with pytest.raises(UsageError):
        closed_form_catalog('taylor_general', (0.3, 0.5), coefficients=coefficients)


def test_case_ids():
    assert 'taylor_general' in CASE_IDS
    assert len(CASE_IDS) == len(set(CASE_IDS))


@pytest.mark.slow
@pytest.mark.parametrize('case_id,nodes,n', CASES)
def test_catalog_random_nodes(case_id, nodes, n, rng):
    """
    closed form and solved basis agree, and both meet the Kronecker conditions, on random node sets
    """
    for _ in range(20):
        sample = tuple(spaced_nodes(rng, len(nodes), 0, 2, 0.3))
        closed = closed_form_catalog(case_id, sample, n)
        case = catalog_case(case_id, sample, n)
        op = case.operator()
        solved = standard_basis(op, find_roots(op), case.system())
        assert kronecker_deviation(closed) < 1e-8
        assert kronecker_deviation(solved) < 1e-8
        for t in np.linspace(-0.5, 2.5, 13):
            for alpha, beta in case.system().slots():
                expected = solved.evaluate(alpha, beta, t)
                assert closed.evaluate(alpha, beta, t) == pytest.approx(expected, rel=1e-8, abs=1e-8)
