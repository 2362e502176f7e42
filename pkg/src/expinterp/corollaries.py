"""
Closed-form instances of the remainder identity, each written out with its own scalar formulas

Every case rebuilds f(x) from node data, a handful of integrals and explicit weights, without touching
the Wronskian solve or the exponential-polynomial machinery, so its residual is an independent check on
the generic reconstruct.

    MainCl  f^(n), any system, classical Hermite weights
    3       f^(n), n simple nodes, Lagrange weights
    4       any operator, one node of multiplicity n, the condensed single-integral form
    TF4     f^(n), one node: Taylor's formula with integral remainder
    1H      f'' - f, two simple nodes, sinh weights
    1T      f'' + f, two simple nodes, sin weights
    2HT     f'''' - f, two double nodes
    5H      f''' - f', three simple nodes, cosh weights
    5T      f''' + f', three simple nodes, cos weights
"""

import math
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel

from expinterp.charsol import characteristic_solution
from expinterp.config import config_retrieve
from expinterp.errors import DegenerateParameters, DimensionMismatch, UsageError
from expinterp.evaluators import FunctionEvaluator
from expinterp.hermite_basis import Slot, classical_hermite_basis, make_system
from expinterp.kernelcore import FROZEN, find_roots, make_operator
from expinterp.quadrature import adaptive_integrate
from expinterp.remainder import RemainderReport, taylor_reconstruct

CASES = ('MainCl', '3', '4', 'TF4', '1H', '1T', '2HT', '5H', '5T')
DEGENERACY_TOL = 1e-12

# (D_c f)(ts) from the derivative stack f(ts, n)
Image = Callable[[np.ndarray], np.ndarray]
# omega_c^(beta)(s) for a vector of s
Weight = Callable[[np.ndarray], np.ndarray]


class CorollaryParams(BaseModel):
    """
    the node set of a corollary, plus the order or operator where the case needs one
    """

    model_config = FROZEN

    nodes: tuple[float, ...]
    multiplicities: tuple[int, ...] | None = None
    n: int | None = None
    coefficients: tuple[complex, ...] | None = None


def _require_nodes(case_id: str, params: CorollaryParams, count: int):
    if len(params.nodes) != count:
        raise DimensionMismatch(f'Corollary {case_id} takes {count} nodes, got {len(params.nodes)}')
    if any(later <= earlier for earlier, later in zip(params.nodes, params.nodes[1:])):
        raise DegenerateParameters(f'Corollary {case_id} needs distinct increasing nodes, got {params.nodes}')


def _assemble(
    case_id: str,
    f: FunctionEvaluator,
    x: float,
    tol: float,
    image: Image,
    terms: list[tuple[Slot, float, int, Weight, float]],
) -> RemainderReport:
    """
    sum over (slot, node, beta, omega_c^(beta), chi(x)) of [f^(beta)(node) + int_node^x image * weight(node - t)] chi(x)
    """
    data, integrals, errors, chis = {}, {}, {}, {}
    converged = True
    for slot, node, beta, weight, chi in terms:
        result = adaptive_integrate(
            lambda ts, node=node, weight=weight: image(ts) * weight(node - ts),
            node,
            x,
            tol=tol,
        )
        data[slot] = complex(f(node, beta)[beta])
        integrals[slot] = complex(result.value)
        errors[slot] = result.error_estimate
        chis[slot] = complex(chi)
        converged = converged and result.converged

    interpolant_value = sum(data[slot] * chis[slot] for slot in chis)
    reconstructed = sum((data[slot] + integrals[slot]) * chis[slot] for slot in chis)
    true_value = complex(f.value(x))
    residual = abs(reconstructed - true_value)
    bound = (sum(abs(chi) for chi in chis.values()) + 1) * (tol + 1e-9 * (1 + abs(true_value)))
    return RemainderReport(
        x=x,
        form=f'corollary:{case_id}',
        interpolant_value=interpolant_value,
        chi_values=chis,
        per_node_integrals=integrals,
        integral_errors=errors,
        reconstructed=reconstructed,
        true_value=true_value,
        residual=residual,
        quadrature_error_estimate=sum(abs(chis[slot]) * errors[slot] for slot in chis),
        converged=converged,
        check_bound=bound,
        within_contract=residual <= bound,
    )


def _power_weight(power: int) -> Weight:
    """s -> s^power / power!"""
    return lambda s: s**power / math.factorial(power)


def _highest_derivative(f: FunctionEvaluator, n: int) -> Image:
    return lambda ts: f(ts, n)[n]


def _main_classical(params: CorollaryParams, f: FunctionEvaluator, x: float, tol: float) -> RemainderReport:
    mults = params.multiplicities or (1,) * len(params.nodes)
    sys = make_system(params.nodes, mults)
    n = sys.n
    hermite = classical_hermite_basis(sys)
    terms = [
        ((alpha, beta), sys.node(alpha), beta, _power_weight(n - 1 - beta), hermite.evaluate(alpha, beta, x))
        for alpha, beta in sys.slots()
    ]
    return _assemble('MainCl', f, x, tol, _highest_derivative(f, n), terms)


def _lagrange(params: CorollaryParams, f: FunctionEvaluator, x: float, tol: float) -> RemainderReport:
    nodes = params.nodes
    n = len(nodes)
    if len(set(nodes)) != n:
        raise DegenerateParameters(f'Corollary 3 needs pairwise distinct nodes, got {nodes}')
    terms = []
    for alpha, node in enumerate(nodes, start=1):
        chi = math.prod((x - other) / (node - other) for other in nodes if other != node)
        terms.append(((alpha, 0), node, 0, _power_weight(n - 1), chi))
    return _assemble('3', f, x, tol, _highest_derivative(f, n), terms)


def _taylor_formula(params: CorollaryParams, f: FunctionEvaluator, x: float, tol: float) -> RemainderReport:
    """one integral, f(x) = sum_j f^(j)(a)(x - a)^j / j! + int_a^x f^(n)(t)(x - t)^(n-1)/(n-1)! dt"""
    _require_nodes('TF4', params, 1)
    if not params.n:
        raise UsageError('Corollary TF4 needs the order n')
    (a,) = params.nodes
    n = params.n
    data = f(a, n - 1)
    chis = {(1, j): (x - a) ** j / math.factorial(j) for j in range(n)}
    result = adaptive_integrate(lambda ts: f(ts, n)[n] * (x - ts) ** (n - 1) / math.factorial(n - 1), a, x, tol=tol)

    interpolant_value = sum(complex(data[j]) * chis[(1, j)] for j in range(n))
    reconstructed = interpolant_value + complex(result.value)
    true_value = complex(f.value(x))
    residual = abs(reconstructed - true_value)
    bound = (sum(abs(chi) for chi in chis.values()) + 1) * (tol + 1e-9 * (1 + abs(true_value)))
    return RemainderReport(
        x=x,
        form='corollary:TF4',
        interpolant_value=interpolant_value,
        chi_values={slot: complex(chi) for slot, chi in chis.items()},
        condensed_integral=complex(result.value),
        reconstructed=reconstructed,
        true_value=true_value,
        residual=residual,
        quadrature_error_estimate=result.error_estimate,
        converged=result.converged,
        check_bound=bound,
        within_contract=residual <= bound,
    )


def _general_taylor(params: CorollaryParams, f: FunctionEvaluator, x: float, tol: float) -> RemainderReport:
    _require_nodes('4', params, 1)
    if not params.coefficients:
        raise UsageError('Corollary 4 needs the operator coefficients')
    op = make_operator(list(params.coefficients))
    cs = characteristic_solution(op, find_roots(op))
    report = taylor_reconstruct(op, cs, params.nodes[0], f, x, tol)
    return report.model_copy(update={'form': 'corollary:4'})


def _two_node(
    case_id: str,
    odd: Callable,
    sign: int,
    params: CorollaryParams,
    f: FunctionEvaluator,
    x: float,
    tol: float,
) -> RemainderReport:
    """1H / 1T: chi_1 = odd(x - a_2) / odd(a_1 - a_2), integrand (f'' + sign f)(t) odd(a_alpha - t)"""
    _require_nodes(case_id, params, 2)
    a1, a2 = params.nodes
    if abs(odd(a1 - a2)) <= DEGENERACY_TOL:
        raise DegenerateParameters(f'Corollary {case_id} needs {odd.__name__}(a_1 - a_2) != 0, nodes {params.nodes}')

    def image(ts: np.ndarray) -> np.ndarray:
        stack = f(ts, 2)
        return stack[2] + sign * stack[0]

    terms = [
        ((1, 0), a1, 0, odd, odd(x - a2) / odd(a1 - a2)),
        ((2, 0), a2, 0, odd, odd(x - a1) / odd(a2 - a1)),
    ]
    return _assemble(case_id, f, x, tol, image, terms)


def _biharmonic(params: CorollaryParams, f: FunctionEvaluator, x: float, tol: float) -> RemainderReport:
    _require_nodes('2HT', params, 2)
    a1, a2 = params.nodes
    d = a1 - a2
    k = 2 - 2 * math.cosh(d) * math.cos(d)
    if abs(k) <= DEGENERACY_TOL:
        raise DegenerateParameters(f'Corollary 2HT needs cosh(a_1 - a_2) cos(a_1 - a_2) != 1, nodes {params.nodes}')

    even = math.cosh(d) - math.cos(d)
    plus = math.sinh(d) + math.sin(d)
    minus = math.sinh(d) - math.sin(d)
    u, v = x - a2, x - a1
    ch_u, c_u, sh_u, s_u = math.cosh(u), math.cos(u), math.sinh(u), math.sin(u)
    ch_v, c_v, sh_v, s_v = math.cosh(v), math.cos(v), math.sinh(v), math.sin(v)
    chis = {
        (1, 0): (even * (ch_u - c_u) - plus * (sh_u - s_u)) / k,
        (1, 1): (even * (sh_u - s_u) - minus * (ch_u - c_u)) / k,
        (2, 0): (even * (ch_v - c_v) - plus * (s_v - sh_v)) / k,
        (2, 1): (even * (sh_v - s_v) - minus * (c_v - ch_v)) / k,
    }
    weights = {0: lambda s: (np.sinh(s) - np.sin(s)) / 2, 1: lambda s: (np.cosh(s) - np.cos(s)) / 2}

    def image(ts: np.ndarray) -> np.ndarray:
        stack = f(ts, 4)
        return stack[4] - stack[0]

    terms = [
        ((alpha, beta), node, beta, weights[beta], chis[(alpha, beta)])
        for alpha, node in ((1, a1), (2, a2))
        for beta in (0, 1)
    ]
    return _assemble('2HT', f, x, tol, image, terms)


def _three_node(
    case_id: str,
    even: Callable,
    sign: int,
    params: CorollaryParams,
    f: FunctionEvaluator,
    x: float,
    tol: float,
) -> RemainderReport:
    """
    5H / 5T: chi_alpha(x) = (even(x - m) - even(h)) / (even(a_alpha - m) - even(h)) with m, h the midpoint
    and half-gap of the other two nodes; integrand (f''' + sign f')(t) times -sign (even(a_alpha - t) - 1)
    """
    _require_nodes(case_id, params, 3)
    nodes = params.nodes
    terms = []
    for alpha in range(3):
        own, first, second = nodes[alpha], nodes[(alpha + 1) % 3], nodes[(alpha + 2) % 3]
        mid, half = (first + second) / 2, (first - second) / 2
        denominator = even(own - mid) - even(half)
        if abs(denominator) <= DEGENERACY_TOL:
            raise DegenerateParameters(f'Corollary {case_id} is degenerate for nodes {nodes}')
        chi = (even(x - mid) - even(half)) / denominator
        terms.append(((alpha + 1, 0), own, 0, lambda s: -sign * (even(s) - 1), chi))

    def image(ts: np.ndarray) -> np.ndarray:
        stack = f(ts, 3)
        return stack[3] + sign * stack[1]

    return _assemble(case_id, f, x, tol, image, terms)


def corollary_suite(
    case_id: str,
    params: CorollaryParams,
    f: FunctionEvaluator,
    x: float,
    tol: float | None = None,
) -> RemainderReport:
    """
    evaluate one corollary's right-hand side at x and compare against f(x)

    Args:
        case_id (str): one of CASES
        params (CorollaryParams): nodes, and the order/operator where the case needs them
        f (FunctionEvaluator): the function
        x (float): evaluation point
        tol (float): quadrature tolerance

    Returns:
        a RemainderReport whose form names the corollary
    """
    tol = tol if tol is not None else float(config_retrieve(['remainder', 'default_tol'], 1e-10))
    if case_id == 'MainCl':
        return _main_classical(params, f, x, tol)
    if case_id == '3':
        return _lagrange(params, f, x, tol)
    if case_id == '4':
        return _general_taylor(params, f, x, tol)
    if case_id == 'TF4':
        return _taylor_formula(params, f, x, tol)
    if case_id == '1H':
        return _two_node('1H', np.sinh, -1, params, f, x, tol)
    if case_id == '1T':
        return _two_node('1T', np.sin, 1, params, f, x, tol)
    if case_id == '2HT':
        return _biharmonic(params, f, x, tol)
    if case_id == '5H':
        return _three_node('5H', np.cosh, -1, params, f, x, tol)
    if case_id == '5T':
        return _three_node('5T', np.cos, 1, params, f, x, tol)
    raise UsageError(f'Unknown corollary {case_id!r}, choose from {CASES}')
