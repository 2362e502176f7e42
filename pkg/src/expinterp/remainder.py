"""
Interpolation with an exact integral remainder

For f in C^n and x in the interval,

    f(x) = sum_(alpha, beta) [f^(beta)(a_alpha) + R_(alpha, beta)(x)] chi_(alpha, beta)(x)
    R_(alpha, beta)(x) = int_(a_alpha)^x (D_c f)(t) omega_c^(beta)(a_alpha - t) dt

This module evaluates the right-hand side with adaptive quadrature and reports how far it lands from f(x),
alongside the single-node (condensed) form and the classical polynomial form with its Green kernel.
"""

from math import factorial

import numpy as np
from pydantic import BaseModel

from expinterp.charsol import CharacteristicSolution, derivative_of
from expinterp.config import config_retrieve
from expinterp.errors import DimensionMismatch, UsageError
from expinterp.evaluators import FunctionEvaluator
from expinterp.hermite_basis import (
    BasisLike,
    HermitePolynomialBasis,
    InterpolationSystem,
    Slot,
    classical_hermite_basis,
    piece_index,
)
from expinterp.kernelcore import FROZEN, DifferentialOperatorSpec
from expinterp.quadrature import QuadratureResult, adaptive_integrate
from expinterp.static_values import get_logger
from expinterp.utils import ordered_map


class RemainderReport(BaseModel):
    """
    one evaluation point: the node data part, the integrals, and how well they reassemble f(x)
    """

    model_config = FROZEN

    x: float
    form: str = 'main'
    interpolant_value: complex
    chi_values: dict[Slot, complex] = {}
    per_node_integrals: dict[Slot, complex] = {}
    integral_errors: dict[Slot, float] = {}
    condensed_integral: complex | None = None
    reconstructed: complex
    true_value: complex
    residual: float
    quadrature_error_estimate: float
    converged: bool = True
    check_bound: float
    within_contract: bool


class GreenKernel(BaseModel):
    """
    G(x, t) for the polynomial operator f^(n), built on the classical Hermite basis
    """

    model_config = FROZEN

    system: InterpolationSystem
    basis: HermitePolynomialBasis

    def piece_index(self, t: float) -> int:
        return piece_index(self.system, t)


def _default_tol(tol: float | None) -> float:
    return tol if tol is not None else float(config_retrieve(['remainder', 'default_tol'], 1e-10))


def _check_bound(weights: list[complex], tol: float, true_value: complex) -> float:
    """K (tol + 1e-9 (1 + |f(x)|)) with K = sum |weights| + 1"""
    scale = float(sum(abs(weight) for weight in weights)) + 1
    return scale * (tol + 1e-9 * (1 + abs(true_value)))


def _node_data(sys: InterpolationSystem, f: FunctionEvaluator) -> dict[Slot, complex]:
    data = {}
    for alpha, (node, mult) in enumerate(zip(sys.nodes, sys.multiplicities), start=1):
        values = f(node, mult - 1)
        for beta in range(mult):
            data[(alpha, beta)] = complex(values[beta])
    return data


def remainder_integral(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    sys: InterpolationSystem,
    f: FunctionEvaluator,
    alpha: int,
    beta: int,
    x: float,
    tol: float | None = None,
    strict: bool = False,
) -> QuadratureResult:
    """
    int_(a_alpha)^x (D_c f)(t) omega_c^(beta)(a_alpha - t) dt, signed

    Args:
        op (DifferentialOperatorSpec): the operator
        cs (CharacteristicSolution): its characteristic solution
        sys (InterpolationSystem): the system a_alpha belongs to
        f (FunctionEvaluator): supplies f ... f^(n)
        alpha (int): node index, 1-based
        beta (int): derivative order at that node
        x (float): the evaluation point
        tol (float): quadrature tolerance
        strict (bool): raise MaxDepthExceeded rather than flag it

    Returns:
        QuadratureResult, value first and error estimate second
    """
    if not (1 <= alpha <= len(sys.nodes) and 0 <= beta < sys.multiplicity(alpha)):
        raise DimensionMismatch(f'Slot ({alpha}, {beta}) is not part of the system')
    node = sys.node(alpha)
    weight = derivative_of(cs._require_ep(), beta)

    def integrand(ts: np.ndarray) -> np.ndarray:
        return f.operator_image(op.c, ts) * weight.evaluate_many(node - ts)

    return adaptive_integrate(integrand, node, x, tol=_default_tol(tol), strict=strict)


def reconstruct(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    basis: BasisLike,
    f: FunctionEvaluator,
    x: float,
    tol: float | None = None,
    strict: bool = False,
    parallel: bool = True,
) -> RemainderReport:
    """
    node data plus integrals, combined with the standard basis at x

    The per-slot integrals are independent and run on the worker pool when f is thread safe;
    they are summed in slot order either way.

    Args:
        op (DifferentialOperatorSpec): the operator
        cs (CharacteristicSolution): its characteristic solution
        basis (BasisLike): the standard basis of ker(D_c) for the system
        f (FunctionEvaluator): the function being reconstructed
        x (float): the evaluation point
        tol (float): quadrature tolerance per integral
        strict (bool): raise on quadrature non-convergence
        parallel (bool): allow the worker pool

    Returns:
        a RemainderReport
    """
    tol = _default_tol(tol)
    sys = basis.system
    if sys.n != op.n:
        raise DimensionMismatch(f'Basis has dimension {sys.n}, operator has order {op.n}')
    slots = sys.slots()
    data = _node_data(sys, f)

    results = ordered_map(
        lambda slot: remainder_integral(op, cs, sys, f, slot[0], slot[1], x, tol, strict),
        slots,
        parallel=parallel and f.thread_safe,
    )
    chi = {slot: complex(basis.evaluate(slot[0], slot[1], x)) for slot in slots}
    integrals = {slot: complex(result.value) for slot, result in zip(slots, results)}

    interpolant_value = sum(data[slot] * chi[slot] for slot in slots)
    reconstructed = sum((data[slot] + integrals[slot]) * chi[slot] for slot in slots)
    true_value = complex(f.value(x))
    residual = abs(reconstructed - true_value)
    bound = _check_bound(list(chi.values()), tol, true_value)

    get_logger().debug(f'Reconstructed f({x}) with residual {residual:.3g}')
    return RemainderReport(
        x=x,
        interpolant_value=interpolant_value,
        chi_values=chi,
        per_node_integrals=integrals,
        integral_errors={slot: result.error_estimate for slot, result in zip(slots, results)},
        reconstructed=reconstructed,
        true_value=true_value,
        residual=residual,
        quadrature_error_estimate=sum(abs(chi[slot]) * result.error_estimate for slot, result in zip(slots, results)),
        converged=all(result.converged for result in results),
        check_bound=bound,
        within_contract=residual <= bound,
    )


def reconstruct_many(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    basis: BasisLike,
    f: FunctionEvaluator,
    xs: list[float],
    tol: float | None = None,
    strict: bool = False,
) -> list[RemainderReport]:
    """one report per x, in the order given; the pool works across points rather than slots"""
    return ordered_map(
        lambda x: reconstruct(op, cs, basis, f, float(x), tol, strict, parallel=False),
        xs,
        parallel=f.thread_safe,
    )


def taylor_reconstruct(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    a: float,
    f: FunctionEvaluator,
    x: float,
    tol: float | None = None,
    strict: bool = False,
) -> RemainderReport:
    """
    the single-node form with one integral:
    f(x) = sum_beta f^(beta)(a) sum_i c_(i+beta+1) omega_c^(i)(x - a) + int_a^x (D_c f)(t) omega_c(x - t) dt

    Args:
        op (DifferentialOperatorSpec): the operator
        cs (CharacteristicSolution): its characteristic solution
        a (float): the node
        f (FunctionEvaluator): the function
        x (float): the evaluation point
        tol (float): quadrature tolerance
        strict (bool): raise on quadrature non-convergence

    Returns:
        a RemainderReport of form 'taylor'
    """
    tol = _default_tol(tol)
    n = op.n
    c = op.c
    ep = cs._require_ep()
    data = f(a, n - 1)
    omega = ep.evaluate_derivatives(x - a, n - 1)
    chi = {(1, beta): complex(sum(c[i + beta + 1] * omega[i] for i in range(n - beta))) for beta in range(n)}

    def integrand(ts: np.ndarray) -> np.ndarray:
        return f.operator_image(c, ts) * ep.evaluate_many(x - ts)

    result = adaptive_integrate(integrand, a, x, tol=tol, strict=strict)
    interpolant_value = sum(complex(data[beta]) * chi[(1, beta)] for beta in range(n))
    reconstructed = interpolant_value + complex(result.value)
    true_value = complex(f.value(x))
    residual = abs(reconstructed - true_value)
    bound = _check_bound(list(chi.values()), tol, true_value)
    return RemainderReport(
        x=x,
        form='taylor',
        interpolant_value=interpolant_value,
        chi_values=chi,
        condensed_integral=complex(result.value),
        reconstructed=reconstructed,
        true_value=true_value,
        residual=residual,
        quadrature_error_estimate=result.error_estimate,
        converged=result.converged,
        check_bound=bound,
        within_contract=residual <= bound,
    )


def integration_by_parts_residual(
    cs: CharacteristicSolution,
    f: FunctionEvaluator,
    a: float,
    beta: int,
    k: int,
    x: float,
    tol: float | None = None,
) -> float:
    """
    |LHS - RHS| for
    int_a^x f^(k)(t) w^(beta)(a-t) dt
        = sum_(i=1)^k [f^(k-i)(x) w^(beta+i-1)(a-x) - f^(k-i)(a) w^(beta+i-1)(0)] + int_a^x f(t) w^(k+beta)(a-t) dt
    with w = omega_c
    """
    tol = _default_tol(tol)
    ep = cs._require_ep()
    low, high = derivative_of(ep, beta), derivative_of(ep, beta + k)

    lhs = adaptive_integrate(lambda ts: f(ts, k)[k] * low.evaluate_many(a - ts), a, x, tol=tol).value
    tail = adaptive_integrate(lambda ts: f(ts, 0)[0] * high.evaluate_many(a - ts), a, x, tol=tol).value
    at_x, at_a = f(x, k), f(a, k)
    w_shift = ep.evaluate_derivatives(a - x, beta + k)
    w_zero = ep.evaluate_derivatives(0.0, beta + k)
    boundary = sum(
        at_x[k - i] * w_shift[beta + i - 1] - at_a[k - i] * w_zero[beta + i - 1] for i in range(1, k + 1)
    )
    return float(abs(lhs - boundary - tail))


# region: the classical polynomial form
def make_green_kernel(sys: InterpolationSystem) -> GreenKernel:
    return GreenKernel(system=sys, basis=classical_hermite_basis(sys))


def greens_kernel_values(gk: GreenKernel, x: float, ts: np.ndarray) -> np.ndarray:
    """
    G(x, t) over an array of t

    For t <= x it sums the terms of the nodes below t, for t > x it subtracts those of the nodes at
    or above t, each term being (a_i - t)^(n-j-1) / (n-j-1)! H_(i,j)(x) for j < n_i.
    """
    sys = gk.system
    n = sys.n
    ts = np.asarray(ts, dtype=float)
    total = np.zeros(ts.shape)
    below_x = ts <= x
    for alpha, (node, mult) in enumerate(zip(sys.nodes, sys.multiplicities), start=1):
        node_below_t = node < ts
        lower = node_below_t & below_x
        upper = ~node_below_t & ~below_x
        for j in range(mult):
            term = (node - ts) ** (n - j - 1) / factorial(n - j - 1) * gk.basis.evaluate(alpha, j, x)
            total += np.where(lower, term, 0.0) - np.where(upper, term, 0.0)
    return total


def greens_kernel_value(gk: GreenKernel, x: float, t: float) -> float:
    return float(greens_kernel_values(gk, x, np.asarray([t]))[0])


def green_integral(
    gk: GreenKernel,
    f: FunctionEvaluator,
    x: float,
    tol: float | None = None,
    strict: bool = False,
) -> QuadratureResult:
    """
    int f^(n)(t) G(x, t) dt over [min(a_1, x), max(a_l, x)], split at every node and at x
    """
    tol = _default_tol(tol)
    n = gk.system.n
    breaks = sorted({*gk.system.nodes, x})
    pieces = [
        adaptive_integrate(
            lambda ts: f(ts, n)[n] * greens_kernel_values(gk, x, ts),
            left,
            right,
            tol=tol,
            strict=strict,
        )
        for left, right in zip(breaks, breaks[1:])
    ]
    return QuadratureResult(
        value=sum(piece.value for piece in pieces),
        error_estimate=sum(piece.error_estimate for piece in pieces),
        converged=all(piece.converged for piece in pieces),
        panels=sum(piece.panels for piece in pieces),
    )


def classical_reconstruct(
    sys: InterpolationSystem,
    f: FunctionEvaluator,
    x: float,
    tol: float | None = None,
    strict: bool = False,
) -> RemainderReport:
    """
    sum f^(beta)(a_alpha) H_(alpha, beta)(x) + int f^(n)(t) G(x, t) dt
    """
    tol = _default_tol(tol)
    gk = make_green_kernel(sys)
    slots = sys.slots()
    data = _node_data(sys, f)
    chi = {slot: complex(gk.basis.evaluate(slot[0], slot[1], x)) for slot in slots}
    result = green_integral(gk, f, x, tol, strict)

    interpolant_value = sum(data[slot] * chi[slot] for slot in slots)
    reconstructed = interpolant_value + complex(result.value)
    true_value = complex(f.value(x))
    residual = abs(reconstructed - true_value)
    bound = _check_bound(list(chi.values()), tol, true_value)
    return RemainderReport(
        x=x,
        form='classical',
        interpolant_value=interpolant_value,
        chi_values=chi,
        condensed_integral=complex(result.value),
        reconstructed=reconstructed,
        true_value=true_value,
        residual=residual,
        quadrature_error_estimate=result.error_estimate,
        converged=result.converged,
        check_bound=bound,
        within_contract=residual <= bound,
    )


def require_polynomial_operator(op: DifferentialOperatorSpec):
    """the Green-kernel form exists only for f^(n)"""
    if np.any(op.c[:-1] != 0):
        raise UsageError('The Green-kernel form needs the operator f^(n), c = (0, ..., 0, 1)')


# endregion
