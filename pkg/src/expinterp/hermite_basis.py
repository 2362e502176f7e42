"""
Interpolation systems and their standard bases

An interpolation system fixes strictly increasing nodes a_1 < ... < a_l and, at each node a_alpha,
how many derivatives (n_alpha) are matched. The standard basis chi_(alpha, beta) of a kernel is
its dual basis: chi_(alpha, beta)^(j)(a_i) = delta_(i, alpha) delta_(j, beta).

Node indices (alpha) are 1-based throughout, derivative orders (beta) are 0-based.
"""

import warnings
from bisect import bisect_left
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from math import factorial
from typing import Protocol, runtime_checkable

import numpy as np
from numpy.polynomial import polynomial as npoly
from pydantic import BaseModel, computed_field, model_validator
from scipy.linalg import lu_factor, lu_solve

from expinterp.charsol import CharacteristicSolution, characteristic_solution
from expinterp.config import config_retrieve
from expinterp.errors import (
    DimensionMismatch,
    EmptySystem,
    IllConditioned,
    MissingData,
    NonIncreasingNodes,
    NonPositiveMultiplicity,
    SingularSystem,
)
from expinterp.kernelcore import (
    FROZEN,
    DifferentialOperatorSpec,
    ExponentialPolynomial,
    RootDecomposition,
    fundamental_system,
    kernel_coordinates,
)
from expinterp.polynomials import from_roots, series_inverse, taylor_shift
from expinterp.static_values import get_logger

Slot = tuple[int, int]


def _tol(key: str, default: float) -> float:
    return float(config_retrieve(['hermite_basis', key], default))


class InterpolationSystem(BaseModel):
    """
    nodes a_1 < ... < a_l with multiplicities n_1 ... n_l
    """

    model_config = FROZEN

    nodes: tuple[float, ...]
    multiplicities: tuple[int, ...]

    @model_validator(mode='after')
    def check_system(self) -> 'InterpolationSystem':
        if not self.nodes:
            raise EmptySystem('An interpolation system needs at least one node')
        if len(self.nodes) != len(self.multiplicities):
            raise DimensionMismatch(f'{len(self.nodes)} nodes but {len(self.multiplicities)} multiplicities')
        if any(mult < 1 for mult in self.multiplicities):
            raise NonPositiveMultiplicity(f'Multiplicities must be positive, got {self.multiplicities}')
        if any(later <= earlier for earlier, later in zip(self.nodes, self.nodes[1:])):
            raise NonIncreasingNodes(f'Nodes must be strictly increasing, got {self.nodes}')
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def n(self) -> int:
        """dimension, the total number of interpolation conditions"""
        return sum(self.multiplicities)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def order(self) -> int:
        return max(self.multiplicities) - 1

    @property
    def size(self) -> int:
        return self.n

    def node(self, alpha: int) -> float:
        return self.nodes[alpha - 1]

    def multiplicity(self, alpha: int) -> int:
        return self.multiplicities[alpha - 1]

    def slots(self) -> list[Slot]:
        """(alpha, beta) pairs, node-major, derivative-minor"""
        return [(alpha, beta) for alpha, mult in enumerate(self.multiplicities, start=1) for beta in range(mult)]

    def interval(self) -> tuple[float, float]:
        return self.nodes[0], self.nodes[-1]

    def center(self) -> float:
        return (self.nodes[0] + self.nodes[-1]) / 2


def make_system(a: Sequence[float], nvec: Sequence[int]) -> InterpolationSystem:
    return InterpolationSystem(nodes=tuple(float(node) for node in a), multiplicities=tuple(int(m) for m in nvec))


@runtime_checkable
class BasisLike(Protocol):
    """
    anything which can evaluate chi_(alpha, beta) and its derivatives for a given system
    """

    system: InterpolationSystem

    def derivative_values(self, alpha: int, beta: int, t: float | np.ndarray, max_order: int) -> np.ndarray: ...

    def evaluate(self, alpha: int, beta: int, t: float, order: int = 0) -> complex | float: ...


class StandardBasis(BaseModel):
    """
    chi_(alpha, beta) as exponential polynomials, with the Wronskian of the system that produced them
    """

    model_config = FROZEN

    system: InterpolationSystem
    chis: dict[Slot, ExponentialPolynomial]
    wronskian: complex
    condition_estimate: float
    kind: str = 'solved'

    @model_validator(mode='after')
    def check_cardinality(self) -> 'StandardBasis':
        if sorted(self.chis) != sorted(self.system.slots()):
            raise DimensionMismatch(f'Basis holds slots {sorted(self.chis)}, system needs {self.system.slots()}')
        return self

    def derivative_values(self, alpha: int, beta: int, t: float | np.ndarray, max_order: int) -> np.ndarray:
        return self.chis[(alpha, beta)].derivative_values(t, max_order)

    def evaluate(self, alpha: int, beta: int, t: float, order: int = 0) -> complex | float:
        value = self.derivative_values(alpha, beta, float(t), order)[order]
        return float(value) if self.chis[(alpha, beta)].real else complex(value)


class Interpolant(BaseModel):
    """
    omega = sum f^(beta)(a_alpha) chi_(alpha, beta), the unique kernel element matching the data
    """

    model_config = FROZEN

    basis: StandardBasis
    data: dict[Slot, complex]
    ep: ExponentialPolynomial

    def evaluate(self, t: float) -> complex | float:
        return self.ep.evaluate(t)


class HermitePolynomialBasis(BaseModel):
    """
    the classical Hermite basis polynomials H_(alpha, beta), each held in powers of (x - center)
    """

    model_config = FROZEN

    system: InterpolationSystem
    center: float
    polynomials: dict[Slot, tuple[float, ...]]
    node_poly: tuple[float, ...]

    def _coefficients(self, alpha: int, beta: int) -> np.ndarray:
        return np.asarray(self.polynomials[(alpha, beta)], dtype=float)

    def derivative_values(self, alpha: int, beta: int, t: float | np.ndarray, max_order: int) -> np.ndarray:
        shifted = np.asarray(t, dtype=float) - self.center
        coeffs = self._coefficients(alpha, beta)
        values = []
        for order in range(max_order + 1):
            values.append(npoly.polyval(shifted, coeffs))
            coeffs = npoly.polyder(coeffs) if len(coeffs) > 1 else np.zeros(1)
        return np.asarray(values)

    def evaluate(self, alpha: int, beta: int, t: float, order: int = 0) -> float:
        return float(self.derivative_values(alpha, beta, float(t), order)[order])

    def node_polynomial(self, x: float) -> float:
        return float(npoly.polyval(x - self.center, np.asarray(self.node_poly)))


@dataclass(frozen=True)
class WronskianFactorisation:
    """
    LU factors of the column-equilibrated evaluation matrix, and what was learned from them
    """

    lu: np.ndarray
    pivots: np.ndarray
    column_scale: np.ndarray
    determinant: complex
    condition_estimate: float
    singular: bool

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return lu_solve((self.lu, self.pivots), rhs) / self.column_scale[:, None]


def evaluation_matrix(sys: InterpolationSystem, fundamental: Sequence[ExponentialPolynomial]) -> np.ndarray:
    """
    entry [slot, k] is omega_k^(beta)(a_alpha), slots node-major then derivative order
    """
    if len(fundamental) != sys.n:
        raise DimensionMismatch(f'System of dimension {sys.n} needs {sys.n} functions, got {len(fundamental)}')
    matrix = np.zeros((sys.n, sys.n), dtype=complex)
    for column, omega in enumerate(fundamental):
        row = 0
        for node, mult in zip(sys.nodes, sys.multiplicities):
            matrix[row : row + mult, column] = omega.evaluate_derivatives(node, mult - 1)
            row += mult
    return matrix


def factorise(matrix: np.ndarray) -> WronskianFactorisation:
    """
    LU with partial pivoting after scaling each column to unit max-norm

    The system counts as singular when the scaled determinant is at most
    singular_rel_tol * (max row norm)^n.
    """
    n = matrix.shape[0]
    column_scale = np.max(np.abs(matrix), axis=0)
    if np.any(column_scale == 0):
        return WronskianFactorisation(matrix, np.arange(n), np.ones(n), 0j, np.inf, True)

    scaled = matrix / column_scale
    lu, pivots = lu_factor(scaled)
    swaps = int(np.sum(pivots != np.arange(n)))
    scaled_det = complex(np.prod(np.diag(lu))) * (-1) ** swaps
    determinant = scaled_det * complex(np.prod(column_scale))

    row_scale = float(np.max(np.linalg.norm(scaled, axis=1)))
    singular = abs(scaled_det) <= _tol('singular_rel_tol', 1e-12) * row_scale**n
    condition = np.inf if singular else float(np.linalg.cond(scaled))
    return WronskianFactorisation(lu, pivots, column_scale, determinant, condition, singular)


def wronskian(sys: InterpolationSystem, fundamental: Sequence[ExponentialPolynomial]) -> complex:
    """
    the generalised Wronskian of n kernel functions at the system's slots; zero is a valid answer
    """
    factors = factorise(evaluation_matrix(sys, fundamental))
    get_logger().debug(f'Wronskian {factors.determinant}, condition estimate {factors.condition_estimate:.3g}')
    return factors.determinant


def _centered_fundamental(rd: RootDecomposition, center: float) -> list[ExponentialPolynomial]:
    """(t - center)^j exp(lambda (t - center)), better scaled near the nodes than t^j exp(lambda t)"""
    return [omega.translate(-center) for omega in fundamental_system(rd)]


def _warn_if_ill_conditioned(factors: WronskianFactorisation):
    limit = _tol('ill_conditioned', 1e12)
    if factors.condition_estimate > limit:
        message = f'Wronskian system condition estimate {factors.condition_estimate:.3g} exceeds {limit:.3g}'
        get_logger().warning(message)
        warnings.warn(message, IllConditioned, stacklevel=3)


def _combine(weights: np.ndarray, functions: Sequence[ExponentialPolynomial], real: bool) -> ExponentialPolynomial:
    """
    sum of weight * omega; a real result keeps only the real part, dropping the conjugate-asymmetric
    rounding the complex solve leaves in the weights
    """
    combined = ExponentialPolynomial.from_pairs(
        [(rate, coeffs * weight) for weight, omega in zip(weights, functions) for rate, coeffs in omega.pairs()],
    )
    return combined.real_part() if real else combined


def standard_basis(op: DifferentialOperatorSpec, rd: RootDecomposition, sys: InterpolationSystem) -> StandardBasis:
    """
    chi_(alpha, beta) by solving against the Wronskian matrix, one factorisation for all n right-hand sides

    Args:
        op (DifferentialOperatorSpec): the operator
        rd (RootDecomposition): its roots
        sys (InterpolationSystem): nodes and multiplicities, sys.n must equal op.n

    Returns:
        the StandardBasis
    """
    if sys.n != op.n:
        raise DimensionMismatch(f'System dimension {sys.n} does not match operator order {op.n}')

    fundamental = _centered_fundamental(rd, sys.center())
    factors = factorise(evaluation_matrix(sys, fundamental))
    if factors.singular:
        raise SingularSystem(
            f'Wronskian of nodes {sys.nodes} with multiplicities {sys.multiplicities} vanishes for this kernel '
            f'(W = {factors.determinant:.3g}); the system is not uniquely solvable',
        )
    _warn_if_ill_conditioned(factors)

    weights = factors.solve(np.eye(sys.n, dtype=complex))
    chis = {slot: _combine(weights[:, column], fundamental, op.is_real) for column, slot in enumerate(sys.slots())}
    basis = StandardBasis(
        system=sys,
        chis=chis,
        wronskian=factors.determinant,
        condition_estimate=factors.condition_estimate,
    )
    _check_kronecker(basis)
    get_logger().info(f'Standard basis built for nodes {sys.nodes}, multiplicities {sys.multiplicities}')
    return basis


def taylor_basis(
    op: DifferentialOperatorSpec,
    rd: RootDecomposition,
    a: float,
    cs: CharacteristicSolution | None = None,
) -> StandardBasis:
    """
    the single-node basis chi_(1, j)(t) = sum_(i=0)^(n-j-1) c_(i+j+1) omega_c^(i)(t - a), no linear solve

    Args:
        op (DifferentialOperatorSpec): the operator
        rd (RootDecomposition): its roots
        a (float): the node
        cs (CharacteristicSolution): omega_c, built from rd when not supplied

    Returns:
        the StandardBasis for the system ((a), (n))
    """
    cs = cs or characteristic_solution(op, rd)
    n = op.n
    sys = make_system([a], [n])
    derivatives = [cs.derivative(i) for i in range(n)]
    chis = {
        (1, j): _combine(op.c[j + 1 :].astype(complex), derivatives[: n - j], op.is_real).translate(-a)
        for j in range(n)
    }
    factors = factorise(evaluation_matrix(sys, _centered_fundamental(rd, a)))
    basis = StandardBasis(
        system=sys,
        chis=chis,
        wronskian=factors.determinant,
        condition_estimate=factors.condition_estimate,
        kind='taylor',
    )
    _check_kronecker(basis)
    return basis


def kronecker_deviation(basis: BasisLike) -> float:
    """
    max over all (i, j, alpha, beta) of |chi_(alpha, beta)^(j)(a_i) - delta_(i, alpha) delta_(j, beta)|
    """
    sys = basis.system
    worst = 0.0
    for alpha, beta in sys.slots():
        for i, (node, mult) in enumerate(zip(sys.nodes, sys.multiplicities), start=1):
            values = basis.derivative_values(alpha, beta, node, mult - 1)
            target = np.zeros(mult)
            if i == alpha:
                target[beta] = 1
            worst = max(worst, float(np.max(np.abs(values - target))))
    return worst


def _check_kronecker(basis: BasisLike):
    deviation = kronecker_deviation(basis)
    limit = _tol('basis_tol', 1e-8)
    if deviation > limit:
        message = f'Basis deviates from the Kronecker conditions by {deviation:.3g} (limit {limit:.3g})'
        get_logger().warning(message)
        warnings.warn(message, IllConditioned, stacklevel=3)


def interpolate(basis: StandardBasis, data: Mapping[Slot, complex]) -> Interpolant:
    """
    combine the basis with the slot data f^(beta)(a_alpha)

    Args:
        basis (StandardBasis): the standard basis
        data (dict): one value per (alpha, beta) slot

    Returns:
        the Interpolant
    """
    slots = basis.system.slots()
    missing = [slot for slot in slots if slot not in data]
    if missing:
        raise MissingData(f'No interpolation data for slots {missing}')
    unexpected = sorted(set(data) - set(slots))
    if unexpected:
        raise DimensionMismatch(f'Data given for slots {unexpected}, which are not part of the system')

    values = np.asarray([data[slot] for slot in slots], dtype=complex)
    real = all(basis.chis[slot].real for slot in slots) and not np.any(values.imag)
    ep = _combine(values, [basis.chis[slot] for slot in slots], real)
    return Interpolant(basis=basis, data={slot: complex(data[slot]) for slot in slots}, ep=ep)


def interpolate_function(basis: StandardBasis, f: Callable[[float, int], np.ndarray]) -> Interpolant:
    """
    sample f^(beta)(a_alpha) from a derivative evaluator and interpolate
    """
    sys = basis.system
    data = {}
    for alpha, (node, mult) in enumerate(zip(sys.nodes, sys.multiplicities), start=1):
        values = f(node, mult - 1)
        for beta in range(mult):
            data[(alpha, beta)] = complex(values[beta])
    return interpolate(basis, data)


def coordinates(interpolant: Interpolant, rd: RootDecomposition) -> np.ndarray:
    """
    coordinates mu of the interpolant in the fundamental system t^j exp(lambda_i t)
    """
    return kernel_coordinates(interpolant.ep, rd)


def solve_coordinates(
    sys: InterpolationSystem,
    fundamental: Sequence[ExponentialPolynomial],
    data: Mapping[Slot, complex],
) -> np.ndarray:
    """
    the same coordinates by solving the Wronskian system directly against the slot data
    """
    factors = factorise(evaluation_matrix(sys, fundamental))
    if factors.singular:
        raise SingularSystem(f'Wronskian vanishes for nodes {sys.nodes}, coordinates are not unique')
    rhs = np.asarray([data[slot] for slot in sys.slots()], dtype=complex)
    return factors.solve(rhs[:, None])[:, 0]


def classical_hermite_basis(sys: InterpolationSystem) -> HermitePolynomialBasis:
    """
    H_(alpha, beta)(x) = q_alpha(x) (x - a_alpha)^beta / beta! * sum_(k <= n_alpha-1-beta) s_k (x - a_alpha)^k

    where q_alpha = node_poly / (x - a_alpha)^n_alpha and s_k are the series coefficients of 1 / q_alpha
    about a_alpha. Everything is computed in powers of (x - center) for conditioning.
    """
    center = sys.center()
    shifted_nodes = [node - center for node in sys.nodes]
    node_poly = from_roots(list(zip(shifted_nodes, sys.multiplicities))).real

    polynomials: dict[Slot, tuple[float, ...]] = {}
    for alpha, (node, mult) in enumerate(zip(shifted_nodes, sys.multiplicities), start=1):
        others = [pair for index, pair in enumerate(zip(shifted_nodes, sys.multiplicities), start=1) if index != alpha]
        cofactor = from_roots(others).real
        series = series_inverse(taylor_shift(cofactor, node), mult).real
        for beta in range(mult):
            local = np.zeros(mult)
            local[beta:] = series[: mult - beta] / factorial(beta)
            product = npoly.polymul(cofactor, taylor_shift(local, -node).real)
            padded = np.zeros(sys.n)
            padded[: len(product)] = product[: sys.n]
            polynomials[(alpha, beta)] = tuple(float(value) for value in padded)

    basis = HermitePolynomialBasis(
        system=sys,
        center=center,
        polynomials=polynomials,
        node_poly=tuple(float(value) for value in node_poly),
    )
    _check_kronecker(basis)
    return basis


def piece_index(sys: InterpolationSystem, t: float) -> int:
    """r(t): the number of nodes strictly below t, so t lies in (a_r, a_(r+1)]"""
    return bisect_left(sys.nodes, t)
