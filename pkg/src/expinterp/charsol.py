"""
The characteristic solution omega_c of an operator D_c

omega_c is the kernel element with omega_c^(l)(0) = 0 for l < n - 1 and omega_c^(n-1)(0) = 1.
It is built from the roots by series inversion of each cofactor about its own root, and can be
cross-checked against a direct numerical integration of the initial value problem.
"""

from collections.abc import Sequence
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import factorial

import numpy as np
from pydantic import BaseModel, model_validator
from scipy.integrate import solve_ivp

from expinterp.config import config_retrieve
from expinterp.errors import SeriesInversionFailure, StepFailure, UsageError
from expinterp.kernelcore import FROZEN, DifferentialOperatorSpec, ExponentialPolynomial, RootDecomposition
from expinterp.polynomials import series_inverse, taylor_shift
from expinterp.static_values import get_logger

SUPPLY_ROOTS = 'Supply the roots and multiplicities explicitly (operator.roots in a problem spec).'


class Construction(Enum):
    LEMMA_P = 'lemmaP'
    IVP_ORACLE = 'ivp_oracle'


@lru_cache(maxsize=512)
def derivative_of(ep: ExponentialPolynomial, order: int) -> ExponentialPolynomial:
    """memoised derivatives, the same omega_c^(beta) is asked for once per slot and per point"""
    return ep.differentiate(order)


class CharacteristicSolution(BaseModel):
    """
    omega_c, either as an exponential polynomial (lemmaP) or tabulated on a grid (ivp_oracle)
    """

    model_config = FROZEN

    op: DifferentialOperatorSpec
    construction: Construction = Construction.LEMMA_P
    ep: ExponentialPolynomial | None = None
    grid: tuple[float, ...] = ()
    grid_values: tuple[complex, ...] = ()

    @model_validator(mode='after')
    def check_payload(self) -> 'CharacteristicSolution':
        if self.construction is Construction.LEMMA_P and self.ep is None:
            raise UsageError('A lemmaP characteristic solution needs its exponential polynomial')
        if len(self.grid) != len(self.grid_values):
            raise UsageError('Tabulated characteristic solution has mismatched grid and values')
        return self

    def _require_ep(self) -> ExponentialPolynomial:
        if self.ep is None:
            raise UsageError('This characteristic solution is only tabulated, build it with the lemmaP construction')
        return self.ep

    def derivative(self, order: int = 0) -> ExponentialPolynomial:
        return derivative_of(self._require_ep(), order)

    def value(self, t: float, order: int = 0) -> complex | float:
        if self.ep is None and order == 0 and t in self.grid:
            return self.grid_values[self.grid.index(t)]
        return self.derivative(order).evaluate(t)


def _initial_value_scale(ep: ExponentialPolynomial, n: int) -> float:
    """rough magnitude of the terms cancelling in omega_c^(l)(0), for scaling the check"""
    if ep.is_zero():
        return 1.0
    growth = max(1.0, *(abs(block.rate) for block in ep.blocks))
    return max(1.0, ep.max_coefficient() * growth ** (n - 1) * n)


def initial_value_residuals(cs: CharacteristicSolution) -> list[float]:
    """
    |omega_c^(l)(0) - delta_(l, n-1)| for l = 0 .. n-1
    """
    n = cs.op.n
    values = cs._require_ep().evaluate_derivatives(0.0, n - 1)
    target = np.zeros(n)
    target[-1] = 1
    return [float(residual) for residual in np.abs(values - target)]


def _root_hint(rd: RootDecomposition) -> str:
    """names the closest pair of distinct roots, a multiple root split by rounding looks like this"""
    gaps = [
        (abs(first.value - second.value), first.value, second.value) for first, second in combinations(rd.roots, 2)
    ]
    if not gaps:
        return SUPPLY_ROOTS
    gap, first, second = min(gaps, key=lambda item: item[0])
    return f'Roots {first:.6g} and {second:.6g} are {gap:.3g} apart and may be one multiple root. {SUPPLY_ROOTS}'


def characteristic_solution(
    op: DifferentialOperatorSpec,
    rd: RootDecomposition,
    construction: Construction = Construction.LEMMA_P,
    t_grid: Sequence[float] | None = None,
) -> CharacteristicSolution:
    """
    omega_c from the roots: the coefficient of t^j exp(lambda_i t) is
    (1/P_i)^(m_i-1-j)(lambda_i) / ((m_i-1-j)! j!), read off the series of 1/P_i about lambda_i

    Args:
        op (DifferentialOperatorSpec): the operator
        rd (RootDecomposition): its roots and cofactors
        construction (Construction): lemmaP, or ivp_oracle for a tabulated cross-check
        t_grid (list[float]): the grid for the ivp_oracle construction

    Returns:
        the CharacteristicSolution
    """
    if construction is Construction.IVP_ORACLE:
        if t_grid is None:
            raise UsageError('The ivp_oracle construction needs a t_grid')
        values = ivp_solution(op, t_grid)
        return CharacteristicSolution(
            op=op,
            construction=construction,
            grid=tuple(float(t) for t in t_grid),
            grid_values=tuple(complex(value) for value in values),
        )

    floor = float(config_retrieve(['charsol', 'series_floor'], 1e-14))
    pairs = []
    for root, cofactor in zip(rd.roots, rd.cofactors):
        mult = root.multiplicity
        shifted = taylor_shift(cofactor, root.value)
        if abs(shifted[0]) < floor:
            raise SeriesInversionFailure(
                f'Cofactor of root {root.value} is {abs(shifted[0]):.3g} at the root, the roots are not separated. '
                + _root_hint(rd),
            )
        inverse = series_inverse(shifted, mult)
        pairs.append((root.value, [inverse[mult - 1 - j] / factorial(j) for j in range(mult)]))

    cs = CharacteristicSolution(op=op, ep=ExponentialPolynomial.from_pairs(pairs, real=op.is_real))

    tolerance = float(config_retrieve(['charsol', 'init_tol'], 1e-9)) * _initial_value_scale(cs.ep, op.n)
    worst = max(initial_value_residuals(cs))
    if worst > tolerance:
        raise SeriesInversionFailure(
            f'Characteristic solution misses its initial values by {worst:.3g} (tolerance {tolerance:.3g}). '
            + _root_hint(rd),
        )
    get_logger().info(f'Characteristic solution built for order {op.n} operator, {len(rd.roots)} distinct roots')
    return cs


def ivp_solution(op: DifferentialOperatorSpec, t_grid: Sequence[float]) -> list[complex | float]:
    """
    omega_c on a grid, by integrating the first-order system for (omega, omega', ... omega^(n-1))
    from (0, ..., 0, 1) at t = 0 with DOP853; oracle only

    Args:
        op (DifferentialOperatorSpec): the operator
        t_grid (list[float]): sorted evaluation points, either side of 0

    Returns:
        omega_c at each grid point, real when the operator is real
    """
    grid = np.asarray(t_grid, dtype=float)
    if np.any(np.diff(grid) < 0):
        raise UsageError('ivp_solution needs a sorted grid')

    n = op.n
    c = op.c
    rtol = float(config_retrieve(['charsol', 'ivp_rtol'], 1e-11))
    atol = float(config_retrieve(['charsol', 'ivp_atol'], 1e-11))

    def complex_rhs(state: np.ndarray) -> np.ndarray:
        slope = np.empty_like(state)
        slope[:-1] = state[1:]
        slope[-1] = -np.dot(c[:-1], state)
        return slope

    if op.is_real:
        start = np.zeros(n)
        start[-1] = 1

        def rhs(_t: float, y: np.ndarray) -> np.ndarray:
            return complex_rhs(y)

    else:
        # complex operators are integrated as a real system of twice the size
        start = np.zeros(2 * n)
        start[n - 1] = 1

        def rhs(_t: float, y: np.ndarray) -> np.ndarray:
            slope = complex_rhs(y[:n] + 1j * y[n:])
            return np.concatenate([slope.real, slope.imag])

    def first_component(states: np.ndarray) -> np.ndarray:
        return states[0] if op.is_real else states[0] + 1j * states[n]

    out = np.zeros(len(grid), dtype=float if op.is_real else complex)
    out[grid == 0] = first_component(start[:, None])[0]

    for mask in (grid > 0, grid < 0):
        points = grid[mask]
        if not len(points):
            continue
        end = points[-1] if points[-1] > 0 else points[0]
        ordered = points if end > 0 else points[::-1]
        solution = solve_ivp(rhs, (0.0, end), start, method='DOP853', t_eval=ordered, rtol=rtol, atol=atol)
        if not solution.success:
            raise StepFailure(f'IVP integration towards t={end} failed: {solution.message}')
        values = first_component(solution.y)
        out[mask] = values if end > 0 else values[::-1]

    return out.tolist()


def kronecker_identity_residual(op: DifferentialOperatorSpec, cs: CharacteristicSolution, j: int, beta: int) -> float:
    """
    |delta_(j, beta) - sum_(i=0)^(n-j-1) c_(i+j+1) omega_c^(beta+i)(0)|
    """
    n = op.n
    if not (0 <= j < n and 0 <= beta < n):
        raise UsageError(f'j and beta must lie in 0..{n - 1}, got j={j}, beta={beta}')
    values = cs._require_ep().evaluate_derivatives(0.0, beta + n - 1 - j)
    total = sum(op.c[i + j + 1] * values[beta + i] for i in range(n - j))
    return float(abs((1.0 if j == beta else 0.0) - total))


def kronecker_residual_matrix(op: DifferentialOperatorSpec, cs: CharacteristicSolution) -> np.ndarray:
    """
    all the (j, beta) residuals at once, entry [j, beta]
    """
    n = op.n
    values = cs._require_ep().evaluate_derivatives(0.0, 2 * n - 2)
    residuals = np.zeros((n, n))
    for j in range(n):
        for beta in range(n):
            total = sum(op.c[i + j + 1] * values[beta + i] for i in range(n - j))
            residuals[j, beta] = abs((1.0 if j == beta else 0.0) - total)
    return residuals


def addition_formula_rhs(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    omega: ExponentialPolynomial,
    u: float,
    v: float,
) -> complex | float:
    """
    sum_j sum_i c_(i+j+1) omega_c^(i)(u) omega^(j)(v), which equals omega(u + v) for omega in the kernel
    """
    n = op.n
    at_u = cs._require_ep().evaluate_derivatives(u, n - 1)
    at_v = omega.evaluate_derivatives(v, n - 1)
    total = sum(op.c[i + j + 1] * at_u[i] * at_v[j] for j in range(n) for i in range(n - j))
    return float(np.real(total)) if omega.real and cs.op.is_real else complex(total)


def addition_formula_residual(
    op: DifferentialOperatorSpec,
    cs: CharacteristicSolution,
    omega: ExponentialPolynomial,
    u: float,
    v: float,
) -> float:
    return float(abs(addition_formula_rhs(op, cs, omega, u, v) - omega.evaluate(u + v)))
