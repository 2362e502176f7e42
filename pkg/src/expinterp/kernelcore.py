"""
Operators, roots, and the algebra of exponential polynomials

An operator D_c f = c_n f^(n) + ... + c_1 f' + c_0 f is held as its monic coefficient vector.
Its kernel is spanned by t^j exp(lambda_i t) over the roots lambda_i of the characteristic
polynomial, so every kernel element is held as an ExponentialPolynomial: one block of
polynomial coefficients (ascending) per distinct exponential rate.

All the types here are frozen pydantic models; every operation returns a new value.
"""

from collections.abc import Iterable, Sequence
from enum import Enum
from itertools import combinations

import numpy as np
from numpy.polynomial import polynomial as npoly
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from expinterp.config import config_retrieve
from expinterp.errors import (
    ClusterAmbiguity,
    DegreeTooLarge,
    MultiplicityMismatch,
    OperatorError,
    RealificationFailure,
    ReconstructionFailure,
    TooShort,
    UsageError,
    ZeroLeadingCoefficient,
)
from expinterp.polynomials import as_coefficients, from_roots, taylor_shift, trim
from expinterp.static_values import get_logger

FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _tol(key: str, default: float) -> float:
    return float(config_retrieve(['kernelcore', key], default))


class RootMode(Enum):
    """
    how find_roots obtains the roots of the characteristic polynomial
    """

    COMPANION = 'companion'
    USER_SUPPLIED = 'user_supplied'


class DifferentialOperatorSpec(BaseModel):
    """
    a monic constant-coefficient operator, coefficients c_0 ... c_n with c_n == 1
    """

    model_config = FROZEN

    coefficients: tuple[complex, ...]

    @model_validator(mode='after')
    def check_monic(self) -> 'DifferentialOperatorSpec':
        if len(self.coefficients) < 2:
            raise TooShort(f'An operator needs at least 2 coefficients, got {len(self.coefficients)}')
        if self.coefficients[-1] != 1:
            raise OperatorError(f'Operator is not monic (c_n = {self.coefficients[-1]}), build it with make_operator')
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @computed_field  # type: ignore[prop-decorator]
    @property
    def is_real(self) -> bool:
        return all(coefficient.imag == 0 for coefficient in self.coefficients)

    @property
    def c(self) -> np.ndarray:
        """the coefficients as an array, real-typed when the operator is real"""
        array = np.asarray(self.coefficients, dtype=complex)
        return array.real.copy() if self.is_real else array

    def characteristic_polynomial(self, lam: complex) -> complex:
        return complex(npoly.polyval(lam, self.c))


class Root(BaseModel):
    model_config = FROZEN

    value: complex
    multiplicity: int = Field(ge=1)


class RootDecomposition(BaseModel):
    """
    the distinct roots, their multiplicities, and the cofactors P_i = prod_(l != i) (lambda - lambda_l)^m_l
    """

    model_config = FROZEN

    roots: tuple[Root, ...]
    cofactors: tuple[tuple[complex, ...], ...]

    @model_validator(mode='after')
    def check_cofactors(self) -> 'RootDecomposition':
        if len(self.roots) != len(self.cofactors):
            raise OperatorError('Each root needs exactly one cofactor polynomial')
        return self

    @property
    def n(self) -> int:
        return sum(root.multiplicity for root in self.roots)

    def pairs(self) -> list[tuple[complex, int]]:
        return [(root.value, root.multiplicity) for root in self.roots]


class ExponentialBlock(BaseModel):
    """
    p(t) * exp(rate * t), with p held as ascending coefficients
    """

    model_config = FROZEN

    rate: complex
    coefficients: tuple[complex, ...] = Field(min_length=1)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)


def _derive_block(coeffs: np.ndarray, rate: complex) -> np.ndarray:
    """(p e^(rate t))' = (p' + rate p) e^(rate t)"""
    out = rate * coeffs
    if len(coeffs) > 1:
        out[:-1] += coeffs[1:] * np.arange(1, len(coeffs))
    return out


def _realify(values: np.ndarray, real: bool, magnitude: np.ndarray | None = None) -> np.ndarray:
    """
    real parts of values, after checking the imaginary residue against realify_rel_tol

    The residue is measured against the larger of |value| and `magnitude`, the sum of the absolute
    block contributions, since cancelling conjugate terms leave rounding noise of that size.
    """
    if not real:
        return values
    rel_tol = _tol('realify_rel_tol', 1e-9)
    reference = np.abs(values) if magnitude is None else np.maximum(np.abs(values), magnitude)
    excess = np.abs(values.imag) - rel_tol * (1 + reference)
    if np.any(excess > 0):
        worst = values.flat[int(np.argmax(excess))]
        raise RealificationFailure(f'Expected a real value, got {worst}')
    return values.real


class ExponentialPolynomial(BaseModel):
    """
    t -> sum_i p_i(t) exp(rate_i t)

    Canonical form: blocks sorted by (Re rate, Im rate), one block per rate, no all-zero blocks,
    and no trailing zero coefficients. The `real` flag records that the function is real-valued
    on the real line, in which case evaluation reports real parts.
    """

    model_config = FROZEN

    blocks: tuple[ExponentialBlock, ...] = ()
    real: bool = False

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[tuple[complex, Sequence[complex] | np.ndarray]],
        real: bool = False,
    ) -> 'ExponentialPolynomial':
        """
        build a canonical exponential polynomial, merging blocks which share a rate

        Args:
            pairs (Iterable): (rate, ascending coefficients) pairs, in any order
            real (bool): whether the represented function is real-valued

        Returns:
            the canonical ExponentialPolynomial
        """
        merged: dict[complex, np.ndarray] = {}
        for rate, coeffs in pairs:
            array = as_coefficients(coeffs)
            key = complex(rate)
            if key in merged:
                existing = merged[key]
                size = max(len(existing), len(array))
                total = np.zeros(size, dtype=complex)
                total[: len(existing)] += existing
                total[: len(array)] += array
                merged[key] = total
            else:
                merged[key] = array.copy()

        blocks = [
            ExponentialBlock(rate=rate, coefficients=tuple(trim(coeffs)))
            for rate, coeffs in sorted(merged.items(), key=lambda item: (item[0].real, item[0].imag))
            if np.any(coeffs != 0)
        ]
        return cls(blocks=tuple(blocks), real=real)

    @classmethod
    def zero(cls) -> 'ExponentialPolynomial':
        return cls(blocks=(), real=True)

    def pairs(self) -> list[tuple[complex, np.ndarray]]:
        return [(block.rate, block.array) for block in self.blocks]

    def is_zero(self) -> bool:
        return not self.blocks

    def max_coefficient(self) -> float:
        if not self.blocks:
            return 0.0
        return float(max(np.max(np.abs(block.array)) for block in self.blocks))

    def evaluate_many(self, ts: Sequence[float] | np.ndarray) -> np.ndarray:
        """vectorised evaluation over an array of points"""
        points = np.asarray(ts, dtype=float)
        total = np.zeros(points.shape, dtype=complex)
        magnitude = np.zeros(points.shape)
        for block in self.blocks:
            term = npoly.polyval(points, block.array) * np.exp(block.rate * points)
            total += term
            magnitude += np.abs(term)
        return _realify(total, self.real, magnitude)

    def evaluate(self, t: float) -> complex | float:
        value = self.evaluate_many(np.asarray([t]))[0]
        return float(value) if self.real else complex(value)

    def derivative_values(self, ts: Sequence[float] | np.ndarray | float, max_order: int) -> np.ndarray:
        """
        omega(t), omega'(t), ... omega^(max_order)(t)

        Args:
            ts: a point, or an array of points
            max_order (int): highest derivative order

        Returns:
            array of shape (max_order + 1,) + shape(ts)
        """
        points = np.asarray(ts, dtype=float)
        out = np.zeros((max_order + 1, *points.shape), dtype=complex)
        magnitude = np.zeros(out.shape)
        for block in self.blocks:
            growth = np.exp(block.rate * points)
            coeffs = block.array
            for order in range(max_order + 1):
                if order:
                    coeffs = _derive_block(coeffs, block.rate)
                term = npoly.polyval(points, coeffs) * growth
                out[order] += term
                magnitude[order] += np.abs(term)
        return _realify(out, self.real, magnitude)

    def evaluate_derivatives(self, t: float, order: int) -> np.ndarray:
        """vector of omega(t) ... omega^(order)(t) at a single point"""
        return self.derivative_values(float(t), order)

    def differentiate(self, order: int = 1) -> 'ExponentialPolynomial':
        if order < 0:
            raise ValueError(f'Derivative order must be non-negative, got {order}')
        pairs = []
        for rate, coeffs in self.pairs():
            for _ in range(order):
                coeffs = _derive_block(coeffs, rate)
            pairs.append((rate, coeffs))
        return ExponentialPolynomial.from_pairs(pairs, real=self.real)

    def translate(self, shift: float) -> 'ExponentialPolynomial':
        """t -> omega(t + shift)"""
        if shift == 0:
            return self
        return ExponentialPolynomial.from_pairs(
            [(rate, taylor_shift(coeffs, shift) * np.exp(rate * shift)) for rate, coeffs in self.pairs()],
            real=self.real,
        )

    def scale(self, weight: complex) -> 'ExponentialPolynomial':
        weight = complex(weight)
        return ExponentialPolynomial.from_pairs(
            [(rate, coeffs * weight) for rate, coeffs in self.pairs()],
            real=self.real and weight.imag == 0,
        )

    def real_part(self) -> 'ExponentialPolynomial':
        """
        t -> Re omega(t), as (p e^(rate t) + conj(p) e^(conj(rate) t)) / 2 per block, flagged real
        """
        halves = []
        for rate, coeffs in self.pairs():
            halves.extend([(rate, coeffs / 2), (rate.conjugate(), coeffs.conjugate() / 2)])
        return ExponentialPolynomial.from_pairs(halves, real=True)

    def __add__(self, other: 'ExponentialPolynomial') -> 'ExponentialPolynomial':
        return ExponentialPolynomial.from_pairs([*self.pairs(), *other.pairs()], real=self.real and other.real)

    def __neg__(self) -> 'ExponentialPolynomial':
        return self.scale(-1)

    def __sub__(self, other: 'ExponentialPolynomial') -> 'ExponentialPolynomial':
        return self + (-other)

    def to_real_form(self) -> list[dict]:
        """
        presentation only: pair conjugate blocks into exp(a t) (p(t) cos(b t) + q(t) sin(b t)) terms

        Returns:
            one dict per term, with keys rate, frequency, cos and sin (ascending coefficient lists);
            for a complex-valued function the blocks are listed as they are
        """
        if not self.real:
            return [
                {'rate': [block.rate.real, block.rate.imag], 'coefficients': [[z.real, z.imag] for z in block.array]}
                for block in self.blocks
            ]
        terms = []
        for block in self.blocks:
            if block.rate.imag < 0:
                continue
            if block.rate.imag == 0:
                terms.append({'rate': block.rate.real, 'frequency': 0.0, 'cos': block.array.real.tolist(), 'sin': []})
                continue
            # p e^(iwt) + conj(p) e^(-iwt) = 2 Re(p) cos(wt) - 2 Im(p) sin(wt)
            terms.append(
                {
                    'rate': block.rate.real,
                    'frequency': block.rate.imag,
                    'cos': (2 * block.array.real).tolist(),
                    'sin': (-2 * block.array.imag).tolist(),
                },
            )
        return terms


# region: module-level operations
def make_operator(c_raw: Sequence[complex]) -> DifferentialOperatorSpec:
    """
    normalise raw coefficients c_0 ... c_n into a monic operator

    Args:
        c_raw (Sequence[complex]): coefficients, lowest derivative order first

    Returns:
        the monic DifferentialOperatorSpec
    """
    if len(c_raw) < 2:  # noqa: PLR2004
        raise TooShort(f'An operator needs at least 2 coefficients, got {len(c_raw)}')
    leading = complex(c_raw[-1])
    if leading == 0:
        raise ZeroLeadingCoefficient(f'Leading coefficient of {list(c_raw)} is 0')
    coefficients = [complex(value) / leading for value in c_raw]
    coefficients[-1] = 1 + 0j
    return DifferentialOperatorSpec(coefficients=tuple(coefficients))


def _cluster_tol(value: complex) -> float:
    return _tol('cluster_rel_tol', 1e-7) * max(1.0, abs(value))


def _check_separation(pairs: Sequence[tuple[complex, int]]):
    """distinct roots must sit at least ten cluster tolerances apart"""
    for (first, _), (second, _) in combinations(pairs, 2):
        gap = abs(first - second)
        if gap < 10 * _cluster_tol(max(first, second, key=abs)):
            raise ClusterAmbiguity(
                f'Roots {first} and {second} are {gap:.3g} apart, too close to tell whether they coincide. '
                'Supply the roots and multiplicities explicitly.',
            )


def _cluster(raw_roots: Sequence[complex], pinned_zeros: int) -> list[tuple[complex, int]]:
    """
    greedy clustering of eigenvalues into (center, multiplicity)
    the exact zero roots split off beforehand keep their center at exactly 0
    """
    clusters: list[list] = [[0j, pinned_zeros, True]] if pinned_zeros else []
    for root in sorted(raw_roots, key=lambda z: (z.real, z.imag)):
        for cluster in clusters:
            center, count, pinned = cluster
            if abs(root - center) <= _cluster_tol(center):
                if not pinned:
                    cluster[0] = (center * count + root) / (count + 1)
                cluster[1] = count + 1
                break
        else:
            clusters.append([complex(root), 1, False])
    return [(center, count) for center, count, _ in clusters]


def _symmetrise(pairs: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    """
    for a real operator, snap nearly-real roots onto the axis and make conjugate partners exact
    """
    snapped = [
        (complex(value.real, 0.0) if abs(value.imag) <= _cluster_tol(value) else value, mult) for value, mult in pairs
    ]
    lower = [pair for pair in snapped if pair[0].imag < 0]
    out = [pair for pair in snapped if pair[0].imag == 0]
    for value, mult in (pair for pair in snapped if pair[0].imag > 0):
        partner = min(lower, key=lambda pair: abs(pair[0] - value.conjugate()), default=None)
        near = partner is not None and abs(partner[0] - value.conjugate()) <= 10 * _cluster_tol(value)
        if near and partner[1] == mult:
            center = (value + partner[0].conjugate()) / 2
            out.extend([(center, mult), (center.conjugate(), mult)])
            lower.remove(partner)
        else:
            out.append((value, mult))
    return out + lower


def _decomposition(pairs: Sequence[tuple[complex, int]]) -> RootDecomposition:
    ordered = sorted(pairs, key=lambda pair: (pair[0].real, pair[0].imag))
    cofactors = []
    for index in range(len(ordered)):
        others = [pair for other, pair in enumerate(ordered) if other != index]
        cofactors.append(tuple(from_roots(others)))
    return RootDecomposition(
        roots=tuple(Root(value=value, multiplicity=mult) for value, mult in ordered),
        cofactors=tuple(cofactors),
    )


def _check_reconstruction(op: DifferentialOperatorSpec, rd: RootDecomposition):
    product = from_roots(rd.pairs())
    deviation = float(np.max(np.abs(product - op.c))) if len(product) == len(op.c) else np.inf
    tolerance = _tol('reconstruction_rel_tol', 1e-9) * (1 + float(np.max(np.abs(op.c))))
    if deviation > tolerance:
        raise ReconstructionFailure(
            f'Root factors reproduce the operator only to {deviation:.3g} (tolerance {tolerance:.3g}). '
            'Supply the roots and multiplicities explicitly.',
        )


def find_roots(
    op: DifferentialOperatorSpec,
    mode: RootMode = RootMode.COMPANION,
    supplied: Sequence[tuple[complex, int]] | None = None,
) -> RootDecomposition:
    """
    distinct roots of the characteristic polynomial, with multiplicities and cofactors

    Args:
        op (DifferentialOperatorSpec): the operator
        mode (RootMode): companion-matrix eigenvalues, or the roots given in `supplied`
        supplied (list[tuple[complex, int]]): (root, multiplicity) pairs for USER_SUPPLIED

    Returns:
        a RootDecomposition which reproduces the characteristic polynomial
    """
    if mode is RootMode.USER_SUPPLIED:
        if not supplied:
            raise UsageError('USER_SUPPLIED root mode needs a list of (root, multiplicity) pairs')
        pairs = [(complex(value), int(mult)) for value, mult in supplied]
        if any(mult < 1 for _, mult in pairs) or sum(mult for _, mult in pairs) != op.n:
            raise MultiplicityMismatch(
                f'Multiplicities {[mult for _, mult in pairs]} should be positive and sum to {op.n}',
            )
    else:
        max_degree = int(_tol('max_degree', 32))
        if op.n > max_degree:
            raise DegreeTooLarge(f'Operator order {op.n} exceeds the root-finding limit of {max_degree}')

        # split off zero roots exactly, they are common and the eigenvalue route blurs them
        c = op.c
        zeros = int(np.flatnonzero(c)[0])
        reduced = c[zeros:]
        raw = [complex(z) for z in npoly.polyroots(reduced)] if len(reduced) > 1 else []
        pairs = _cluster(raw, zeros)
        if op.is_real:
            pairs = _symmetrise(pairs)

    _check_separation(pairs)
    rd = _decomposition(pairs)
    _check_reconstruction(op, rd)
    get_logger().debug(f'Roots of {list(op.coefficients)}: {rd.pairs()}')
    return rd


def make_operator_from_roots(
    roots: Sequence[tuple[complex, int]],
) -> tuple[DifferentialOperatorSpec, RootDecomposition]:
    """
    expand prod_i (lambda - lambda_i)^m_i into an operator, keeping the exact roots

    Args:
        roots (list[tuple[complex, int]]): distinct roots and their multiplicities

    Returns:
        the operator, and its RootDecomposition (no root finding involved)
    """
    if not roots:
        raise TooShort('At least one root is needed to build an operator')
    pairs = [(complex(value), int(mult)) for value, mult in roots]
    if any(mult < 1 for _, mult in pairs):
        raise MultiplicityMismatch(f'Multiplicities must be positive, got {[mult for _, mult in pairs]}')
    _check_separation(pairs)

    coefficients = from_roots(pairs)
    conjugates = {(value.conjugate(), mult) for value, mult in pairs}
    if conjugates == set(pairs):
        coefficients = coefficients.real.astype(complex)
    coefficients[-1] = 1
    op = DifferentialOperatorSpec(coefficients=tuple(coefficients))
    return op, _decomposition(pairs)


def characteristic_polynomial(op: DifferentialOperatorSpec, lam: complex) -> complex:
    return op.characteristic_polynomial(lam)


def fundamental_system(rd: RootDecomposition) -> list[ExponentialPolynomial]:
    """
    t^j exp(lambda_i t) for each root in RootDecomposition order, j ascending
    """
    system = []
    for value, mult in rd.pairs():
        for degree in range(mult):
            coeffs = np.zeros(degree + 1, dtype=complex)
            coeffs[degree] = 1
            system.append(ExponentialPolynomial.from_pairs([(value, coeffs)], real=value.imag == 0))
    return system


def kernel_element(rd: RootDecomposition, coordinates: Sequence[complex], real: bool = False) -> ExponentialPolynomial:
    """
    sum_r mu_r omega_r over the fundamental system, from n coordinates in fundamental_system order
    """
    if len(coordinates) != rd.n:
        raise ValueError(f'Expected {rd.n} coordinates, got {len(coordinates)}')
    coords = np.asarray(coordinates, dtype=complex)
    pairs, start = [], 0
    for value, mult in rd.pairs():
        pairs.append((value, coords[start : start + mult]))
        start += mult
    return ExponentialPolynomial.from_pairs(pairs, real=real)


def kernel_coordinates(ep: ExponentialPolynomial, rd: RootDecomposition) -> np.ndarray:
    """
    the inverse of kernel_element: read the coordinates straight off the blocks
    """
    coords = np.zeros(rd.n, dtype=complex)
    starts, start = [], 0
    for _, mult in rd.pairs():
        starts.append(start)
        start += mult
    for block in ep.blocks:
        matches = [
            index for index, (value, _) in enumerate(rd.pairs()) if abs(value - block.rate) <= _cluster_tol(value)
        ]
        if not matches:
            raise OperatorError(f'Block with rate {block.rate} is not part of this kernel')
        index = matches[0]
        mult = rd.roots[index].multiplicity
        if len(block.array) > mult:
            raise OperatorError(f'Block with rate {block.rate} has degree above multiplicity {mult}')
        coords[starts[index] : starts[index] + len(block.array)] = block.array
    return coords


def evaluate(ep: ExponentialPolynomial, t: float) -> complex | float:
    return ep.evaluate(t)


def differentiate(ep: ExponentialPolynomial, order: int = 1) -> ExponentialPolynomial:
    return ep.differentiate(order)


def translate(ep: ExponentialPolynomial, a: float) -> ExponentialPolynomial:
    return ep.translate(a)


def add(first: ExponentialPolynomial, second: ExponentialPolynomial) -> ExponentialPolynomial:
    return first + second


def scale(ep: ExponentialPolynomial, weight: complex) -> ExponentialPolynomial:
    return ep.scale(weight)


def linear_combination(
    weights: Sequence[complex],
    eps: Sequence[ExponentialPolynomial],
) -> ExponentialPolynomial:
    """
    sum_k weights_k * eps_k, built in one pass
    """
    if len(weights) != len(eps):
        raise ValueError(f'{len(weights)} weights for {len(eps)} exponential polynomials')
    real = all(ep.real for ep in eps) and all(complex(w).imag == 0 for w in weights)
    return ExponentialPolynomial.from_pairs(
        [(rate, coeffs * complex(w)) for w, ep in zip(weights, eps) for rate, coeffs in ep.pairs()],
        real=real,
    )


def _operator_terms(op: DifferentialOperatorSpec, ep: ExponentialPolynomial) -> tuple[ExponentialPolynomial, float]:
    """D_c applied blockwise, plus the magnitude of the largest summed term"""
    pairs, magnitude = [], 0.0
    for rate, coeffs in ep.pairs():
        total = np.zeros(len(coeffs), dtype=complex)
        current = coeffs
        for order, weight in enumerate(op.c):
            if order:
                current = _derive_block(current, rate)
            term = weight * current
            magnitude = max(magnitude, float(np.max(np.abs(term))))
            total += term
        pairs.append((rate, total))
    return ExponentialPolynomial.from_pairs(pairs, real=ep.real and op.is_real), magnitude


def apply_operator(op: DifferentialOperatorSpec, ep: ExponentialPolynomial) -> ExponentialPolynomial:
    """
    sum_k c_k omega^(k), symbolically; the rates in ep need not be roots of op
    """
    return _operator_terms(op, ep)[0]


def kernel_residual(op: DifferentialOperatorSpec, ep: ExponentialPolynomial) -> tuple[float, float]:
    """
    (largest coefficient of D_c omega, the tolerance it is judged against)
    """
    image, magnitude = _operator_terms(op, ep)
    return image.max_coefficient(), _tol('ker_rel_tol', 1e-9) * magnitude


def is_in_kernel(op: DifferentialOperatorSpec, ep: ExponentialPolynomial) -> bool:
    residual, tolerance = kernel_residual(op, ep)
    return residual <= tolerance


# endregion


# region: elementary functions as exponential polynomials
def elementary(name: str, shift: float = 0.0, weight: float = 1.0) -> ExponentialPolynomial:
    """
    weight * name(t - shift) for name in one, exp, sinh, cosh, sin, cos, as a real exponential polynomial

    Args:
        name (str): the elementary function
        shift (float): argument shift
        weight (float): real multiplier

    Returns:
        the ExponentialPolynomial representation
    """
    half = weight / 2
    pairs: dict[str, list[tuple[complex, list[complex]]]] = {
        'one': [(0, [weight])],
        'exp': [(1, [weight * np.exp(-shift)])],
        'sinh': [(1, [half * np.exp(-shift)]), (-1, [-half * np.exp(shift)])],
        'cosh': [(1, [half * np.exp(-shift)]), (-1, [half * np.exp(shift)])],
        'sin': [(1j, [-0.5j * weight * np.exp(-1j * shift)]), (-1j, [0.5j * weight * np.exp(1j * shift)])],
        'cos': [(1j, [half * np.exp(-1j * shift)]), (-1j, [half * np.exp(1j * shift)])],
    }
    if name not in pairs:
        raise ValueError(f'Unknown elementary function {name!r}, choose from {sorted(pairs)}')
    return ExponentialPolynomial.from_pairs(pairs[name], real=True)


def polynomial(coeffs: Sequence[float], shift: float = 0.0) -> ExponentialPolynomial:
    """
    sum_j coeffs_j (t - shift)^j as a rate-0 block
    """
    return ExponentialPolynomial.from_pairs([(0, taylor_shift(coeffs, -shift))], real=True)


# endregion
