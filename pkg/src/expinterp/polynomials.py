"""
Small helpers for polynomials and truncated power series

Everything here works on coefficient vectors in ascending order (constant term first),
matching numpy.polynomial.polynomial. Complex coefficients are accepted throughout.
"""

from collections.abc import Sequence
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as npoly

ComplexArray = np.ndarray


def as_coefficients(coeffs: Sequence[complex] | np.ndarray) -> ComplexArray:
    """
    coerce a coefficient sequence into a 1-D complex array
    """
    array = np.asarray(coeffs, dtype=complex)
    if array.ndim != 1:
        raise ValueError(f'Expected a 1-D coefficient vector, got shape {array.shape}')
    return array


def from_roots(roots: Sequence[tuple[complex, int]]) -> ComplexArray:
    """
    monic polynomial prod_i (lambda - r_i)^m_i, ascending coefficients

    Args:
        roots (Sequence[tuple[complex, int]]): (root, multiplicity) pairs

    Returns:
        ascending complex coefficients, [1] for an empty product
    """
    expanded = [complex(root) for root, multiplicity in roots for _ in range(multiplicity)]
    if not expanded:
        return np.ones(1, dtype=complex)
    return np.asarray(npoly.polyfromroots(expanded), dtype=complex)


def taylor_shift(coeffs: Sequence[complex] | np.ndarray, center: complex) -> ComplexArray:
    """
    coefficients of q(s) = p(center + s), by repeated synthetic division

    Args:
        coeffs (array): ascending coefficients of p
        center (complex): the shift

    Returns:
        ascending coefficients of q, same length as p
    """
    shifted = as_coefficients(coeffs).copy()
    size = len(shifted)
    for i in range(size - 1):
        for k in range(size - 2, i - 1, -1):
            shifted[k] += center * shifted[k + 1]
    return shifted


def series_inverse(coeffs: Sequence[complex] | np.ndarray, order: int) -> ComplexArray:
    """
    first `order` coefficients of 1 / a(s) as a power series about s = 0

    Args:
        coeffs (array): ascending coefficients of a(s), a(0) must be nonzero
        order (int): number of series terms to return

    Returns:
        ascending coefficients b_0 ... b_(order - 1)
    """
    a = as_coefficients(coeffs)
    if a[0] == 0:
        raise ZeroDivisionError('series_inverse needs a nonzero constant term')
    b = np.zeros(order, dtype=complex)
    if order == 0:
        return b
    b[0] = 1 / a[0]
    for k in range(1, order):
        upper = min(k, len(a) - 1)
        acc = sum(a[j] * b[k - j] for j in range(1, upper + 1))
        b[k] = -acc / a[0]
    return b


def series_divide(
    numerator: Sequence[complex] | np.ndarray,
    denominator: Sequence[complex] | np.ndarray,
    order: int,
) -> ComplexArray:
    """
    first `order` coefficients of numerator(s) / denominator(s) as a power series
    """
    inverse = series_inverse(denominator, order)
    product = npoly.polymul(as_coefficients(numerator), inverse)
    out = np.zeros(order, dtype=complex)
    out[: min(order, len(product))] = product[:order]
    return out


def derivative_values(coeffs: Sequence[complex] | np.ndarray, t: complex, max_order: int) -> ComplexArray:
    """
    p(t), p'(t), ... p^(max_order)(t) from the Taylor shift of p to t
    """
    shifted = taylor_shift(coeffs, t)
    out = np.zeros(max_order + 1, dtype=complex)
    for k in range(min(max_order + 1, len(shifted))):
        out[k] = shifted[k] * factorial(k)
    return out


def trim(coeffs: Sequence[complex] | np.ndarray) -> ComplexArray:
    """
    drop trailing coefficients which are exactly zero, never returning an empty vector
    """
    array = as_coefficients(coeffs)
    nonzero = np.flatnonzero(array)
    if len(nonzero) == 0:
        return array[:1] if len(array) else np.zeros(1, dtype=complex)
    return array[: nonzero[-1] + 1]
