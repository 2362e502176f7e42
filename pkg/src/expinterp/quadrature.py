"""
Adaptive Gauss-Legendre quadrature with an error estimate

Integrands are vectorised: g(ts) takes a 1-D array of points and returns an array of values
(real or complex). Each panel is compared against the sum over its two halves; a panel is split
until the difference is within its share of the tolerance, or the depth limit is reached.
"""

from collections.abc import Callable
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import roots_legendre

from expinterp.config import config_retrieve
from expinterp.errors import MaxDepthExceeded
from expinterp.static_values import get_logger

Integrand = Callable[[np.ndarray], np.ndarray]

# sums of panel magnitudes below this multiple of machine epsilon are treated as rounding noise
ROUNDING_FACTOR = 50


class QuadratureResult(NamedTuple):
    value: complex | float
    error_estimate: float
    converged: bool
    panels: int


@lru_cache(maxsize=16)
def legendre_rule(points: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]"""
    nodes, weights = roots_legendre(points)
    return np.asarray(nodes), np.asarray(weights)


def gauss_legendre_panel(g: Integrand, a: float, b: float, points: int | None = None) -> tuple[complex, float]:
    """
    one Gauss-Legendre panel on [a, b]

    Returns:
        the value, and sum |w_i g(t_i)| (the scale rounding errors are judged against)
    """
    points = points or int(config_retrieve(['remainder', 'quadrature_points'], 15))
    nodes, weights = legendre_rule(points)
    half = (b - a) / 2
    values = np.asarray(g(half * nodes + (a + b) / 2))
    return half * np.dot(weights, values), float(abs(half) * np.dot(weights, np.abs(values)))


def adaptive_integrate(
    g: Integrand,
    a: float,
    b: float,
    tol: float | None = None,
    max_depth: int | None = None,
    points: int | None = None,
    strict: bool = False,
) -> QuadratureResult:
    """
    integral of g from a to b, signed (negated when b < a)

    Panels are processed depth-first, left to right, so the summation order and therefore the
    result are deterministic.

    Args:
        g (Integrand): vectorised integrand
        a (float): lower limit
        b (float): upper limit
        tol (float): absolute tolerance, blended with a relative one against the coarse estimate
        max_depth (int): bisection limit
        points (int): Gauss-Legendre points per panel
        strict (bool): raise MaxDepthExceeded instead of returning a flagged result

    Returns:
        QuadratureResult(value, error_estimate, converged, panels)
    """
    tol = tol if tol is not None else float(config_retrieve(['remainder', 'default_tol'], 1e-10))
    max_depth = max_depth if max_depth is not None else int(config_retrieve(['remainder', 'max_depth'], 40))
    points = points or int(config_retrieve(['remainder', 'quadrature_points'], 15))

    if a == b:
        return QuadratureResult(0.0, 0.0, True, 0)
    if b < a:
        flipped = adaptive_integrate(g, b, a, tol, max_depth, points, strict)
        return flipped._replace(value=-flipped.value)

    length = b - a
    whole, _ = gauss_legendre_panel(g, a, b, points)
    target = max(tol, tol * abs(whole))

    total: complex = 0.0
    error = 0.0
    panels = 0
    converged = True
    stack = [(a, b, whole, 0)]
    while stack:
        left, right, coarse, depth = stack.pop()
        middle = (left + right) / 2
        first, first_scale = gauss_legendre_panel(g, left, middle, points)
        second, second_scale = gauss_legendre_panel(g, middle, right, points)
        fine = first + second
        diff = abs(fine - coarse)
        floor = ROUNDING_FACTOR * np.finfo(float).eps * (first_scale + second_scale)
        local = target * (right - left) / length

        if diff <= max(local, floor) or depth >= max_depth:
            if diff > max(local, floor):
                converged = False
            total += fine
            error += diff + floor
            panels += 1
            continue
        # right half pushed first so the left half is summed first
        stack.append((middle, right, second, depth + 1))
        stack.append((left, middle, first, depth + 1))

    if not converged:
        message = f'Quadrature on [{a}, {b}] hit depth {max_depth}, error estimate {error:.3g} (tol {tol:.3g})'
        if strict:
            raise MaxDepthExceeded(message)
        get_logger().warning(message)
    else:
        get_logger().debug(f'Quadrature on [{a}, {b}]: {panels} panels, error estimate {error:.3g}')

    value = total.real if np.isrealobj(total) else complex(total)
    return QuadratureResult(value, float(error), converged, panels)


def fixed_composite(g: Integrand, a: float, b: float, panels: int, points: int | None = None) -> complex | float:
    """
    plain composite Gauss-Legendre over equal panels, the fine-rule reference for adaptive_integrate
    """
    edges = np.linspace(a, b, panels + 1)
    total = sum(gauss_legendre_panel(g, left, right, points)[0] for left, right in zip(edges, edges[1:]))
    return total.real if np.isrealobj(total) else complex(total)
