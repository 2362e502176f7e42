"""
Functions with known derivatives, the f in every remainder computation

An evaluator answers f(t), f'(t), ... f^(max_order)(t) for a scalar t or an array of points.
Derivatives always come from the evaluator itself, never from differencing f.
"""

from abc import abstractmethod
from collections.abc import Callable, Mapping, Sequence

import numpy as np

from expinterp.errors import EvaluatorFailure, ExpInterpError, UsageError
from expinterp.kernelcore import ExponentialPolynomial, RootDecomposition, kernel_element

# smoothness of analytic functions, larger than any operator order
ANALYTIC = 10**6


class FunctionEvaluator:
    """
    Definition of the evaluator base class
    """

    def __init__(self, name: str, smoothness: int = ANALYTIC, thread_safe: bool = True):
        self.name = name
        self.smoothness = smoothness
        self.thread_safe = thread_safe

    @abstractmethod
    def derivatives(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        """
        f(t) ... f^(max_order)(t), shape (max_order + 1,) + shape(t)
        """

    def __call__(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        if max_order > self.smoothness:
            raise EvaluatorFailure(f'{self.name} is only C^{self.smoothness}, asked for order {max_order}')
        try:
            return self.derivatives(t, max_order)
        except ExpInterpError:
            raise
        except Exception as exc:
            raise EvaluatorFailure(f'Evaluator {self.name} failed at t={t}: {exc}') from exc

    def value(self, t: float) -> complex | float:
        result = self(float(t), 0)[0]
        return complex(result) if np.iscomplexobj(result) else float(result)

    def operator_image(self, c: np.ndarray, ts: np.ndarray) -> np.ndarray:
        """(D_c f)(t) = sum_k c_k f^(k)(t) over an array of points"""
        return np.tensordot(np.asarray(c), self(ts, len(c) - 1), axes=1)


class ExponentialPolynomialEvaluator(FunctionEvaluator):
    """
    anything expressible as an exponential polynomial: exp, sin, cosh, t sin t, kernel elements ...
    """

    def __init__(self, name: str, ep: ExponentialPolynomial):
        super().__init__(name)
        self.ep = ep

    def derivatives(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        return self.ep.derivative_values(t, max_order)


class RungeEvaluator(FunctionEvaluator):
    """
    g(t) = 1 / (1 + (sigma t)^2)

    With h(s) = 1 / (1 + s^2), (1 + s^2) h^(k) = -2k s h^(k-1) - k(k-1) h^(k-2), and g^(k)(t) = sigma^k h^(k)(sigma t).
    """

    def __init__(self, sigma: float = 1.0):
        super().__init__('runge')
        self.sigma = float(sigma)

    def derivatives(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        s = self.sigma * np.asarray(t, dtype=float)
        denominator = 1 + s * s
        out = np.zeros((max_order + 1, *s.shape))
        out[0] = 1 / denominator
        for k in range(1, max_order + 1):
            previous = out[k - 2] if k > 1 else 0.0
            out[k] = (-2 * k * s * out[k - 1] - k * (k - 1) * previous) / denominator
        scale = self.sigma ** np.arange(max_order + 1)
        return out * scale.reshape((-1,) + (1,) * s.ndim)


class CallableEvaluator(FunctionEvaluator):
    """
    wraps a plain function f(t, max_order) -> derivative stack; serial unless declared otherwise
    """

    def __init__(self, name: str, function: Callable, smoothness: int = ANALYTIC, thread_safe: bool = False):
        super().__init__(name, smoothness, thread_safe)
        self.function = function

    def derivatives(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        return np.asarray(self.function(t, max_order))


class TabulatedEvaluator(FunctionEvaluator):
    """
    derivative data at the nodes only; anything else is a failure
    """

    def __init__(self, nodes: Sequence[float], data: Mapping[tuple[int, int], complex]):
        super().__init__('tabulated', smoothness=0)
        self.nodes = tuple(float(node) for node in nodes)
        self.data = dict(data)

    def __call__(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        return self.derivatives(t, max_order)

    def derivatives(self, t: float | np.ndarray, max_order: int) -> np.ndarray:
        if np.ndim(t) or float(t) not in self.nodes:
            raise EvaluatorFailure(f'Tabulated data exists only at the nodes {self.nodes}, not at {t}')
        alpha = self.nodes.index(float(t)) + 1
        missing = [beta for beta in range(max_order + 1) if (alpha, beta) not in self.data]
        if missing:
            raise EvaluatorFailure(f'No tabulated derivatives of order {missing} at node {t}')
        values = np.asarray([self.data[(alpha, beta)] for beta in range(max_order + 1)], dtype=complex)
        return values.real if not np.any(values.imag) else values


def _as_complex(raw: float | Sequence[float]) -> complex:
    """a real, or an [re, im] pair"""
    try:
        if isinstance(raw, (list, tuple)):
            re, im = raw
            return complex(float(re), float(im))
        if isinstance(raw, str):
            raise TypeError('text is not a number')
        return complex(raw)
    except (TypeError, ValueError) as error:
        raise UsageError(f'Expected a number or an [re, im] pair, got {raw!r}: {error}') from error


def _trig_pairs(coefficients: np.ndarray, sigma: complex, name: str) -> list[tuple[complex, np.ndarray]]:
    """p(t) sin(sigma t) or p(t) cos(sigma t) as two exponential blocks"""
    if name == 'sin':
        return [(1j * sigma, -0.5j * coefficients), (-1j * sigma, 0.5j * coefficients)]
    return [(1j * sigma, 0.5 * coefficients), (-1j * sigma, 0.5 * coefficients)]


def _hyperbolic_pairs(coefficients: np.ndarray, sigma: complex, name: str) -> list[tuple[complex, np.ndarray]]:
    sign = 1 if name == 'cosh' else -1
    return [(sigma, 0.5 * coefficients), (-sigma, sign * 0.5 * coefficients)]


def build_evaluator(
    kind: str,
    parameters: Mapping | None = None,
    rd: RootDecomposition | None = None,
) -> FunctionEvaluator:
    """
    an evaluator from the built-in catalog

    Args:
        kind (str): exp, sin, cos, sinh, cosh, polynomial, poly_exp, poly_sin, runge or kernel
        parameters (dict): sigma (real or [re, im]), coefficients (ascending), coordinates (kernel)
        rd (RootDecomposition): the kernel's roots, needed for kind 'kernel'

    Returns:
        the FunctionEvaluator
    """
    parameters = parameters or {}
    sigma = _as_complex(parameters.get('sigma', 1.0))
    raw_coefficients = parameters.get('coefficients', [1.0])
    if not isinstance(raw_coefficients, (list, tuple)) or not raw_coefficients:
        raise UsageError(f'coefficients should be a non-empty list, got {raw_coefficients!r}')
    coefficients = np.asarray([_as_complex(value) for value in raw_coefficients], dtype=complex)
    real = sigma.imag == 0 and not np.any(coefficients.imag)

    if kind == 'runge':
        if sigma.imag:
            raise UsageError('runge takes a real sigma')
        return RungeEvaluator(sigma.real)

    if kind == 'kernel':
        if rd is None or 'coordinates' not in parameters:
            raise UsageError('A kernel function needs the operator roots and its coordinates')
        raw_coordinates = parameters['coordinates']
        if not isinstance(raw_coordinates, (list, tuple)) or len(raw_coordinates) != rd.n:
            raise UsageError(f'A kernel function needs {rd.n} coordinates, got {raw_coordinates!r}')
        coordinates = [_as_complex(value) for value in raw_coordinates]
        ep = kernel_element(rd, coordinates, real=bool(parameters.get('real', False)))
        return ExponentialPolynomialEvaluator('kernel', ep)

    if kind in ('exp', 'sin', 'cos', 'sinh', 'cosh'):
        coefficients = np.ones(1, dtype=complex)
        real = sigma.imag == 0

    if kind in ('exp', 'poly_exp'):
        pairs = [(sigma, coefficients)]
    elif kind in ('sin', 'cos'):
        pairs = _trig_pairs(coefficients, sigma, kind)
    elif kind == 'poly_sin':
        pairs = _trig_pairs(coefficients, sigma, 'sin')
    elif kind in ('sinh', 'cosh'):
        pairs = _hyperbolic_pairs(coefficients, sigma, kind)
    elif kind == 'polynomial':
        pairs = [(0, coefficients)]
    else:
        raise UsageError(f'Unknown function kind {kind!r}')

    return ExponentialPolynomialEvaluator(kind, ExponentialPolynomial.from_pairs(pairs, real=real))


def derivative_consistency(f: FunctionEvaluator, t: float, h: float = 1e-4) -> tuple[float, float]:
    """
    compare f'(t) against a central difference of f

    Returns:
        (|f'(t) - (f(t+h) - f(t-h)) / 2h|, the tolerance it is judged against)
    """
    stack = f(float(t), 3)
    central = (f(t + h, 0)[0] - f(t - h, 0)[0]) / (2 * h)
    deviation = float(abs(stack[1] - central))
    return deviation, h * h * (1 + abs(stack[3])) + 1e-10 * (1 + abs(stack[0]))
