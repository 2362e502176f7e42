"""
tests for the function evaluators
"""

import math

import numpy as np
import pytest

from expinterp.errors import EvaluatorFailure, UsageError
from expinterp.evaluators import (
    CallableEvaluator,
    RungeEvaluator,
    TabulatedEvaluator,
    build_evaluator,
    derivative_consistency,
)
from expinterp.kernelcore import is_in_kernel

THREE_EXPECTED = 3


@pytest.mark.parametrize(
    'kind,parameters,expected',
    [
        ('exp', {}, [math.exp(0.7)] * 4),
        ('sin', {'sigma': 2}, [math.sin(1.4), 2 * math.cos(1.4), -4 * math.sin(1.4), -8 * math.cos(1.4)]),
        ('cos', {}, [math.cos(0.7), -math.sin(0.7), -math.cos(0.7), math.sin(0.7)]),
        ('sinh', {}, [math.sinh(0.7), math.cosh(0.7), math.sinh(0.7), math.cosh(0.7)]),
        ('cosh', {'sigma': 0.5}, [math.cosh(0.35), math.sinh(0.35) / 2, math.cosh(0.35) / 4, math.sinh(0.35) / 8]),
        ('polynomial', {'coefficients': [1, 0, 3]}, [1 + 3 * 0.49, 4.2, 6, 0]),
    ],
)
def test_builtin_derivatives(kind, parameters, expected):
    f = build_evaluator(kind, parameters)
    assert np.allclose(f(0.7, 3), expected, rtol=1e-12)


def test_poly_sin():
    # t sin t: derivative sin t + t cos t
    f = build_evaluator('poly_sin', {'coefficients': [0, 1]})
    t = 1.3
    values = f(t, 1)
    assert values[0] == pytest.approx(t * math.sin(t))
    assert values[1] == pytest.approx(math.sin(t) + t * math.cos(t))


def test_poly_exp_complex_sigma():
    f = build_evaluator('poly_exp', {'sigma': [0, 1], 'coefficients': [1]})
    assert f.value(0.5) == pytest.approx(complex(math.cos(0.5), math.sin(0.5)))


def test_vectorised_shape():
    f = build_evaluator('exp')
    ts = np.linspace(0, 1, 6)
    assert f(ts, 2).shape == (THREE_EXPECTED, 6)


def test_runge_derivatives():
    f = RungeEvaluator(sigma=3.0)
    t = 0.4
    s = 3 * t
    assert f.value(t) == pytest.approx(1 / (1 + s * s))
    # g'(t) = -2 sigma^2 t / (1 + (sigma t)^2)^2
    assert f(t, 1)[1] == pytest.approx(-2 * 9 * t / (1 + s * s) ** 2)


@pytest.mark.parametrize('kind', ['exp', 'sin', 'cosh', 'runge', 'poly_sin'])
def test_derivative_consistency(kind):
    f = build_evaluator(kind, {'sigma': 1.5, 'coefficients': [0, 1]})
    for t in (-1.2, 0.0, 0.8):
        deviation, tolerance = derivative_consistency(f, t)
        assert deviation <= tolerance


def test_operator_image():
    # (D^2 + 1) sin = 0
    f = build_evaluator('sin')
    ts = np.linspace(-2, 2, 9)
    assert np.allclose(f.operator_image(np.asarray([1, 0, 1]), ts), 0, atol=1e-14)


def test_kernel_evaluator(trigonometric):
    op, rd, _ = trigonometric
    f = build_evaluator('kernel', {'coordinates': [[0, 1], [0, -1]]}, rd)
    assert is_in_kernel(op, f.ep)
    with pytest.raises(UsageError):
        build_evaluator('kernel', {'coordinates': [1, 1]})


def test_unknown_kind():
    with pytest.raises(UsageError):
        build_evaluator('potato')


def test_runge_rejects_complex_sigma():
    with pytest.raises(UsageError):
        build_evaluator('runge', {'sigma': [1, 1]})


def test_smoothness_limit():
    f = CallableEvaluator('abs_cubed', lambda t, order: [abs(t) ** 3], smoothness=2)
    with pytest.raises(EvaluatorFailure):
        f(0.5, 3)


def test_callable_failure_wrapped():
    def broken(t, order):
        raise ZeroDivisionError('nope')

    f = CallableEvaluator('broken', broken)
    assert not f.thread_safe
    with pytest.raises(EvaluatorFailure):
        f(0.5, 1)


def test_tabulated():
    f = TabulatedEvaluator([0.0, 1.0], {(1, 0): 2.0, (1, 1): -1.0, (2, 0): 3.0})
    assert np.allclose(f(0.0, 1), [2.0, -1.0])
    assert f.value(1.0) == pytest.approx(3)
    with pytest.raises(EvaluatorFailure):
        f(0.5, 0)
    with pytest.raises(EvaluatorFailure):
        f(1.0, 1)
    with pytest.raises(EvaluatorFailure):
        f(np.asarray([0.0, 1.0]), 0)
