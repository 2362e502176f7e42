"""
A home for common test fixtures
"""

from os import environ
from os.path import join
from pathlib import Path

import numpy as np
import pytest

# force this to come first
PWD = Path(__file__).parent
INPUT: str = str(PWD / 'input')
environ['EXPINTERP_CONFIG'] = join(INPUT, 'example_config.toml')
environ.setdefault('EXPINTERP_THREADS', '2')

from expinterp.charsol import CharacteristicSolution, characteristic_solution  # noqa: E402
from expinterp.config import set_config_path  # noqa: E402
from expinterp.kernelcore import (  # noqa: E402
    DifferentialOperatorSpec,
    RootDecomposition,
    find_roots,
    make_operator,
    make_operator_from_roots,
)

SPECS = join(INPUT, 'specs')
SHALLOW_CONFIG = join(INPUT, 'shallow_quadrature.toml')

OperatorBundle = tuple[DifferentialOperatorSpec, RootDecomposition, CharacteristicSolution]


def bundle(coefficients: list[complex]) -> OperatorBundle:
    """operator, roots and characteristic solution for a coefficient list"""
    op = make_operator(coefficients)
    rd = find_roots(op)
    return op, rd, characteristic_solution(op, rd)


def random_operator(rng: np.random.Generator, order: int, separation: float = 0.25) -> OperatorBundle:
    """
    a real operator with roots spread over [-1, 1] x [-1, 1] (conjugate pairs included), all at least
    `separation` apart, built from its roots so no root finding is involved
    """
    while True:
        pairs: list[tuple[complex, int]] = []
        remaining = order
        while remaining:
            if remaining >= 2 and rng.random() < 0.4:  # noqa: PLR2004
                root = complex(rng.uniform(-1, 1), rng.uniform(0.2, 1))
                pairs.extend([(root, 1), (root.conjugate(), 1)])
                remaining -= 2
            else:
                pairs.append((complex(rng.uniform(-1, 1), 0.0), 1))
                remaining -= 1
        values = [value for value, _ in pairs]
        gaps = [abs(first - second) for index, first in enumerate(values) for second in values[index + 1 :]]
        if not gaps or min(gaps) >= separation:
            break
    op, rd = make_operator_from_roots(pairs)
    return op, rd, characteristic_solution(op, rd)


def spaced_nodes(rng: np.random.Generator, count: int, low: float, high: float, gap: float) -> list[float]:
    while True:
        nodes = np.sort(rng.uniform(low, high, size=count))
        if count == 1 or np.min(np.diff(nodes)) >= gap:
            return [float(node) for node in nodes]


def random_multiplicities(rng: np.random.Generator, n: int) -> list[int]:
    """a random composition of n into at most three parts"""
    parts = int(rng.integers(1, min(n, 3) + 1))
    cuts = sorted(rng.choice(np.arange(1, n), size=parts - 1, replace=False)) if parts > 1 else []
    edges = [0, *cuts, n]
    return [int(later - earlier) for earlier, later in zip(edges, edges[1:])]


@pytest.fixture(name='reset_config', autouse=True)
def fixture_reset_config():
    """
    every test starts from the test config, whatever an earlier test pointed it at
    """
    yield
    set_config_path(join(INPUT, 'example_config.toml'))


@pytest.fixture(name='test_input_path', scope='session')
def fixture_test_input_path() -> str:
    return INPUT


@pytest.fixture(name='test_input_models_path', scope='session')
def fixture_test_input_models_path() -> str:
    return join(INPUT, 'models')


@pytest.fixture(name='specs_path', scope='session')
def fixture_specs_path() -> str:
    return SPECS


@pytest.fixture(name='hyperbolic', scope='session')
def fixture_hyperbolic() -> OperatorBundle:
    """f'' - f, omega_c = sinh"""
    return bundle([-1, 0, 1])


@pytest.fixture(name='trigonometric', scope='session')
def fixture_trigonometric() -> OperatorBundle:
    """f'' + f, omega_c = sin"""
    return bundle([1, 0, 1])


@pytest.fixture(name='biharmonic', scope='session')
def fixture_biharmonic() -> OperatorBundle:
    """f'''' - f, omega_c = (sinh - sin) / 2"""
    return bundle([-1, 0, 0, 0, 1])


@pytest.fixture(name='odd_hyperbolic', scope='session')
def fixture_odd_hyperbolic() -> OperatorBundle:
    """f''' - f', omega_c = cosh - 1"""
    return bundle([0, -1, 0, 1])


@pytest.fixture(name='odd_trigonometric', scope='session')
def fixture_odd_trigonometric() -> OperatorBundle:
    """f''' + f', omega_c = 1 - cos"""
    return bundle([0, 1, 0, 1])


@pytest.fixture(name='cubic', scope='session')
def fixture_cubic() -> OperatorBundle:
    """f''', omega_c = t^2 / 2"""
    return bundle([0, 0, 0, 1])


@pytest.fixture(name='rng')
def fixture_rng() -> np.random.Generator:
    return np.random.default_rng(20240607)
