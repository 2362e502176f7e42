"""
Closed-form standard bases, one class per known kernel/system pairing

Each case knows its operator, the shape of its interpolation system, the scalar formulas for its
chi_(alpha, beta) and omega_c, the Wronskian in its natural fundamental system, and when the system
degenerates. These bases are built by formula, never by a linear solve, so they serve as independent
references for standard_basis.

One CatalogCase instance is created per node set, and closed_form_catalog turns it into a StandardBasis.
"""

import math
from abc import abstractmethod
from itertools import combinations

import numpy as np
from numpy.polynomial import polynomial as npoly

from expinterp.errors import DegenerateParameters, DimensionMismatch, UsageError
from expinterp.hermite_basis import (
    InterpolationSystem,
    Slot,
    StandardBasis,
    evaluation_matrix,
    factorise,
    make_system,
    taylor_basis,
)
from expinterp.kernelcore import (
    DifferentialOperatorSpec,
    ExponentialPolynomial,
    elementary,
    find_roots,
    fundamental_system,
    linear_combination,
    make_operator,
    polynomial,
)

DEGENERACY_TOL = 1e-12


def _terms(*terms: tuple[float, str, float]) -> ExponentialPolynomial:
    """sum of weight * name(t - shift) over (weight, name, shift) triples"""
    return linear_combination([weight for weight, _, _ in terms], [elementary(name, shift) for _, name, shift in terms])


class CatalogCase:
    """
    base class for the closed-form cases
    """

    case_id: str = ''
    node_count: int | None = None

    def __init__(self, nodes: tuple[float, ...], n: int | None = None):
        if self.node_count is not None and len(nodes) != self.node_count:
            raise DimensionMismatch(f'{self.case_id} needs {self.node_count} nodes, got {len(nodes)}')
        self.nodes = tuple(float(node) for node in nodes)
        self.n = n if n is not None else self.default_order()
        self.check()

    def default_order(self) -> int:
        return sum(self.multiplicities())

    @abstractmethod
    def coefficients(self) -> list[float]:
        """operator coefficients c_0 .. c_n"""

    @abstractmethod
    def multiplicities(self) -> tuple[int, ...]:
        """the system's multiplicities for this node count"""

    @abstractmethod
    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        """chi_(alpha, beta) by formula"""

    @abstractmethod
    def wronskian(self) -> float:
        """W in this case's natural fundamental system"""

    @abstractmethod
    def omega_c(self, t: float) -> float:
        """the characteristic solution as a scalar formula"""

    def check(self):
        """raise DegenerateParameters when the case's nondegeneracy assumption fails"""
        if sum(self.multiplicities()) != self.n:
            raise DimensionMismatch(f'{self.case_id} with {len(self.nodes)} nodes cannot carry order {self.n}')
        if abs(self.wronskian()) <= DEGENERACY_TOL:
            raise DegenerateParameters(
                f'{self.case_id} is degenerate for nodes {self.nodes}: W = {self.wronskian():.3g}',
            )

    def operator(self) -> DifferentialOperatorSpec:
        return make_operator(self.coefficients())

    def system(self) -> InterpolationSystem:
        return make_system(self.nodes, self.multiplicities())


class Hyperbolic2(CatalogCase):
    """f'' - f, two simple nodes"""

    case_id = 'hyperbolic2'
    node_count = 2

    def coefficients(self) -> list[float]:
        return [-1.0, 0.0, 1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return 1, 1

    def wronskian(self) -> float:
        a1, a2 = self.nodes
        return math.sinh(a2 - a1)

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        a1, a2 = self.nodes
        return {
            (1, 0): elementary('sinh', a2, 1 / math.sinh(a1 - a2)),
            (2, 0): elementary('sinh', a1, 1 / math.sinh(a2 - a1)),
        }

    def omega_c(self, t: float) -> float:
        return math.sinh(t)


class Trigonometric2(CatalogCase):
    """f'' + f, two simple nodes, degenerate when a_2 - a_1 is a multiple of pi"""

    case_id = 'trigonometric2'
    node_count = 2

    def coefficients(self) -> list[float]:
        return [1.0, 0.0, 1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return 1, 1

    def wronskian(self) -> float:
        a1, a2 = self.nodes
        return math.sin(a2 - a1)

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        a1, a2 = self.nodes
        return {
            (1, 0): elementary('sin', a2, 1 / math.sin(a1 - a2)),
            (2, 0): elementary('sin', a1, 1 / math.sin(a2 - a1)),
        }

    def omega_c(self, t: float) -> float:
        return math.sin(t)


class Biharmonic4(CatalogCase):
    """
    f'''' - f at two nodes, each matching value and first derivative

    With d = a_1 - a_2 the system is degenerate exactly when cosh(d) cos(d) = 1.
    """

    case_id = 'biharmonic4'
    node_count = 2

    def coefficients(self) -> list[float]:
        return [-1.0, 0.0, 0.0, 0.0, 1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return 2, 2

    def wronskian(self) -> float:
        d = self.nodes[0] - self.nodes[1]
        return 2 - 2 * math.cosh(d) * math.cos(d)

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        a1, a2 = self.nodes
        d = a1 - a2
        w = self.wronskian()
        even = (math.cosh(d) - math.cos(d)) / w
        plus = (math.sinh(d) + math.sin(d)) / w
        minus = (math.sinh(d) - math.sin(d)) / w
        return {
            (1, 0): _terms((even, 'cosh', a2), (-even, 'cos', a2), (-plus, 'sinh', a2), (plus, 'sin', a2)),
            (1, 1): _terms((even, 'sinh', a2), (-even, 'sin', a2), (-minus, 'cosh', a2), (minus, 'cos', a2)),
            (2, 0): _terms((even, 'cosh', a1), (-even, 'cos', a1), (plus, 'sinh', a1), (-plus, 'sin', a1)),
            (2, 1): _terms((even, 'sinh', a1), (-even, 'sin', a1), (minus, 'cosh', a1), (-minus, 'cos', a1)),
        }

    def omega_c(self, t: float) -> float:
        return (math.sinh(t) - math.sin(t)) / 2


class OddHyperbolic3(CatalogCase):
    """
    f''' - f' at three simple nodes; chi_(alpha, 0) is a shifted cosh, normalised at its own node
    """

    case_id = 'odd_hyperbolic3'
    node_count = 3
    even_name = 'cosh'

    def coefficients(self) -> list[float]:
        return [0.0, -1.0, 0.0, 1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return 1, 1, 1

    def _even(self, t: float) -> float:
        return math.cosh(t)

    def wronskian(self) -> float:
        a1, a2, a3 = self.nodes
        return 4 * math.sinh((a1 - a3) / 2) * math.sinh((a2 - a1) / 2) * math.sinh((a3 - a2) / 2)

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        chis = {}
        for alpha in range(3):
            own = self.nodes[alpha]
            first, second = self.nodes[(alpha + 1) % 3], self.nodes[(alpha + 2) % 3]
            mid, half = (first + second) / 2, (first - second) / 2
            scale = 1 / (self._even(own - mid) - self._even(half))
            chis[(alpha + 1, 0)] = _terms((scale, self.even_name, mid), (-scale * self._even(half), 'one', 0.0))
        return chis

    def omega_c(self, t: float) -> float:
        return math.cosh(t) - 1


class OddTrigonometric3(OddHyperbolic3):
    """
    f''' + f' at three simple nodes; the trigonometric twin of OddHyperbolic3

    Its Wronskian in the fundamental system (1, cos(t - a_3), sin(t - a_3)) is
    sin(a_3 - a_2) + sin(a_1 - a_3) + sin(a_2 - a_1), which factors as
    -4 sin((a_1 - a_3)/2) sin((a_2 - a_1)/2) sin((a_3 - a_2)/2).
    """

    case_id = 'odd_trigonometric3'
    even_name = 'cos'

    def coefficients(self) -> list[float]:
        return [0.0, 1.0, 0.0, 1.0]

    def _even(self, t: float) -> float:
        return math.cos(t)

    def wronskian(self) -> float:
        a1, a2, a3 = self.nodes
        return math.sin(a3 - a2) + math.sin(a1 - a3) + math.sin(a2 - a1)

    def omega_c(self, t: float) -> float:
        return 1 - math.cos(t)


class Lagrange(CatalogCase):
    """f^(n) with n simple nodes: the Lagrange polynomials"""

    case_id = 'lagrange'

    def coefficients(self) -> list[float]:
        return [0.0] * self.n + [1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return (1,) * len(self.nodes)

    def wronskian(self) -> float:
        return float(np.prod([later - earlier for earlier, later in combinations(self.nodes, 2)]))

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        chis = {}
        for alpha, node in enumerate(self.nodes, start=1):
            others = [other for other in self.nodes if other != node]
            numerator = npoly.polyfromroots(others) if others else np.ones(1)
            chis[(alpha, 0)] = polynomial(numerator / np.prod([node - other for other in others]))
        return chis

    def omega_c(self, t: float) -> float:
        return t ** (self.n - 1) / math.factorial(self.n - 1)


class TaylorPolynomial(CatalogCase):
    """f^(n) with one node of multiplicity n: the Taylor monomials (t - a)^j / j!"""

    case_id = 'taylor_polynomial'
    node_count = 1

    def default_order(self) -> int:
        raise UsageError('taylor_polynomial needs the order n')

    def coefficients(self) -> list[float]:
        return [0.0] * self.n + [1.0]

    def multiplicities(self) -> tuple[int, ...]:
        return (self.n,)

    def wronskian(self) -> float:
        return float(np.prod([math.factorial(j) for j in range(self.n)]))

    def chis(self) -> dict[Slot, ExponentialPolynomial]:
        (a,) = self.nodes
        chis = {}
        for j in range(self.n):
            monomial = np.zeros(j + 1)
            monomial[j] = 1 / math.factorial(j)
            chis[(1, j)] = polynomial(monomial, shift=a)
        return chis

    def omega_c(self, t: float) -> float:
        return t ** (self.n - 1) / math.factorial(self.n - 1)


CATALOG: dict[str, type[CatalogCase]] = {
    case.case_id: case
    for case in (
        Hyperbolic2,
        Trigonometric2,
        Biharmonic4,
        OddHyperbolic3,
        OddTrigonometric3,
        Lagrange,
        TaylorPolynomial,
    )
}
CASE_IDS = (*CATALOG, 'taylor_general')


def catalog_case(case_id: str, nodes: tuple[float, ...], n: int | None = None) -> CatalogCase:
    if case_id not in CATALOG:
        raise UsageError(f'Unknown catalog case {case_id!r}, choose from {sorted(CASE_IDS)}')
    return CATALOG[case_id](nodes, n)


def closed_form_catalog(
    case_id: str,
    nodes: tuple[float, ...],
    n: int | None = None,
    coefficients: list[complex] | None = None,
) -> StandardBasis:
    """
    the closed-form StandardBasis for a catalog case

    Args:
        case_id (str): one of CASE_IDS
        nodes (tuple[float]): the nodes, strictly increasing
        n (int): the order, for the lagrange and taylor cases
        coefficients (list): the operator, for taylor_general only

    Returns:
        a StandardBasis of kind 'catalog' (or 'taylor' for taylor_general)
    """
    if case_id == 'taylor_general':
        if coefficients is None or len(nodes) != 1:
            raise UsageError('taylor_general needs operator coefficients and exactly one node')
        op = make_operator(coefficients)
        return taylor_basis(op, find_roots(op), nodes[0])

    case = catalog_case(case_id, tuple(nodes), n)
    op = case.operator()
    sys = case.system()
    centered = [omega.translate(-sys.center()) for omega in fundamental_system(find_roots(op))]
    factors = factorise(evaluation_matrix(sys, centered))
    return StandardBasis(
        system=sys,
        chis=case.chis(),
        wronskian=case.wronskian(),
        condition_estimate=factors.condition_estimate,
        kind='catalog',
    )
