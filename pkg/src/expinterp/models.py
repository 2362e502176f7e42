"""
A home for the data models read and written by the command line

Problem specifications come in as JSON, reports go out as JSON. Complex numbers are [re, im]
pairs on the wire; a plain real is accepted on input and canonicalised to [x, 0.0], so that a
spec survives a dump/load cycle unchanged.
"""

from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from expinterp.errors import UsageError
from expinterp.static_values import get_logger

# some kind of version tracking
CURRENT_VERSION = '1.0.0'
ALL_VERSIONS = [None, '1.0.0']

ComplexPair = tuple[float, float]


def _canonical_complex(value: Any) -> Any:
    """x -> (x, 0.0), [re, im] unchanged"""
    if isinstance(value, (int, float)):
        return float(value), 0.0
    return value


class OperatorInput(BaseModel):
    """
    either the coefficients c_0 .. c_n, or the factored form as (re, im, multiplicity) roots
    """

    coefficients: list[ComplexPair] | None = None
    roots: list[tuple[float, float, int]] | None = None

    @field_validator('coefficients', mode='before')
    @classmethod
    def canonical_coefficients(cls, value: Any) -> Any:
        if isinstance(value, list):
            return [_canonical_complex(entry) for entry in value]
        return value

    @model_validator(mode='after')
    def exactly_one_form(self) -> 'OperatorInput':
        if (self.coefficients is None) == (self.roots is None):
            raise ValueError('Give the operator as exactly one of coefficients or roots')
        return self

    def coefficient_values(self) -> list[complex]:
        return [complex(re, im) for re, im in self.coefficients or []]

    def root_pairs(self) -> list[tuple[complex, int]]:
        return [(complex(re, im), mult) for re, im, mult in self.roots or []]


class SystemInput(BaseModel):
    """
    nodes, and how many derivatives are matched at each (all 1 when omitted)
    """

    nodes: list[float]
    multiplicities: list[int] | None = None

    def multiplicity_values(self) -> list[int]:
        return self.multiplicities if self.multiplicities is not None else [1] * len(self.nodes)


class TabulatedValue(BaseModel):
    """f^(beta)(a_alpha), alpha 1-based"""

    alpha: int
    beta: int
    value: ComplexPair

    @field_validator('value', mode='before')
    @classmethod
    def canonical_value(cls, value: Any) -> Any:
        return _canonical_complex(value)


class FunctionInput(BaseModel):
    """
    a catalog function (kind + parameters), or tabulated node data with kind 'tabulated'
    """

    kind: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    tabulated: list[TabulatedValue] | None = None

    @model_validator(mode='after')
    def tabulated_consistency(self) -> 'FunctionInput':
        if (self.kind == 'tabulated') != (self.tabulated is not None):
            raise ValueError('Tabulated data goes with kind "tabulated", and only with it')
        return self

    @property
    def is_tabulated(self) -> bool:
        return self.kind == 'tabulated'

    def data(self) -> dict[tuple[int, int], complex]:
        return {(entry.alpha, entry.beta): complex(*entry.value) for entry in self.tabulated or []}


class ProblemSpec(BaseModel):
    """
    everything one command needs
    """

    version: str = CURRENT_VERSION
    operator: OperatorInput
    system: SystemInput | None = None
    function: FunctionInput | None = None
    eval_points: list[float] = Field(default_factory=list)
    tolerance: float | None = None
    residual_tolerance: float | None = None
    construction: str = 'lemmaP'
    catalog: str | None = None
    corollary: str | None = None
    seed: int = 0
    grid: str | None = None


# region: reports
class ErrorReport(BaseModel):
    version: str = CURRENT_VERSION
    command: str
    error: str
    message: str
    exit_code: int


class OmegaReport(BaseModel):
    """
    omega_c as blocks, its initial-value check, and optionally the IVP cross-check on a grid
    """

    version: str = CURRENT_VERSION
    command: str = 'omega'
    order: int
    real: bool
    coefficients: list[complex]
    roots: list[dict[str, Any]]
    blocks: list[dict[str, Any]]
    real_form: list[dict[str, Any]]
    initial_value_residuals: list[float]
    kernel_residual: float
    ivp_max_deviation: float | None = None


class BasisReport(BaseModel):
    """
    the standard basis of one system, W and its condition estimate
    """

    version: str = CURRENT_VERSION
    command: str = 'basis'
    kind: str
    nodes: list[float]
    multiplicities: list[int]
    wronskian: complex
    condition_estimate: float
    kronecker_deviation: float
    chis: dict[str, list[dict[str, Any]]]
    catalog: str | None = None
    catalog_max_deviation: float | None = None


class InterpReport(BaseModel):
    version: str = CURRENT_VERSION
    command: str = 'interp'
    coordinates: list[complex]
    points: list[dict[str, Any]]


class VerifyReport(BaseModel):
    """
    per-point reconstruction, the optional corollary comparison, and snapshots of the basic identities
    """

    version: str = CURRENT_VERSION
    command: str = 'verify'
    tolerance: float
    residual_tolerance: float
    points: list[dict[str, Any]]
    max_residual: float
    corollary: dict[str, Any] | None = None
    properties: dict[str, float]
    passed: bool


class GreenReport(BaseModel):
    version: str = CURRENT_VERSION
    command: str = 'green'
    tolerance: float
    points: list[dict[str, Any]]
    max_difference: float


# endregion


def lift_up_model_version(data: dict, model: type[BaseModel]) -> dict:
    """
    lift over data from one version to another
    this takes a dictionary object, and the model it is supposed to be

    Only the initial version exists so far, so this fills in a missing version and rejects unknown ones

    Args:
        data (dict): the model data prior to any transitions
        model (class): the data model the dict needs to be parsed as

    Returns:
        the input dictionary, transitioned to current format
    """
    if not isinstance(data, dict):
        raise UsageError(f'A {model.__name__} must be a JSON object, got {type(data).__name__}')

    from_version = data.get('version')

    if from_version == CURRENT_VERSION:
        return data

    if from_version not in ALL_VERSIONS:
        raise UsageError(f'Unknown {model.__name__} version: {from_version}')

    get_logger().info(f'{model.__name__} has no version, reading it as {CURRENT_VERSION}')
    data['version'] = CURRENT_VERSION
    return data
