"""
Exceptions raised across expinterp

Every error carries the exit code the command-line front-end maps it to, so the
CLI never needs a lookup table of its own:
    1 - usage error (bad problem specification, unsupported command for the input)
    2 - operator-stage failure (roots, characteristic solution, evaluators)
    3 - degenerate interpolation system
    4 - quadrature non-convergence
"""


class ExpInterpError(Exception):
    """
    base class for all expinterp failures
    """

    exit_code: int = 1


class UsageError(ExpInterpError):
    """the problem specification or command line was not usable"""

    exit_code = 1


# region: operator stage
class OperatorError(ExpInterpError):
    """
    anything which goes wrong while building the operator, its roots, or the characteristic solution
    """

    exit_code = 2


class ZeroLeadingCoefficient(OperatorError):
    """the last coefficient of the operator was 0, so it can't be made monic"""


class TooShort(OperatorError):
    """fewer than two coefficients, i.e. an operator of order 0"""


class DegreeTooLarge(OperatorError):
    """companion-matrix root finding is not offered beyond the configured maximum degree"""


class ClusterAmbiguity(OperatorError):
    """two root clusters are too close to call - supply the roots explicitly"""


class ReconstructionFailure(OperatorError):
    """the product of the root factors doesn't reproduce the characteristic polynomial"""


class MultiplicityMismatch(OperatorError):
    """supplied multiplicities don't add up to the operator order"""


class SeriesInversionFailure(OperatorError):
    """a cofactor polynomial vanishes (numerically) at its own root"""


class RealificationFailure(OperatorError):
    """a value which should be real carries a significant imaginary part"""


class StepFailure(OperatorError):
    """the IVP integrator could not complete a step"""


class EvaluatorFailure(OperatorError):
    """a FunctionEvaluator could not provide the requested derivatives"""


# endregion


# region: interpolation system
class DegenerateSystemError(ExpInterpError):
    """
    the interpolation system can't be solved uniquely, or is malformed
    """

    exit_code = 3


class NonIncreasingNodes(DegenerateSystemError):
    """nodes must be strictly increasing"""


class EmptySystem(DegenerateSystemError):
    """an interpolation system needs at least one node"""


class NonPositiveMultiplicity(DegenerateSystemError):
    """every node needs at least one interpolated derivative"""


class DimensionMismatch(DegenerateSystemError):
    """the system dimension doesn't match the operator order"""


class SingularSystem(DegenerateSystemError):
    """the generalised Wronskian vanishes for this kernel and system"""


class DegenerateParameters(DegenerateSystemError):
    """the nondegeneracy hypothesis of a closed-form case fails"""


class MissingData(DegenerateSystemError):
    """interpolation data is missing for one or more (node, derivative) slots"""


# endregion


class QuadratureError(ExpInterpError):
    """adaptive quadrature ran out of depth before reaching the tolerance"""

    exit_code = 4


class MaxDepthExceeded(QuadratureError):
    """raised only in strict mode, otherwise the result is flagged as not converged"""


class IllConditioned(UserWarning):
    """
    a warning, not an error - the Wronskian system is solvable but badly conditioned
    """
