"""
Command-line front-end

    expinterp omega  --spec problem.json            omega_c, its roots and initial values
    expinterp basis  --spec problem.json            the standard basis and its Wronskian
    expinterp interp --spec problem.json            the interpolant at the eval points
    expinterp verify --spec problem.json            interpolant + remainder against f
    expinterp green  --spec problem.json            the classical Green-kernel form (c = (0, ..., 0, 1))

Reports go to stdout or --out as JSON, or as a CSV grid table / text table with --format.
Exit codes: 0 success, 1 usage, 2 operator stage, 3 degenerate system, 4 quadrature, 5 verification failed.

verify passes when every residual |f(x) - interpolant - integrals| is at most residual_tolerance * (1 + |f(x)|),
the tolerance taken from the spec when given there and from the [cli] config section otherwise. The spec's own
`tolerance` (and --tol) is the quadrature tolerance, not the acceptance threshold.
"""

import json
from argparse import ArgumentParser
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError
from tabulate import tabulate

from expinterp.catalog import closed_form_catalog
from expinterp.charsol import (
    Construction,
    addition_formula_residual,
    characteristic_solution,
    initial_value_residuals,
    ivp_solution,
    kronecker_residual_matrix,
)
from expinterp.config import config_check, config_retrieve, set_config_path
from expinterp.corollaries import CorollaryParams, corollary_suite
from expinterp.errors import ExpInterpError, UsageError
from expinterp.evaluators import FunctionEvaluator, TabulatedEvaluator, build_evaluator
from expinterp.hermite_basis import (
    InterpolationSystem,
    Slot,
    StandardBasis,
    coordinates,
    interpolate,
    interpolate_function,
    kronecker_deviation,
    make_system,
    standard_basis,
)
from expinterp.kernelcore import (
    DifferentialOperatorSpec,
    ExponentialPolynomial,
    RootDecomposition,
    find_roots,
    kernel_element,
    kernel_residual,
    make_operator,
    make_operator_from_roots,
)
from expinterp.models import (
    BasisReport,
    ErrorReport,
    GreenReport,
    InterpReport,
    OmegaReport,
    ProblemSpec,
    VerifyReport,
)
from expinterp.remainder import (
    classical_reconstruct,
    green_integral,
    greens_kernel_values,
    make_green_kernel,
    reconstruct_many,
    remainder_integral,
    require_polynomial_operator,
)
from expinterp.static_values import get_logger, set_log_level
from expinterp.utils import dumps_report, grid_table, parse_grid, read_json_from_path, table_to_csv, write_text

COMMANDS = ('omega', 'basis', 'interp', 'verify', 'green')
VERIFICATION_FAILED = 5

CommandResult = tuple[Any, pd.DataFrame | None]

# the numeric settings the commands read, and the types they must have
CONFIG_TYPES: dict[tuple[str, str], type | tuple[type, ...]] = {
    ('remainder', 'default_tol'): float,
    ('remainder', 'max_depth'): int,
    ('remainder', 'quadrature_points'): int,
    ('hermite_basis', 'ill_conditioned'): (int, float),
    ('cli', 'float_digits'): int,
    ('cli', 'residual_tolerance'): float,
    ('cli', 'property_samples'): int,
}


def check_config() -> list[str]:
    """
    collect type and presence faults in the active config; absent keys fall back to built-in defaults
    """
    faults = [fault for key, kind in CONFIG_TYPES.items() for fault in config_check(list(key), kind)]
    for fault in faults:
        get_logger().warning(f'Config: {fault}')
    return faults


def slot_key(slot: Slot) -> str:
    return f'{slot[0]},{slot[1]}'


def blocks_of(ep: ExponentialPolynomial) -> list[dict[str, Any]]:
    return [{'rate': block.rate, 'coefficients': list(block.array)} for block in ep.blocks]


# region: building the pipeline inputs
def load_spec(spec_path: str) -> ProblemSpec:
    try:
        spec = read_json_from_path(spec_path, return_model=ProblemSpec)
    except json.JSONDecodeError as je:
        raise UsageError(f'Problem specification {spec_path} is not valid JSON: {je}') from je
    except ValidationError as ve:
        raise UsageError(f'Invalid problem specification {spec_path}: {ve}') from ve
    if spec is None:
        raise UsageError(f'Problem specification {spec_path} could not be read')
    return spec


def build_operator(spec: ProblemSpec) -> tuple[DifferentialOperatorSpec, RootDecomposition]:
    if spec.operator.roots is not None:
        return make_operator_from_roots(spec.operator.root_pairs())
    op = make_operator(spec.operator.coefficient_values())
    return op, find_roots(op)


def build_system(spec: ProblemSpec) -> InterpolationSystem:
    if spec.system is None:
        raise UsageError('This command needs an interpolation system')
    return make_system(spec.system.nodes, spec.system.multiplicity_values())


def build_function(spec: ProblemSpec, sys: InterpolationSystem, rd: RootDecomposition) -> FunctionEvaluator:
    if spec.function is None:
        raise UsageError('This command needs a function')
    if spec.function.is_tabulated:
        return TabulatedEvaluator(sys.nodes, spec.function.data())
    return build_evaluator(spec.function.kind, spec.function.parameters, rd)


def require_sampled_function(spec: ProblemSpec, command: str):
    if spec.function is not None and spec.function.is_tabulated:
        raise UsageError(f'{command} needs derivatives away from the nodes, tabulated data only exists at them')


def eval_points(spec: ProblemSpec) -> list[float]:
    if not spec.eval_points:
        raise UsageError('This command needs at least one eval point')
    return [float(x) for x in spec.eval_points]


# endregion


# region: commands
def cmd_omega(spec: ProblemSpec, grid: np.ndarray | None) -> CommandResult:
    op, rd = build_operator(spec)
    cs = characteristic_solution(op, rd)
    ep = cs._require_ep()
    residual, _ = kernel_residual(op, ep)

    table, deviation = None, None
    if grid is not None:
        values = ep.evaluate_many(grid)
        table = grid_table({'t': grid, 'omega': values})
        if spec.construction == Construction.IVP_ORACLE.value:
            oracle = np.asarray(ivp_solution(op, list(grid)))
            deviation = float(np.max(np.abs(oracle - values)))
            table['ivp'] = oracle.real

    report = OmegaReport(
        order=op.n,
        real=op.is_real,
        coefficients=list(op.coefficients),
        roots=[{'value': value, 'multiplicity': mult} for value, mult in rd.pairs()],
        blocks=blocks_of(ep),
        real_form=ep.to_real_form(),
        initial_value_residuals=initial_value_residuals(cs),
        kernel_residual=residual,
        ivp_max_deviation=deviation,
    )
    return report, table


def _catalog_deviation(spec: ProblemSpec, op: DifferentialOperatorSpec, basis: StandardBasis) -> float:
    """max |chi - chi_catalog| over 50 points spanning the nodes, padded by 1 either side"""
    sys = basis.system
    oracle = closed_form_catalog(spec.catalog, sys.nodes, op.n, list(op.coefficients))
    low, high = sys.interval()
    ts = np.linspace(low - 1, high + 1, 50)
    return max(
        float(np.max(np.abs(basis.chis[slot].evaluate_many(ts) - oracle.chis[slot].evaluate_many(ts))))
        for slot in sys.slots()
    )


def cmd_basis(spec: ProblemSpec, grid: np.ndarray | None) -> CommandResult:
    op, rd = build_operator(spec)
    sys = build_system(spec)
    basis = standard_basis(op, rd, sys)

    table = None
    if grid is not None:
        table = grid_table(
            {'t': grid, **{f'chi_{slot[0]}_{slot[1]}': basis.chis[slot].evaluate_many(grid) for slot in sys.slots()}},
        )

    report = BasisReport(
        kind=basis.kind,
        nodes=list(sys.nodes),
        multiplicities=list(sys.multiplicities),
        wronskian=basis.wronskian,
        condition_estimate=basis.condition_estimate,
        kronecker_deviation=kronecker_deviation(basis),
        chis={slot_key(slot): blocks_of(basis.chis[slot]) for slot in sys.slots()},
        catalog=spec.catalog,
        catalog_max_deviation=_catalog_deviation(spec, op, basis) if spec.catalog else None,
    )
    return report, table


def cmd_interp(spec: ProblemSpec, grid: np.ndarray | None) -> CommandResult:
    op, rd = build_operator(spec)
    sys = build_system(spec)
    basis = standard_basis(op, rd, sys)
    f = build_function(spec, sys, rd)
    tabulated = isinstance(f, TabulatedEvaluator)
    interpolant = interpolate(basis, spec.function.data()) if tabulated else interpolate_function(basis, f)

    points = []
    for x in eval_points(spec):
        point: dict[str, Any] = {'x': x, 'interpolant': interpolant.evaluate(x)}
        if not tabulated:
            point['f'] = f.value(x)
            point['error'] = abs(point['f'] - point['interpolant'])
        points.append(point)

    table = grid_table({'t': grid, 'interpolant': interpolant.ep.evaluate_many(grid)}) if grid is not None else None
    return InterpReport(coordinates=list(coordinates(interpolant, rd)), points=points), table


def _property_snapshot(
    spec: ProblemSpec,
    op: DifferentialOperatorSpec,
    rd: RootDecomposition,
    basis: StandardBasis,
) -> dict[str, float]:
    """the basic identities on this operator, with seeded random kernel elements and (u, v) pairs"""
    cs = characteristic_solution(op, rd)
    rng = np.random.default_rng(spec.seed)
    samples = int(config_retrieve(['cli', 'property_samples'], 8))
    addition = 0.0
    for _ in range(samples):
        coords = rng.normal(size=op.n) + 1j * rng.normal(size=op.n)
        omega = kernel_element(rd, coords)
        u, v = rng.uniform(-1, 1, size=2)
        scale = 1 + abs(omega.evaluate(u + v))
        addition = max(addition, addition_formula_residual(op, cs, omega, u, v) / scale)
    return {
        'initial_values': max(initial_value_residuals(cs)),
        'kronecker_identity': float(np.max(kronecker_residual_matrix(op, cs))),
        'addition_formula': addition,
        'basis_kronecker': kronecker_deviation(basis),
    }


def cmd_verify(spec: ProblemSpec, tol: float) -> tuple[VerifyReport, pd.DataFrame]:
    require_sampled_function(spec, 'verify')
    op, rd = build_operator(spec)
    sys = build_system(spec)
    basis = standard_basis(op, rd, sys)
    cs = characteristic_solution(op, rd)
    f = build_function(spec, sys, rd)
    xs = eval_points(spec)
    residual_tol = spec.residual_tolerance
    if residual_tol is None:
        residual_tol = float(config_retrieve(['cli', 'residual_tolerance'], 1e-7))

    reports = reconstruct_many(op, cs, basis, f, xs, tol, strict=True)
    passed = all(report.residual <= residual_tol * (1 + abs(report.true_value)) for report in reports)
    points = [
        {
            'x': report.x,
            'f': report.true_value,
            'interpolant': report.interpolant_value,
            'reconstructed': report.reconstructed,
            'residual': report.residual,
            'quadrature_error_estimate': report.quadrature_error_estimate,
            'per_node_integrals': {slot_key(slot): value for slot, value in report.per_node_integrals.items()},
        }
        for report in reports
    ]

    corollary = None
    if spec.corollary:
        params = CorollaryParams(
            nodes=sys.nodes,
            multiplicities=sys.multiplicities,
            n=op.n,
            coefficients=op.coefficients,
        )
        checks = [corollary_suite(spec.corollary, params, f, report.x, tol) for report in reports]
        residuals = [check.residual for check in checks]
        disagreement = [abs(check.reconstructed - report.reconstructed) for check, report in zip(checks, reports)]
        passed = passed and all(
            check.residual <= residual_tol * (1 + abs(check.true_value)) for check in checks
        )
        corollary = {'case': spec.corollary, 'max_residual': max(residuals), 'max_disagreement': max(disagreement)}

    report = VerifyReport(
        tolerance=tol,
        residual_tolerance=residual_tol,
        points=points,
        max_residual=max(report.residual for report in reports),
        corollary=corollary,
        properties=_property_snapshot(spec, op, rd, basis),
        passed=passed,
    )
    table = grid_table(
        {
            'x': [report.x for report in reports],
            'f': [report.true_value for report in reports],
            'interpolant': [report.interpolant_value for report in reports],
            'reconstructed': [report.reconstructed for report in reports],
            'residual': [report.residual for report in reports],
        },
    )
    return report, table


def cmd_green(spec: ProblemSpec, tol: float, grid: np.ndarray | None) -> CommandResult:
    require_sampled_function(spec, 'green')
    op, rd = build_operator(spec)
    require_polynomial_operator(op)
    sys = build_system(spec)
    if sys.n != op.n:
        raise UsageError(f'System dimension {sys.n} does not match the operator order {op.n}')
    cs = characteristic_solution(op, rd)
    f = build_function(spec, sys, rd)
    gk = make_green_kernel(sys)

    points = []
    for x in eval_points(spec):
        single = green_integral(gk, f, x, tol, strict=True)
        classical = classical_reconstruct(sys, f, x, tol, strict=True)
        per_node = sum(
            remainder_integral(op, cs, sys, f, alpha, beta, x, tol, strict=True).value
            * gk.basis.evaluate(alpha, beta, x)
            for alpha, beta in sys.slots()
        )
        points.append(
            {
                'x': x,
                'green_integral': single.value,
                'classical_residual': classical.residual,
                'per_node_sum': per_node,
                'difference': abs(single.value - per_node),
            },
        )

    table = None
    if grid is not None:
        table = grid_table({'t': grid, 'G': greens_kernel_values(gk, points[0]['x'], grid)})
    report = GreenReport(tolerance=tol, points=points, max_difference=max(point['difference'] for point in points))
    return report, table


# endregion


def render(report: Any, table: pd.DataFrame | None, fmt: str) -> str:
    if fmt == 'json':
        return dumps_report(report.model_dump())
    if table is None:
        raise UsageError(f'--format {fmt} needs tabular output, pass --grid for this command')
    if fmt == 'csv':
        return table_to_csv(table)
    return tabulate(table, headers='keys', showindex=False, floatfmt='.10g') + '\n'


def run_command(
    command: str, spec: ProblemSpec, tol: float, grid: np.ndarray | None
) -> tuple[Any, pd.DataFrame | None]:
    if command == 'omega':
        return cmd_omega(spec, grid)
    if command == 'basis':
        return cmd_basis(spec, grid)
    if command == 'interp':
        return cmd_interp(spec, grid)
    if command == 'verify':
        return cmd_verify(spec, tol)
    if command == 'green':
        return cmd_green(spec, tol, grid)
    raise UsageError(f'Unknown command {command!r}, choose from {COMMANDS}')


def main(
    command: str,
    spec_path: str,
    out_path: str | None = None,
    fmt: str = 'json',
    tol: float | None = None,
    grid: str | None = None,
    config_path: str | None = None,
    log_level: str = 'WARNING',
) -> int:
    """
    run one command, write its report, and return the exit code

    Args:
        command (str): omega, basis, interp, verify or green
        spec_path (str): the ProblemSpec JSON
        out_path (str): where to write the report, stdout when None
        fmt (str): json, csv or table
        tol (float): quadrature tolerance, overrides the spec
        grid (str): start:stop:count for grid output, overrides the spec
        config_path (str): TOML config, overrides EXPINTERP_CONFIG
        log_level (str): logging level name

    Returns:
        the process exit code
    """
    set_log_level(log_level.upper())
    if config_path:
        set_config_path(config_path)
    check_config()

    try:
        spec = load_spec(spec_path)
        tolerance = next(
            (value for value in (tol, spec.tolerance) if value is not None),
            float(config_retrieve(['remainder', 'default_tol'], 1e-10)),
        )
        report, table = run_command(command, spec, tolerance, parse_grid(grid or spec.grid))
        write_text(render(report, table, fmt), out_path)
    except ExpInterpError as error:
        get_logger().error(f'{command} failed: {error}')
        failure = ErrorReport(
            command=command, error=type(error).__name__, message=str(error), exit_code=error.exit_code
        )
        write_text(dumps_report(failure.model_dump()), out_path)
        return error.exit_code

    if command == 'verify' and not report.passed:
        get_logger().warning(f'Verification failed, max residual {report.max_residual:.3g}')
        return VERIFICATION_FAILED
    return 0


def cli_main():
    parser = ArgumentParser(description='Hermite-type interpolation from the kernels of linear differential operators')
    parser.add_argument('command', choices=COMMANDS, help='What to compute')
    parser.add_argument('--spec', help='Path to the problem specification JSON', required=True)
    parser.add_argument('--out', help='Where to write the report, stdout if omitted', default=None)
    parser.add_argument('--format', help='Report format', choices=['json', 'csv', 'table'], default='json')
    parser.add_argument('--tol', help='Quadrature tolerance', type=float, default=None)
    parser.add_argument('--grid', help='Grid for tabular output, start:stop:count', default=None)
    parser.add_argument('--config', help='TOML config file, instead of EXPINTERP_CONFIG', default=None)
    parser.add_argument('--log-level', help='Logging level', default='WARNING')
    args = parser.parse_args()

    raise SystemExit(
        main(
            command=args.command,
            spec_path=args.spec,
            out_path=args.out,
            fmt=args.format,
            tol=args.tol,
            grid=args.grid,
            config_path=args.config,
            log_level=args.log_level,
        ),
    )


if __name__ == '__main__':
    cli_main()
