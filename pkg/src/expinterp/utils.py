"""
Shared helpers: reading specs, writing reports, grids and the worker pool
"""

import json
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

import numpy as np
import pandas as pd
from cloudpathlib.anypath import to_anypath

from expinterp.config import config_retrieve, thread_count
from expinterp.errors import UsageError
from expinterp.static_values import get_logger

Item = TypeVar('Item')
Result = TypeVar('Result')


def read_json_from_path(read_path: str | None = None, default: Any = None, return_model: Any = None) -> Any:
    """
    take a path to a JSON file, read into an object
    if the path doesn't exist - return the default object
    uses cloudpath to be deployment agnostic

    Args:
        read_path (str): where to read from - if None... will return the value "default"
        default (Any):
        return_model (pydantic Models): any Model to read/validate as

    Returns:
        either the object from the JSON file, or the default
    """
    # imported here, models imports the numerical modules which import this one
    from expinterp.models import lift_up_model_version

    if read_path is None:
        get_logger().error('read_json_from_path was passed the path "None"')
        return default

    read_anypath = to_anypath(read_path)

    if not read_anypath.exists():
        get_logger().error(f'{read_path} did not exist')
        return default

    with read_anypath.open() as handle:
        json_data = json.load(handle)
        if return_model:
            model_data = lift_up_model_version(json_data, return_model)
            return return_model.model_validate(model_data)
        return json_data


def complex_pair(value: complex | float) -> list[float]:
    value = complex(value)
    return [value.real, value.imag]


def format_float(value: float, digits: int | None = None) -> str:
    """fixed significant digits, so that identical runs give identical text"""
    if not math.isfinite(value):
        return json.dumps(str(value))
    digits = digits or int(config_retrieve(['cli', 'float_digits'], 17))
    return format(value, f'.{digits}g')


def _rounded(value: Any) -> Any:
    """floats to float_digits significant digits, non-finite ones as text, containers walked"""
    if isinstance(value, float):
        return float(format_float(value)) if math.isfinite(value) else str(value)
    if isinstance(value, dict):
        return {str(key): _rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    return value


class ReportEncoder(json.JSONEncoder):
    """
    to be used as a JSON encoding class for reports
    - complex numbers become [re, im] pairs
    - numpy arrays and scalars become lists and plain numbers
    - every float is rounded to the configured significant digits first
    """

    def default(self, o):
        if isinstance(o, (complex, np.complexfloating)):
            return _rounded(complex_pair(o))
        if isinstance(o, np.ndarray):
            return _rounded(o.tolist())
        if isinstance(o, np.generic):
            return _rounded(o.item())
        if isinstance(o, set):
            return _rounded(sorted(o))
        return super().default(o)

    def iterencode(self, o, _one_shot=False):
        return super().iterencode(_rounded(o), _one_shot)


def dumps_report(data: Any, indent: int = 2) -> str:
    """
    JSON text with every float printed to a fixed number of significant digits

    Args:
        data (Any): nested dicts/lists of plain values, complex numbers become [re, im]
        indent (int): spaces per level

    Returns:
        the JSON document, newline terminated
    """
    return json.dumps(data, cls=ReportEncoder, indent=indent) + '\n'


def write_text(content: str, out_path: str | None = None):
    """write to a local or cloud path, or stdout when no path is given"""
    if out_path is None:
        print(content, end='')
        return
    with to_anypath(out_path).open('w') as handle:
        handle.write(content)


def grid_table(columns: dict[str, Sequence[complex | float]]) -> pd.DataFrame:
    """
    a plot-ready table, complex columns split into _re and _im
    """
    table = {}
    for name, values in columns.items():
        array = np.asarray(values)
        if np.iscomplexobj(array) and np.any(array.imag):
            table[f'{name}_re'] = array.real
            table[f'{name}_im'] = array.imag
        else:
            table[name] = array.real
    return pd.DataFrame(table)


def table_to_csv(table: pd.DataFrame) -> str:
    digits = int(config_retrieve(['cli', 'float_digits'], 17))
    return table.to_csv(index=False, float_format=f'%.{digits}g', lineterminator='\n')


def parse_grid(grid: str | None) -> np.ndarray | None:
    """
    'start:stop:count', or 'start:stop' with the configured default count
    """
    if grid is None:
        return None
    parts = grid.split(':')
    try:
        if len(parts) == 2:
            start, stop = float(parts[0]), float(parts[1])
            count = int(config_retrieve(['cli', 'default_grid_count'], 101))
        elif len(parts) == 3:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            raise ValueError(grid)
    except ValueError as exc:
        raise UsageError(f'Grid should look like start:stop:count, got {grid!r}') from exc
    if count < 1 or stop < start:
        raise UsageError(f'Grid {grid!r} needs count >= 1 and start <= stop')
    return np.linspace(start, stop, count)


def ordered_map(function: Callable[[Item], Result], items: Iterable[Item], parallel: bool = True) -> list[Result]:
    """
    apply function to every item, results in input order

    Uses a thread pool capped by EXPINTERP_THREADS unless parallel is False or the cap is 0/1.
    """
    items = list(items)
    workers = min(thread_count(), len(items)) if parallel else 0
    if workers <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))
