"""
test class for the utils collection
"""

import json
from os.path import join

import numpy as np
import pytest

from expinterp.config import set_config_path
from expinterp.errors import UsageError
from expinterp.models import ProblemSpec
from expinterp.utils import (
    ReportEncoder,
    complex_pair,
    dumps_report,
    format_float,
    grid_table,
    ordered_map,
    parse_grid,
    read_json_from_path,
    table_to_csv,
    write_text,
)

THREE_EXPECTED = 3


def test_read_json_from_path_missing():
    assert read_json_from_path('not/a/real/file.json', default={'x': 1}) == {'x': 1}
    assert read_json_from_path(None, default=[]) == []


def test_read_json_from_path_model(specs_path):
    spec = read_json_from_path(join(specs_path, 'verify_taylor.json'), return_model=ProblemSpec)
    assert isinstance(spec, ProblemSpec)
    assert spec.corollary == 'TF4'


def test_read_json_from_path_plain(specs_path):
    data = read_json_from_path(join(specs_path, 'omega_trig.json'))
    assert data['construction'] == 'ivp_oracle'


def test_complex_pair():
    assert complex_pair(1.5) == [1.5, 0.0]
    assert complex_pair(2 - 3j) == [2.0, -3.0]


def test_format_float():
    assert format_float(0.1) == '0.10000000000000001'
    assert format_float(1 / 3, digits=4) == '0.3333'
    assert format_float(float('nan')) == '"nan"'


def test_dumps_report_is_json():
    data = {'x': 0.5, 'z': 1 + 2j, 'flags': [True, None], 'n': np.int64(3), 'values': np.asarray([1.0, 2.0])}
    parsed = json.loads(dumps_report(data))
    assert parsed == {'x': 0.5, 'z': [1.0, 2.0], 'flags': [True, None], 'n': 3, 'values': [1.0, 2.0]}


def test_dumps_report_keeps_key_order():
    text = dumps_report({'b': 1, 'a': {}, 'c': []})
    assert text.index('"b"') < text.index('"a"') < text.index('"c"')
    assert text.endswith('\n')


def test_report_encoder():
    data = {'s': {2, 1}, 'nan': float('nan'), 'c': np.complex128(1 - 2j), 'f': np.float32(0.5), 'b': np.bool_(True)}
    parsed = json.loads(json.dumps(data, cls=ReportEncoder))
    assert parsed == {'s': [1, 2], 'nan': 'nan', 'c': [1.0, -2.0], 'f': 0.5, 'b': True}


def test_dumps_report_rounds_to_configured_digits(tmp_path):
    config = tmp_path / 'short.toml'
    config.write_text('[cli]\nfloat_digits = 4\n')
    set_config_path(str(config))
    parsed = json.loads(dumps_report({'x': 1 / 3, 'z': 2 / 3 + 1j, 'values': np.asarray([0.123456])}))
    assert parsed == {'x': 0.3333, 'z': [0.6667, 1.0], 'values': [0.1235]}


def test_write_text(tmp_path, capsys):
    out = tmp_path / 'report.txt'
    write_text('hello\n', str(out))
    assert out.read_text() == 'hello\n'
    write_text('to stdout\n')
    assert capsys.readouterr().out == 'to stdout\n'


def test_grid_table_splits_complex():
    table = grid_table({'t': [0.0, 1.0], 'value': [1 + 1j, 2 - 1j], 'real': np.asarray([1 + 0j, 2 + 0j])})
    assert list(table.columns) == ['t', 'value_re', 'value_im', 'real']
    assert table['value_im'].tolist() == [1.0, -1.0]


def test_table_to_csv():
    csv = table_to_csv(grid_table({'t': [0.0, 0.5], 'omega': [0.0, 0.25]}))
    assert csv == 't,omega\n0,0\n0.5,0.25\n'


@pytest.mark.parametrize(
    'grid,expected',
    [
        ('0:1:3', [0.0, 0.5, 1.0]),
        ('-2:2:5', [-2.0, -1.0, 0.0, 1.0, 2.0]),
        ('1:1:1', [1.0]),
    ],
)
def test_parse_grid(grid, expected):
    assert np.allclose(parse_grid(grid), expected)


def test_parse_grid_default_count():
    assert len(parse_grid('0:1')) == 101  # noqa: PLR2004
    assert parse_grid(None) is None


@pytest.mark.parametrize('grid', ['potato', '0:1:2:3', '1:0:5', '0:1:0', '0:1:x'])
def test_parse_grid_failures(grid):
    with pytest.raises(UsageError):
        parse_grid(grid)


@pytest.mark.parametrize('parallel', [True, False])
def test_ordered_map(parallel):
    assert ordered_map(lambda value: value * value, [3, 1, 2], parallel=parallel) == [9, 1, 4]


def test_ordered_map_propagates_errors():
    def fail(value):
        raise UsageError(str(value))

    with pytest.raises(UsageError):
        ordered_map(fail, range(THREE_EXPECTED))
