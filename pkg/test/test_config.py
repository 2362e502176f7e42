"""
tests for the config layer and its check from the front-end
"""

from os.path import join

import pytest

from expinterp.config import ConfigError, config_check, config_retrieve, set_config_path, thread_count
from expinterp.ExpInterp import check_config

MAX_DEPTH = 40
SHALLOW_DEPTH = 1


def test_config_retrieve(test_input_path):
    set_config_path(join(test_input_path, 'example_config.toml'))
    assert config_retrieve(['remainder', 'max_depth']) == MAX_DEPTH
    assert config_retrieve('remainder')['quadrature_points'] == 15  # noqa: PLR2004


def test_config_retrieve_default():
    assert config_retrieve(['remainder', 'absent'], default='fallback') == 'fallback'
    assert config_retrieve(['absent', 'absent'], default=None) is None


def test_config_retrieve_missing():
    with pytest.raises(ConfigError):
        config_retrieve(['remainder', 'absent'])
    with pytest.raises(ValueError):
        config_retrieve([])


def test_set_config_path(test_input_path):
    set_config_path(join(test_input_path, 'shallow_quadrature.toml'))
    assert config_retrieve(['remainder', 'max_depth']) == SHALLOW_DEPTH


def test_missing_file_falls_back(tmp_path):
    set_config_path(str(tmp_path / 'nowhere.toml'))
    assert config_retrieve(['remainder', 'max_depth'], default=7) == 7  # noqa: PLR2004


def test_bundled_defaults():
    """
    with no config named, the package's own example_config.toml is read
    """
    set_config_path(None)
    assert config_retrieve(['kernelcore', 'max_degree']) == 32  # noqa: PLR2004


def test_config_check():
    assert config_check(['remainder', 'max_depth'], int) == []
    assert config_check(['remainder', 'max_depth'], str)
    assert config_check(['remainder', 'absent'], int)


def test_check_config_clean():
    assert check_config() == []


def test_check_config_reports_faults(tmp_path):
    bad = tmp_path / 'bad.toml'
    bad.write_text('[remainder]\nmax_depth = "deep"\n')
    set_config_path(str(bad))
    faults = check_config()
    assert any('max_depth' in fault for fault in faults)


def test_thread_count(monkeypatch):
    monkeypatch.setenv('EXPINTERP_THREADS', '3')
    assert thread_count() == 3  # noqa: PLR2004
    monkeypatch.setenv('EXPINTERP_THREADS', '-2')
    assert thread_count() == 0
    monkeypatch.setenv('EXPINTERP_THREADS', 'many')
    with pytest.raises(ConfigError):
        thread_count()
    monkeypatch.delenv('EXPINTERP_THREADS')
    assert thread_count() >= 1
