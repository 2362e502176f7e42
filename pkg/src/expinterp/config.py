"""
Provides access to config variables

The library has to work without a config file at all. When
EXPINTERP_CONFIG is unset the bundled example_config.toml is read instead, and every
call site in the package supplies its own default as a final fallback.
"""

from os import cpu_count, environ
from pathlib import Path
from typing import Any

import toml

from expinterp.static_values import get_logger

# We use these globals for lazy initialization, but pylint doesn't like that.
# pylint: disable=global-statement, invalid-name
CONFIG_TYPE = dict[str, Any]
_config: CONFIG_TYPE | None = None  # Cached config, initialized lazily.
ENV_VAR: str = 'EXPINTERP_CONFIG'
THREADS_VAR: str = 'EXPINTERP_THREADS'
DEFAULT_CONFIG: Path = Path(__file__).parent / 'example_config.toml'


class ConfigError(Exception):
    """
    Error retrieving keys from config.
    """


class Unsupplied:
    pass


def set_config_path(config_path: str | None):
    """
    point the lazily-loaded config at a specific file, dropping anything already cached

    Args:
        config_path (str | None): a TOML file; None reverts to the env var / bundled default
    """
    global _config
    _config = None
    if config_path is None:
        environ.pop(ENV_VAR, None)
    else:
        environ[ENV_VAR] = config_path


def _load_config() -> CONFIG_TYPE:
    """
    read the file named by EXPINTERP_CONFIG, or the bundled defaults
    a missing file only costs the overrides, so it is reported and skipped
    """
    config_path = environ.get(ENV_VAR) or str(DEFAULT_CONFIG)
    if not Path(config_path).exists():
        get_logger().warning(f'Config file {config_path} does not exist, falling back to built-in defaults')
        return {}
    with open(config_path, encoding='utf-8') as f:
        return toml.loads(f.read())


def config_retrieve(key: list[str] | str, default: Any | None = Unsupplied) -> Any:
    """
    Retrieve key from config, assuming nested key specified as a list of strings.

    >> config_retrieve(['kernelcore', 'cluster_rel_tol'])
    1e-07

    >> config_retrieve(['kernelcore', 'absent'], default='default')
    'default'

    Allow None as default value
    >> config_retrieve(['key1', 'key2', 'key3'], default=None) is None
    True
    """

    global _config
    if _config is None:  # Lazily initialize the config.
        _config = _load_config()

    if isinstance(key, str):
        key = [key]

    if not key:
        raise ValueError('Key cannot be empty')

    d = _config
    for idx, k in enumerate(key):
        if k not in d:
            if default is Unsupplied:
                message = f'Key "{k}" not found in {d}'
                if idx > 0:
                    key_bits = ' -> '.join(key[: idx + 1])
                    message += f' (path: {key_bits})'

                raise ConfigError(message)
            return default

        d = d[k]

    return d


def config_check(key: list[str], expected_type: type | tuple[type, ...]) -> list[str]:
    """
    take a path to a config entry, and one or more expected types
    return a list of Strings:
        - if the value is present in the config dict, but the wrong type, explain
        - if the keys are not present in the config, explain where the key was absent
        - if the key(s) lead to a value, and the type is correct, return an empty list
    Args:
        key (list[str]): the keys for each layer in the config dict, leading to a value to test
        expected_type (Type | tuple[Type]): Type(s) we accept for this config value
    Returns:
        a list of the faults in the config search & type check, can be empty
    """

    try:
        value = config_retrieve(key)
        if isinstance(value, expected_type):
            return []
        config_keys = ' -> '.join(key)
        actual_type = type(value)
        return [f'config path {config_keys} was {actual_type}, expected {expected_type}']

    except ConfigError as ce:
        return [str(ce)]


def thread_count() -> int:
    """
    worker threads for per-slot work; EXPINTERP_THREADS=0 (or 1) means serial, unset means one per CPU
    """
    value = environ.get(THREADS_VAR)
    if value is None:
        return cpu_count() or 1
    try:
        return max(int(value), 0)
    except ValueError as ve:
        raise ConfigError(f'{THREADS_VAR} should be an integer, got {value!r}') from ve
