"""
test that model liftover works for problem specifications
test that unknown versions are refused
"""

import json
from os.path import join

import pytest

from expinterp.errors import UsageError
from expinterp.models import CURRENT_VERSION, ProblemSpec, lift_up_model_version
from expinterp.utils import read_json_from_path


def test_spec_from_none(test_input_models_path):
    """
    test that the lift over from None to 1.0.0 works
    """
    with open(join(test_input_models_path, 'problem_spec_v_none.json'), encoding='utf-8') as handle:
        data = json.load(handle)
    assert data.get('version') is None

    lifted = lift_up_model_version(data, model=ProblemSpec)
    assert lifted['version'] == CURRENT_VERSION

    parsed = ProblemSpec.model_validate(lifted)
    assert parsed.version == CURRENT_VERSION
    assert parsed.operator.coefficient_values() == [2, -3, 1]
    assert parsed.system.multiplicity_values() == [1, 1]
    assert parsed.function.parameters == {'sigma': 2.0}


def test_spec_read_from_path(test_input_models_path):
    parsed = read_json_from_path(join(test_input_models_path, 'problem_spec_v_none.json'), return_model=ProblemSpec)
    assert parsed.version == CURRENT_VERSION
    assert parsed.eval_points == [0.1, 0.9]


def test_spec_unknown_version(test_input_models_path):
    with pytest.raises(UsageError, match='potato'):
        read_json_from_path(join(test_input_models_path, 'problem_spec_version_potato.json'), return_model=ProblemSpec)
