import os

import pytest

from nestbuilder.utils import get_env_int, get_env_switch, parse_switch


@pytest.mark.parametrize(
    'value, expected', [
        ('on', True),
        ('YES', True),
        (' 1 ', True),
        ('true', True),
        ('off', False),
        ('No', False),
        ('0', False),
    ])
def test_parse_switch(value, expected):
    assert parse_switch(value) is expected


def test_parse_switch_error():
    with pytest.raises(ValueError):
        parse_switch('maybe')


def test_get_env_int(mocker):
    mocker.patch.dict(os.environ, {}, clear=True)
    assert get_env_int('NESTBUILDER_SENSING_COST', 0) == 0

    mocker.patch.dict(os.environ, {'NESTBUILDER_SENSING_COST': '3'})
    assert get_env_int('NESTBUILDER_SENSING_COST', 0) == 3

    mocker.patch.dict(os.environ, {'NESTBUILDER_SENSING_COST': ' '})
    assert get_env_int('NESTBUILDER_SENSING_COST', 5) == 5

    mocker.patch.dict(os.environ, {'NESTBUILDER_SENSING_COST': 'three'})
    with pytest.raises(ValueError):
        get_env_int('NESTBUILDER_SENSING_COST', 0)


def test_get_env_switch(mocker):
    mocker.patch.dict(os.environ, {}, clear=True)
    assert get_env_switch('NESTBUILDER_MONITORS', True)

    mocker.patch.dict(os.environ, {'NESTBUILDER_MONITORS': 'off'})
    assert not get_env_switch('NESTBUILDER_MONITORS', True)
