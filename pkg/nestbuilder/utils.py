import os
from typing import Optional

__all__ = [
    'get_env_int',
    'get_env_switch',
    'parse_switch',
]

_SWITCH_VALUES = {
    'on': True,
    'true': True,
    'yes': True,
    '1': True,
    'off': False,
    'false': False,
    'no': False,
    '0': False,
}


def parse_switch(value: str) -> bool:
    ''' Parse an on/off style flag value

    :raises ValueError: when value is not a recognized switch word
    '''
    try:
        return _SWITCH_VALUES[value.strip().lower()]
    except KeyError:
        raise ValueError('Not a switch value: %r' % value)


def get_env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError('Environment variable %s is not an integer: %r' %
                         (name, value))


def get_env_switch(name: str, default: bool) -> bool:
    value: Optional[str] = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    return parse_switch(value)
