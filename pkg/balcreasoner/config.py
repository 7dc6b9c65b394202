"""Reasoner settings and their optional YAML file"""

import dataclasses
import logging

import yaml

from balcreasoner.constants import (DEFAULT_MAX_ABOXES, DEFAULT_MAX_CLASSICAL_STEPS, DEFAULT_MAX_RULE_APPLICATIONS,
                                    DISPLAY_PRECISION, TOLERANCE)
from balcreasoner.exceptions import InvalidQueryArgument


@dataclasses.dataclass(frozen=True)
class ReasonerSettings(object):
    """Budgets and switches shared by the tableaux, the world oracle and the CLI output."""

    max_rule_applications: int = DEFAULT_MAX_RULE_APPLICATIONS
    max_aboxes: int = DEFAULT_MAX_ABOXES
    max_classical_steps: int = DEFAULT_MAX_CLASSICAL_STEPS
    prune_closed: bool = True
    parallel: bool = False
    tolerance: float = TOLERANCE
    precision: int = DISPLAY_PRECISION

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


_FIELD_TYPES = {field.name: field.type for field in dataclasses.fields(ReasonerSettings)}


def _check(name, value):
    expected = _FIELD_TYPES[name]
    if expected in (int, 'int'):
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            raise InvalidQueryArgument('Setting "{}" must be a positive integer, got {!r}'.format(name, value))
    elif expected in (bool, 'bool'):
        if not isinstance(value, bool):
            raise InvalidQueryArgument('Setting "{}" must be true or false, got {!r}'.format(name, value))
    elif expected in (float, 'float'):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0 <= value < 1:
            raise InvalidQueryArgument('Setting "{}" must be a number in [0, 1), got {!r}'.format(name, value))
        value = float(value)
    return value


def load_settings(path=None, **overrides):
    """
    Build the settings from defaults, an optional YAML file and explicit overrides (in that order).

    :param str path: A YAML file with a mapping of setting names to values, e.g.:

    >>> max_aboxes: 512
    >>> prune_closed: false

    :param overrides: Settings given on the commandline; ``None`` values are ignored
    :raises InvalidQueryArgument: On unknown keys or values of the wrong type
    :rtype: ReasonerSettings
    """
    values = {}
    if path:
        with open(path) as handle:
            data = yaml.load(handle, Loader=yaml.FullLoader) or {}
        if not isinstance(data, dict):
            raise InvalidQueryArgument('Settings file "{}" must contain a mapping'.format(path))
        values.update(data)
        logging.info('Loaded settings from %s', path)
    values.update({name: value for name, value in overrides.items() if value is not None})
    unknown = sorted(set(values) - set(_FIELD_TYPES))
    if unknown:
        raise InvalidQueryArgument('Unknown setting(s): {}'.format(', '.join(str(key) for key in unknown)))
    return ReasonerSettings(**{name: _check(name, value) for name, value in values.items()})
