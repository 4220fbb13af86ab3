"""Capacity bounds and worker count, overridable from the environment.

Values are read at call time so tests and the CLI can adjust them with
``monkeypatch.setenv`` or a shell export.
"""

import os

from .errors import InputError

_DEFAULTS = {
    "LAFUZZY_MAX_ISO_ORDER": 5,
    "LAFUZZY_MAX_RAW_ORDER": 5,
    "LAFUZZY_MAX_CRISP_ORDER": 12,
    "LAFUZZY_MAX_CANON_ORDER": 8,
    "LAFUZZY_MAX_FUZZY": 10**6,
    "LAFUZZY_MAX_MAPS": 10**6,
    "LAFUZZY_MAX_LEVEL_CELLS": 1 << 26,
    "LAFUZZY_WORKERS": 1,
}


def limit(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return _DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"{name} must be positive, got {value}")
    return value


def workers() -> int:
    return limit("LAFUZZY_WORKERS")
