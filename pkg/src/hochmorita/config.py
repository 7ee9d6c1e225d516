"""Runtime knobs read from the environment.

HOCHMORITA_BAR_CAP         largest (dim A)^(n+1) * dim M allowed for bar cochains
HOCHMORITA_RESOLUTION_CAP  largest total dimension of a truncated free resolution
HOCHMORITA_DEBUG           when set to 1, enables redundant self-checks
"""
import os

DEFAULT_BAR_CAP = 200_000
DEFAULT_RESOLUTION_CAP = 20_000

BAR_CAP_ENV = "HOCHMORITA_BAR_CAP"
RESOLUTION_CAP_ENV = "HOCHMORITA_RESOLUTION_CAP"
DEBUG_ENV = "HOCHMORITA_DEBUG"


def _int_env(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def bar_cap() -> int:
    return _int_env(BAR_CAP_ENV, DEFAULT_BAR_CAP)


def resolution_cap() -> int:
    return _int_env(RESOLUTION_CAP_ENV, DEFAULT_RESOLUTION_CAP)


def debug() -> bool:
    return os.environ.get(DEBUG_ENV, "") not in ("", "0")
