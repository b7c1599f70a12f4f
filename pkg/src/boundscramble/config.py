"""TOML run configuration.

A config file has shared ``[state]``, ``[scramble]`` and ``[run]`` tables plus
one table per sweep command (``[sweep-time]``, ``[sweep-param]``)::

    [state]
    family = "jurkowski"
    params = { eps1 = 1.0, eps2 = 4.0, eps3 = 4.0 }

    [scramble]
    d = 0.6
    placement = "both"
    mode = "conj"

    [sweep-time]
    tmax = 10.0
    samples = 512
    out = "jurkowski_144.csv"

Command-line flags override file values.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import InvalidParameterError

SHARED_TABLES = {
    "state": {"family", "params", "preset"},
    "scramble": {"d", "placement", "mode", "hermitize_raw"},
    "run": {"workers", "diagnostics"},
}
SWEEP_TABLES = {
    "sweep-time": {"tmax", "samples", "out", "svg", "title"},
    "sweep-param": {"preset", "start", "stop", "step", "values", "at_t", "out", "svg", "title"},
}


def golden_dir() -> Path:
    return Path(str(resources.files("boundscramble") / "golden"))


def golden_configs() -> list[Path]:
    return sorted(golden_dir().glob("*.toml"))


def read_toml(path) -> dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise InvalidParameterError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InvalidParameterError(f"{path}: invalid TOML: {exc}") from exc


def load_config(path, section: str | None = None) -> dict[str, Any]:
    """Flatten the shared tables and ``section`` into one settings dict.

    Unknown tables or keys are rejected so typos fail loudly.
    """
    doc = read_toml(path)
    allowed = dict(SHARED_TABLES)
    allowed.update(SWEEP_TABLES)
    flat: dict[str, Any] = {}
    # shared tables first so the sweep table wins on shared keys
    for table, body in sorted(doc.items(), key=lambda kv: kv[0] == section):
        if table not in allowed:
            raise InvalidParameterError(f"{path}: unknown table [{table}]")
        if not isinstance(body, dict):
            raise InvalidParameterError(f"{path}: [{table}] must be a table")
        extra = set(body) - allowed[table]
        if extra:
            raise InvalidParameterError(f"{path}: unknown keys in [{table}]: {sorted(extra)}")
        if table in SHARED_TABLES or table == section:
            flat.update(body)
    if "params" in flat and not isinstance(flat["params"], dict):
        raise InvalidParameterError(f"{path}: [state] params must be a table")
    return flat
