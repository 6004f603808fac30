"""Flat ``key=value`` scenario files.

Example::

    # six-level cascade
    name=decay5
    model=lindblad-decay
    levels=5
    dim=6
    gamma=1
    t_final=3
    dt=0.001
"""

from __future__ import annotations

from pathlib import Path

from .dynamics import DECAY_MODELS, MODELS, Scenario
from .errors import FileError, ParseError

INT_KEYS = ("levels", "dim", "initial_level", "copies", "sample_every")
FLOAT_KEYS = ("gamma", "omega_initial", "omega_final", "ramp_time", "t_final", "dt")
STR_KEYS = ("name", "model")
KEYS = ("name", "model", "levels", "dim", "gamma", "omega_initial", "omega_final",
        "ramp_time", "t_final", "dt", "initial_level", "copies", "sample_every")
REQUIRED = ("name", "model", "levels", "t_final", "dt")


def _convert(key: str, raw: str, lineno: int):
    if key in STR_KEYS:
        if not raw:
            raise ParseError(f"line {lineno}: empty value for {key!r}")
        return raw
    try:
        if key in INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        kind = "integer" if key in INT_KEYS else "number"
        raise ParseError(f"line {lineno}: {key}={raw!r} is not a valid {kind}") from None


def parse_scenario(text: str) -> Scenario:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _convert(key, raw, lineno)
        if key == "model" and values[key] not in MODELS:
            raise ParseError(f"line {lineno}: unknown model {raw!r} (expected one of {', '.join(MODELS)})")

    missing = [k for k in REQUIRED if k not in values]
    model = values.get("model")
    if model in DECAY_MODELS:
        missing += [k for k in ("gamma",) if k not in values]
        values.setdefault("dim", values.get("levels", 0) + 1)
    elif model is not None:
        missing += [k for k in ("dim", "omega_initial", "omega_final") if k not in values]
        if model == "unitary-ramp" and "ramp_time" not in values:
            missing.append("ramp_time")
    if missing:
        raise ParseError(f"missing required key(s): {', '.join(missing)}")
    return Scenario(**values)


def render_scenario(scenario: Scenario) -> str:
    """Inverse of :func:`parse_scenario` (the ladder kind has no file key)."""
    lines = []
    for key in KEYS:
        value = getattr(scenario, key)
        if value is None:
            continue
        lines.append(f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}")
    return "\n".join(lines) + "\n"


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileError(f"cannot read scenario file {path}: {exc.strerror or exc}") from exc
    try:
        return parse_scenario(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
