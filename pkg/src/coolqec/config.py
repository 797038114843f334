"""Key=value run configuration with per-command sections and CLI overrides.

File format, one pair per line::

    command=simulate
    gamma=0.05          # comments run to end of line
    [sweep-scaling]     # section keys apply to that command only
    s_grid=0.5:0.25:5.0

Grids accept either a comma list (``25,50,100``) or an inclusive
``start:step:stop`` range.  Command-line overrides (``key=value`` strings)
win over file values; unset keys fall back to documented defaults.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

COMMANDS = ("simulate", "sweep-scaling", "sweep-surface", "zeno", "verify")


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_grid(text: str) -> tuple[float, ...]:
    """Comma list or inclusive start:step:stop range."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"range step must be positive, got {step}")
        count = int(round((stop - start) / step)) + 1
        if count < 1 or abs(start + (count - 1) * step - stop) > 1e-9 * max(1.0, abs(stop)):
            raise ValueError(f"range {text!r} does not land on its endpoint")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(float(p) for p in text.split(","))


_PARSERS = {
    "real": float,
    "int": int,
    "bool": _parse_bool,
    "grid": _parse_grid,
    "string": str,
}


@dataclass(frozen=True)
class _Field:
    kind: str  # key of _PARSERS
    default: Any


# Per-command key schemas.  A default of None means "derived later" (lam)
# or genuinely optional (step_hint).
_COMMON_STATE = {
    "alpha": _Field("real", 1.0),
    "beta": _Field("real", 0.0),
}
SCHEMAS: dict[str, dict[str, _Field]] = {
    "simulate": {
        "gamma": _Field("real", 0.05),
        "kappa": _Field("real", 100.0),
        "lam": _Field("real", None),
        "T": _Field("real", 10.0),
        "step_hint": _Field("real", None),
        "errors_on_ancillas": _Field("bool", False),
        "output": _Field("string", "curve.csv"),
        **_COMMON_STATE,
    },
    "sweep-scaling": {
        "gamma": _Field("real", 0.05),
        "kappa_list": _Field("grid", (25.0, 50.0, 100.0, 200.0)),
        "s_grid": _Field("grid", tuple(np.linspace(0.5, 5.0, 19))),
        "T": _Field("real", 10.0),
        "output": _Field("string", "scaling.csv"),
        **_COMMON_STATE,
    },
    "sweep-surface": {
        "gamma_grid": _Field("grid", tuple(np.linspace(0.05, 0.8, 16))),
        "kappa_grid": _Field("grid", (25.0, 50.0, 100.0, 200.0, 400.0)),
        "T": _Field("real", 10.0),
        "output": _Field("string", "surface.csv"),
        **_COMMON_STATE,
    },
    "zeno": {
        "coupling": _Field("real", 0.1),
        "T": _Field("real", 1.0),
        "cycles_list": _Field("grid", (8.0, 16.0, 32.0, 64.0)),
        "n_env": _Field("int", 3),
        "env_state_index": _Field("int", 0),
        "output": _Field("string", "zeno.csv"),
        **_COMMON_STATE,
    },
    "verify": {},
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict[str, Any]


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _collect_pairs(text: str) -> tuple[str | None, dict[str, str], dict[str, dict[str, str]]]:
    """Split config text into (command, global pairs, per-section pairs)."""
    command = None
    top: dict[str, str] = {}
    sections: dict[str, dict[str, str]] = {}
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in COMMANDS:
                raise ConfigError(
                    f"line {lineno}: unknown section [{name}]; commands are "
                    + ", ".join(COMMANDS)
                )
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "command":
            if current is not None:
                raise ConfigError(f"line {lineno}: command= must be top-level")
            command = value
        elif current is not None:
            current[key] = value
        else:
            top[key] = value
    return command, top, sections


def parse_config(
    text: str = "",
    overrides: tuple[str, ...] = (),
    command: str | None = None,
) -> RunConfig:
    """Build a validated RunConfig from file text plus override pairs.

    Precedence (low to high): schema defaults, top-level file keys, file
    keys in the matching [command] section, overrides.  An explicit
    ``command`` argument wins over a ``command=`` line in the file.
    """
    file_command, top, sections = _collect_pairs(text)
    chosen = command or file_command
    if not chosen:
        raise ConfigError("no command given; valid commands: " + ", ".join(COMMANDS))
    if chosen not in COMMANDS:
        raise ConfigError(
            f"unknown command {chosen!r}; valid commands: " + ", ".join(COMMANDS)
        )
    schema = SCHEMAS[chosen]

    merged: dict[str, str] = {}
    merged.update(top)
    merged.update(sections.get(chosen, {}))
    for pair in overrides:
        if "=" not in pair:
            raise ConfigError(f"override must be key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        merged[key.strip()] = value.strip()

    params: dict[str, Any] = {k: f.default for k, f in schema.items()}
    for key, raw in merged.items():
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} for command {chosen!r}")
        field = schema[key]
        try:
            params[key] = _PARSERS[field.kind](raw)
        except ValueError as exc:
            raise ConfigError(
                f"key {key!r} expects a {field.kind} value, got {raw!r} ({exc})"
            ) from None

    _validate(chosen, params)
    return RunConfig(command=chosen, params=params)


def _validate(command: str, params: dict[str, Any]) -> None:
    for key in ("gamma", "kappa", "lam", "coupling"):
        if params.get(key) is not None and params[key] < 0:
            raise ConfigError(f"{key} must be >= 0, got {params[key]}")
    for key in ("kappa_list", "s_grid", "gamma_grid", "kappa_grid"):
        if key in params:
            values = params[key]
            if len(values) == 0:
                raise ConfigError(f"{key} must be nonempty")
            if any(v < 0 for v in values):
                raise ConfigError(f"{key} entries must be >= 0")
    if "T" in params and params["T"] <= 0:
        raise ConfigError(f"T must be positive, got {params['T']}")
    if command == "simulate" and params["lam"] is None:
        # Cooling defaults to the swept optimum: 2.5 x strength.
        params["lam"] = 2.5 * params["kappa"]
    if command == "zeno":
        cycles = params["cycles_list"]
        if any(c != int(c) or c < 1 for c in cycles):
            raise ConfigError(f"cycles_list must hold positive integers, got {cycles}")
        params["cycles_list"] = tuple(int(c) for c in cycles)
    if "alpha" in params:
        # Loose gate here; dispatch renormalizes exactly, so hand-typed
        # amplitudes like 0.7071068 are accepted.
        norm_sq = abs(params["alpha"]) ** 2 + abs(params["beta"]) ** 2
        if abs(norm_sq - 1.0) > 1e-6:
            raise ConfigError(
                f"alpha,beta must satisfy |a|^2+|b|^2=1, got {norm_sq:.6g}"
            )
