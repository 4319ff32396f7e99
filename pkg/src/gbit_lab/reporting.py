"""Deterministic serialization: 17-significant-digit floats, canonical JSON, run manifests.

Every file the lab emits must be byte-stable under re-runs, so floats are
rendered with ``%.17g`` (exact double round-trip), JSON keys are sorted, and
line endings are always LF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["format_float", "canonical_json", "RunManifest"]


def format_float(x: float) -> str:
    """Render a float with up to 17 significant digits (lossless round-trip)."""
    return format(float(x), ".17g")


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, float, str, np.integer, np.floating))


def _emit_scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize value of type {type(value).__name__}")


def _emit(value: Any, indent: int, pretty: bool) -> str:
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if _is_scalar(value):
        return _emit_scalar(value)
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        keys = sorted(value.keys())
        items = [f'{_emit_scalar(str(k))}: {_emit(value[k], indent + 1, pretty)}' for k in keys]
        if pretty:
            return "{\n" + ",\n".join(inner + item for item in items) + "\n" + pad + "}"
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        items = [_emit(v, indent + 1, pretty) for v in value]
        if not items:
            return "[]"
        # Scalar-only lists (vectors, matrix rows) stay on one line.
        if pretty and any("\n" in item or len(item) > 60 for item in items):
            return "[\n" + ",\n".join(inner + item for item in items) + "\n" + pad + "]"
        return "[" + ", ".join(items) + "]"
    raise TypeError(f"cannot serialize value of type {type(value).__name__}")


def canonical_json(obj: Any, pretty: bool = True) -> str:
    """Serialize to JSON with sorted keys and %.17g floats.

    The output is a pure function of ``obj``, so identical inputs give
    byte-identical documents.
    """
    text = _emit(obj, 0, pretty)
    return text + "\n" if pretty else text


@dataclass(frozen=True)
class RunManifest:
    """Record of a CLI invocation sufficient to reproduce its outputs exactly."""

    command: str
    parameters: dict
    seed: int
    version: str
    outputs: tuple[str, ...] = field(default_factory=tuple)

    def as_obj(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(self.parameters),
            "seed": int(self.seed),
            "version": self.version,
            "outputs": list(self.outputs),
        }

    def csv_header(self) -> str:
        """Single-line comment form used at the top of CSV outputs."""
        return "# manifest: " + canonical_json(self.as_obj(), pretty=False)
