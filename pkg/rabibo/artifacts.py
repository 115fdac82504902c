"""
Flat CSV and JSON artifacts.

CSV: header row, comma separated, LF line endings, floats with 17 significant
digits, empty cells for values a solver did not produce. JSON: one object with
`meta` (resolved config and package versions) and `data` (`columns`, `rows`
as objects, plus command-specific extras). JSON floats use Python's shortest
repr, which re-parses to the identical double. Non-finite values abort the
write in both formats. Neither format carries timestamps, so identical configs
give byte-identical files.
"""

import json
import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
import scipy

from . import __version__
from .constants import app_configuration
from .exceptions import ArtifactError
from .shared import write_text_atomic


class Artifact(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]
    extras: dict[str, Any] = Field(default_factory=dict)

    def column(self, name: str) -> list:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


def _plain(value):
    """numpy scalars to Python ones; non-finite floats rejected."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        raise ArtifactError(f"Refusing to write non-finite value {value!r}.")
    return value


def _plain_tree(value):
    if isinstance(value, dict):
        return {str(k): _plain_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain_tree(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain_tree(v) for v in value.tolist()]
    return _plain(value)


def format_cell(value) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{app_configuration['float_digits']}g")
    text = str(value)
    if any(c in text for c in ',"\n'):
        raise ArtifactError(f"CSV cell '{text}' contains a separator or quote.")
    return text


def to_csv(artifact: Artifact) -> str:
    for name in artifact.columns:
        format_cell(name)
    lines = [",".join(artifact.columns)]
    for row in artifact.rows:
        if len(row) != len(artifact.columns):
            raise ArtifactError(
                f"Row has {len(row)} cells for {len(artifact.columns)} columns."
            )
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def versions() -> dict[str, str]:
    return {
        "rabibo": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


def to_json(artifact: Artifact, meta: dict[str, Any]) -> str:
    data = {
        "columns": list(artifact.columns),
        "rows": [dict(zip(artifact.columns, row)) for row in artifact.rows],
        **artifact.extras,
    }
    document = {"meta": _plain_tree(meta), "data": _plain_tree(data)}
    try:
        return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
    except (TypeError, ValueError) as e:
        raise ArtifactError(f"Cannot serialize {artifact.command} artifact: {e}") from e


def write_artifact(artifact: Artifact, path: str, format: str, meta: dict[str, Any]):
    text = to_csv(artifact) if format == "csv" else to_json(artifact, meta)
    write_text_atomic(path, text)
