"""Deterministic text rendering for emitted datasets.

Numbers are written with 17 significant digits ('.'-separated, no locale),
which round-trips binary64 exactly, so identical configurations always
produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence


def fmt(value: float | int | str | None) -> str:
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def render_metadata(meta: dict) -> str:
    return json.dumps(meta, sort_keys=True, indent=2) + "\n"
