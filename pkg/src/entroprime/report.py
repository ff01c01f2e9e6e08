"""Deterministic CSV / JSON / SVG emission for experiment results.

Writers never embed timestamps or environment details, so rerunning a
command with the same configuration reproduces its artifacts byte for
byte.  CSV uses a header row, dot decimals and LF line endings.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .density import InteractionGrid, NibbleGrid, RankedTable

COLOURS = {
    "white": "#FFFFFF",
    "yellow": "#FFD700",
    "orange": "#FF8C00",
    "red": "#CC0000",
    "purple": "#800080",
    "blue": "#1F4E9C",
}


def _cell_text(value: Any) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell_text(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def jsonable(value: Any) -> Any:
    """Recursively convert experiment objects into JSON-encodable data."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, Fraction):
        return {"numerator": value.numerator, "denominator": value.denominator}
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def write_json(path: Path, payload: Any, config: dict[str, Any] | None = None) -> None:
    body: dict[str, Any] = {}
    if config is not None:
        body["config"] = jsonable(config)
    body["results"] = jsonable(payload)
    path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def ranked_rows(ranked: RankedTable) -> list[tuple[Any, ...]]:
    """The per-rank series: x, score, is_prime, cumulative primes."""
    return [
        (r.x, ranked.scores[i], r.is_prime, int(ranked.cumulative_primes[i]))
        for i, r in enumerate(ranked.entries)
    ]

RANKED_HEADER = ("x", "score", "is_prime", "cumulative")


def write_ranked_csv(path: Path, ranked: RankedTable) -> None:
    write_csv(path, RANKED_HEADER, ranked_rows(ranked))


# -------------------------------------------------------------------- SVG

def _svg_document(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def figure_grid_svg(grid: NibbleGrid, cell_px: int = 24) -> str:
    """Colour-banded value grid; primes override their band with purple."""
    body = []
    for r, row in enumerate(grid.cells):
        for c, cell in enumerate(row):
            fill = COLOURS["purple"] if cell.is_prime else COLOURS[cell.colour]
            body.append(
                f'<rect x="{c * cell_px}" y="{r * cell_px}" width="{cell_px}" '
                f'height="{cell_px}" fill="{fill}" stroke="#808080" stroke-width="1">'
                f"<title>{cell.x}</title></rect>"
            )
    size = len(grid.cells) * cell_px
    return _svg_document(size, size, body)


def interaction_svg(grid: InteractionGrid, cell_px: int = 28) -> str:
    """Signed-count heatmap: primes positive (blue), sixes negative (red),
    shared cells yellow."""
    n = grid.segments
    body = []
    collision_keys = {(c.bi_segment, c.tri_segment) for c in grid.collisions}
    for b in range(n):
        for t in range(n):
            primes = int(grid.prime_counts[b][t])
            sixes = int(grid.six_counts[b][t])
            signed = primes - sixes
            if (b, t) in collision_keys:
                fill = COLOURS["yellow"]
            elif signed > 0:
                fill = COLOURS["blue"]
            elif signed < 0:
                fill = COLOURS["red"]
            else:
                fill = COLOURS["white"]
            x_px = b * cell_px
            y_px = (n - 1 - t) * cell_px  # trinary segment grows upward
            body.append(
                f'<rect x="{x_px}" y="{y_px}" width="{cell_px}" height="{cell_px}" '
                f'fill="{fill}" stroke="#808080" stroke-width="1"/>'
            )
            if signed or (b, t) in collision_keys:
                body.append(
                    f'<text x="{x_px + cell_px // 2}" y="{y_px + cell_px // 2 + 4}" '
                    f'font-size="{cell_px // 2}" text-anchor="middle">{signed}</text>'
                )
    size = n * cell_px
    return _svg_document(size, size, body)
