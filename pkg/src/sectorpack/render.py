"""Text and SVG renderings of a labeled sector lattice.

Text mode prints the grid rows from y_max down to 0; every in-sector
cell shows the polynomial's value there and every other cell shows a
dot.  SVG mode draws labeled dots, the boundary ray m*y = n*x, and (for
m >= 2) the staircase guide lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polynomials import QuadPoly
from .sectors import LatticePoint, Sector

MAX_TEXT_X = 200


@dataclass(frozen=True)
class RenderSpec:
    sector: Sector
    poly: QuadPoly
    max_x: int
    format: str = "text"
    cell_labels: bool = True
    color: str = "#000000"


def render(spec: RenderSpec) -> str:
    if spec.max_x < 0:
        raise ValueError("max_x must be nonnegative")
    if spec.format == "text":
        if spec.max_x > MAX_TEXT_X:
            raise ValueError(f"text mode is capped at max_x = {MAX_TEXT_X}")
        return _render_text(spec)
    if spec.format == "svg":
        return _render_svg(spec)
    raise ValueError(f"unknown format {spec.format!r}")


def _cells(spec: RenderSpec) -> tuple[int, list[list[str]]]:
    s, p = spec.sector, spec.poly
    y_max = spec.max_x * s.n // s.m
    rows = []
    for y in range(y_max, -1, -1):
        row = []
        for x in range(spec.max_x + 1):
            if s.contains(LatticePoint(x, y)):
                row.append(str(p.eval_int(LatticePoint(x, y))) if spec.cell_labels else "*")
            else:
                row.append("·")
        rows.append(row)
    return y_max, rows


def _render_text(spec: RenderSpec) -> str:
    _, rows = _cells(spec)
    width = max(len(cell) for row in rows for cell in row)
    return "\n".join(" ".join(cell.rjust(width) for cell in row) for row in rows) + "\n"


def _render_svg(spec: RenderSpec) -> str:
    s, p = spec.sector, spec.poly
    unit = 40
    pad = 30
    y_max = spec.max_x * s.n // s.m
    width = spec.max_x * unit + 2 * pad
    height = y_max * unit + 2 * pad

    def sx(x: float) -> float:
        return pad + x * unit

    def sy(y: float) -> float:
        return height - pad - y * unit

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    # Boundary ray m*y = n*x, clipped at the grid edge.
    bx = min(spec.max_x, y_max * s.m / s.n) if s.n else spec.max_x
    if y_max * s.m <= spec.max_x * s.n:
        bx, by = y_max * s.m / s.n, y_max
    else:
        bx, by = spec.max_x, spec.max_x * s.n / s.m
    parts.append(
        f'<line x1="{sx(0):.1f}" y1="{sy(0):.1f}" x2="{sx(bx):.1f}" y2="{sy(by):.1f}" '
        f'stroke="{spec.color}" stroke-width="1.5"/>'
    )
    # Staircase guide lines (m-1)*y = n*x - c*l across the viewport.
    if s.m >= 2:
        c_hi = (s.n * spec.max_x) // s.l
        for c in range(c_hi + 1):
            # endpoints where the staircase line meets y = 0 and y = y_max
            x_at0 = c * s.l / s.n
            x_atmax = (y_max * (s.m - 1) + c * s.l) / s.n
            if x_at0 > spec.max_x:
                break
            parts.append(
                f'<line x1="{sx(x_at0):.1f}" y1="{sy(0):.1f}" '
                f'x2="{sx(min(x_atmax, spec.max_x)):.1f}" '
                f'y2="{sy(min(y_max, (s.n * spec.max_x - c * s.l) / (s.m - 1))):.1f}" '
                f'stroke="#bbbbbb" stroke-width="0.5"/>'
            )
    for x in range(spec.max_x + 1):
        for y in range(y_max + 1):
            pt = LatticePoint(x, y)
            if not s.contains(pt):
                continue
            parts.append(
                f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="3" fill="{spec.color}"/>'
            )
            if spec.cell_labels:
                parts.append(
                    f'<text x="{sx(x) + 5:.1f}" y="{sy(y) - 5:.1f}" '
                    f'font-size="11" fill="{spec.color}">{p.eval_int(pt)}</text>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
