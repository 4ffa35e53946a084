"""Minimal deterministic SVG emitter for the CLI plots.

Hand-rolled on purpose: byte-identical output for identical input, no
rendering dependency.  Floats are formatted with repr (shortest
round-trip), coordinates rounded to a fixed grid.
"""

from __future__ import annotations

WIDTH = 720
HEIGHT = 480
MARGIN = 56

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


class SvgCanvas:
    def __init__(self, title: str):
        self.parts: list[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>',
        ]

    def polyline(self, points, color: str, width: float = 1.5, dashed: bool = False):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="{width}"'
            f'{dash} points="{coords}"/>'
        )

    def circles(self, points, color: str, r: float = 2.5):
        for x, y in points:
            self.parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{color}"/>'
            )

    def text(self, x: float, y: float, s: str, color: str = "black", size: int = 12):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" fill="{color}">{s}</text>'
        )

    def line(self, x1, y1, x2, y2, color="black", width=1.0):
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{color}" stroke-width="{width}"/>'
        )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _scaler(lo: float, hi: float, out_lo: float, out_hi: float):
    span = hi - lo if hi > lo else 1.0

    def scale(v: float) -> float:
        return out_lo + (v - lo) / span * (out_hi - out_lo)

    return scale


def series_plot(title: str, series: list[tuple[str, list[tuple[float, float]], bool]]) -> str:
    """Overlayed xy-series: (label, points, dashed) triples."""
    xs = [p[0] for _, pts, _ in series for p in pts]
    ys = [p[1] for _, pts, _ in series for p in pts]
    sx = _scaler(min(xs), max(xs), MARGIN, WIDTH - MARGIN)
    sy = _scaler(min(ys + [0.0]), max(ys), HEIGHT - MARGIN, MARGIN)
    canvas = SvgCanvas(title)
    canvas.line(MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN)
    canvas.line(MARGIN, HEIGHT - MARGIN, MARGIN, MARGIN)
    for idx, (label, pts, dashed) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        mapped = [(sx(x), sy(y)) for x, y in pts]
        canvas.polyline(mapped, color, dashed=dashed)
        if not dashed:
            canvas.circles(mapped, color)
        canvas.text(WIDTH - MARGIN + 4, MARGIN + 16 * idx, label, color)
    return canvas.render()


def stacked_snapshots(title: str, rows: list[tuple[float, list[float]]]) -> str:
    """Fig-style stack: one displacement profile per snapshot, offset rows."""
    n_rows = len(rows)
    amp = max(max(abs(v) for v in values) for _, values in rows) or 1.0
    row_h = (HEIGHT - 2 * MARGIN) / max(n_rows, 1)
    canvas = SvgCanvas(title)
    n_sites = len(rows[0][1])
    sx = _scaler(1, max(n_sites, 2), MARGIN, WIDTH - MARGIN)
    for idx, (t, values) in enumerate(rows):
        base = MARGIN + row_h * (idx + 0.5)
        color = _COLORS[idx % len(_COLORS)]
        pts = [
            (sx(i + 1), base - v / amp * 0.45 * row_h) for i, v in enumerate(values)
        ]
        canvas.line(MARGIN, base, WIDTH - MARGIN, base, color="#dddddd")
        canvas.polyline(pts, color, width=1.2)
        canvas.text(4, base + 4, f"t={_fmt(t)}", size=11)
    return canvas.render()
