"""Serialisation helpers: RFC-4180 CSV, JSON with a meta block, minimal SVG."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from . import __version__


def fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def to_json(header: Sequence[str], rows: Iterable[Sequence], meta: dict) -> str:
    body = {
        "meta": {"version": __version__, **meta},
        "rows": [{h: _jsonable(v) for h, v in zip(header, r)} for r in rows],
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _jsonable(v):
    if isinstance(v, (int, float, str)) or v is None:
        if isinstance(v, float) and not math.isfinite(v):
            return repr(v)
        return v
    return str(v)


def to_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [" ".join(header)]
    lines += [" ".join(fmt(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def svg_plot(series: Sequence[tuple[str, Sequence[float], Sequence[float], str]],
             title: str = "", vlines: Sequence[float] = (), hlines: Sequence[float] = (),
             width: int = 640, height: int = 400) -> str:
    """Polylines (``style="line"``) or dots (``style="dots"``) with axes and a legend."""
    pts = [(x, y) for _, xs, ys, _ in series for x, y in zip(xs, ys) if math.isfinite(y)]
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    xmin = min(p[0] for p in pts + [(v, 0) for v in vlines])
    xmax = max(p[0] for p in pts + [(v, 0) for v in vlines])
    ymin = min([p[1] for p in pts] + list(hlines) + [0.0])
    ymax = max([p[1] for p in pts] + list(hlines))
    if xmax == xmin:
        xmax = xmin + 1.0
    if ymax == ymin:
        ymax = ymin + 1.0
    pad = 50

    def sx(x):
        return pad + (x - xmin) / (xmax - xmin) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - ymin) / (ymax - ymin) * (height - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{pad}" y1="{sy(0 if ymin <= 0 <= ymax else ymin):.2f}" x2="{width - pad}" '
        f'y2="{sy(0 if ymin <= 0 <= ymax else ymin):.2f}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{height - pad + 15}" font-size="10">{xmin:.3g}</text>',
        f'<text x="{width - pad}" y="{height - pad + 15}" font-size="10" text-anchor="end">{xmax:.3g}</text>',
        f'<text x="{pad - 5}" y="{pad}" font-size="10" text-anchor="end">{ymax:.3g}</text>',
        f'<text x="{pad - 5}" y="{height - pad}" font-size="10" text-anchor="end">{ymin:.3g}</text>',
    ]
    for v in vlines:
        out.append(f'<line x1="{sx(v):.2f}" y1="{pad}" x2="{sx(v):.2f}" y2="{height - pad}" '
                   f'stroke="gray" stroke-dasharray="4 3"/>')
    for h in hlines:
        out.append(f'<line x1="{pad}" y1="{sy(h):.2f}" x2="{width - pad}" y2="{sy(h):.2f}" '
                   f'stroke="gray" stroke-dasharray="2 2"/>')
    for i, (label, xs, ys, style) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        coords = [(sx(x), sy(y)) for x, y in zip(xs, ys) if math.isfinite(y)]
        if style == "dots":
            out += [f'<circle cx="{a:.2f}" cy="{b:.2f}" r="3" fill="{color}"/>' for a, b in coords]
        else:
            path = " ".join(f"{a:.2f},{b:.2f}" for a, b in coords)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{width - pad}" y="{pad + 14 * i}" font-size="11" '
                   f'text-anchor="end" fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
