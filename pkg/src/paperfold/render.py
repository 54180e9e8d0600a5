"""SVG and ASCII drawings of crease fields.

ASCII layout, two characters per cell and two text lines per cell row::

    +-+-+      '+' lattice point
    * o |      '*' mountain, 'o' valley
    +*+o+      '-' / '|' uncreased edge

Horizontal lines alternate ``+`` with the mark of the edge to its right;
cell rows alternate the mark of the left edge with a blank, ending with the
right border.
"""

from __future__ import annotations

import os
import tempfile

from .creases import CreaseField

_H_CHARS = {1: "*", -1: "o", 0: "-"}
_V_CHARS = {1: "*", -1: "o", 0: "|"}

CELL_PX = 40
MARKER_RADIUS = 0.15


def render_ascii(f: CreaseField) -> str:
    lines = []
    for l in range(f.rows + 1):
        lines.append("".join("+" + _H_CHARS[int(x)] for x in f.horizontal[l]) + "+")
        if l < f.rows:
            row = f.vertical[l]
            lines.append(" ".join(_V_CHARS[int(x)] for x in row))
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:g}"


def render_svg(f: CreaseField) -> str:
    """Filled circles mark mountain folds, open circles valley folds.

    Interior lattice lines are solid; border edges are solid only where
    creased and dotted grey otherwise.
    """
    rows, cols = f.rows, f.cols
    w, h = cols + 1, rows + 1
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w * CELL_PX}" height="{h * CELL_PX}" viewBox="-0.5 -0.5 {w} {h}">',
        '<g fill="none" stroke-linecap="square">',
    ]

    def seg(x1, y1, x2, y2, border_creased=None):
        if border_creased is False:
            style = 'stroke="gray" stroke-width="0.02" stroke-dasharray="0.05 0.1"'
        else:
            style = 'stroke="black" stroke-width="0.04"'
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" {style}/>'
        )

    for l in range(1, rows):
        seg(0, l, cols, l)
    for l in range(1, cols):
        seg(l, 0, l, rows)
    for l in (0, rows):
        for c in range(cols):
            seg(c, l, c + 1, l, bool(f.horizontal[l, c]))
    for l in (0, cols):
        for r in range(rows):
            seg(l, r, l, r + 1, bool(f.vertical[r, l]))
    out.append("</g>")

    out.append('<g stroke="black" stroke-width="0.03">')
    for r in range(rows):
        for l in range(cols + 1):
            _marker(out, l, r + 0.5, int(f.vertical[r, l]))
    for l in range(rows + 1):
        for c in range(cols):
            _marker(out, c + 0.5, l, int(f.horizontal[l, c]))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _marker(out, x, y, kind):
    if not kind:
        return
    fill = "black" if kind > 0 else "white"
    out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{MARKER_RADIUS}" fill="{fill}"/>')


def render(f: CreaseField, format: str = "svg") -> bytes:
    if format == "svg":
        return render_svg(f).encode()
    if format == "ascii":
        return render_ascii(f).encode()
    raise ValueError(f"unknown render format {format!r}")


def write_atomic(path: str | os.PathLike, data: bytes | str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    if isinstance(data, str):
        data = data.encode()
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
