"""Crease fields: mountain/valley marks on the unit edges of a square cell grid.

A field over an ``rows x cols`` cell grid stores two int8 arrays:

* ``vertical[r, l]`` for the vertical line ``l`` (``0..cols``, counted from the
  left border) inside cell row ``r`` (0-based from the top);
* ``horizontal[l, c]`` for the horizontal line ``l`` (``0..rows``, counted from
  the top border) inside cell column ``c``.

``+1`` is a mountain fold, ``-1`` a valley fold and ``0`` no crease. With that
encoding, flipping every fold is plain negation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import AlphabetMismatch
from .substitution import B4, Grid, _check_depth


class FoldType(IntEnum):
    MOUNTAIN = 1
    VALLEY = -1

    def flip(self) -> "FoldType":
        return FoldType(-self.value)


_EDGE_CHARS = {1: "M", -1: "V", 0: "-"}
_EDGE_CODES = {v: k for k, v in _EDGE_CHARS.items()}


class CreaseField:
    __slots__ = ("vertical", "horizontal")

    def __init__(self, vertical, horizontal):
        v = np.array(vertical, dtype=np.int8, copy=True)
        h = np.array(horizontal, dtype=np.int8, copy=True)
        if v.ndim != 2 or h.ndim != 2:
            raise ValueError("edge arrays must be 2-D")
        rows, cols = v.shape[0], v.shape[1] - 1
        if rows < 1 or cols < 1 or h.shape != (rows + 1, cols):
            raise ValueError(f"inconsistent edge arrays {v.shape} and {h.shape}")
        if not (np.isin(v, (-1, 0, 1)).all() and np.isin(h, (-1, 0, 1)).all()):
            raise ValueError("edge values must be -1, 0 or 1")
        v.flags.writeable = False
        h.flags.writeable = False
        object.__setattr__(self, "vertical", v)
        object.__setattr__(self, "horizontal", h)

    def __setattr__(self, name, value):
        raise AttributeError("CreaseField is immutable")

    @classmethod
    def empty(cls, rows: int, cols: int | None = None) -> "CreaseField":
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols + 1)), np.zeros((rows + 1, cols)))

    @property
    def rows(self) -> int:
        return self.vertical.shape[0]

    @property
    def cols(self) -> int:
        return self.horizontal.shape[1]

    def left(self, r: int, c: int) -> FoldType | None:
        """Fold on the left edge of cell ``(r, c)`` (1-based); ``c = cols + 1`` is the right border."""
        v = int(self.vertical[r - 1, c - 1])
        return FoldType(v) if v else None

    def bottom(self, r: int, c: int) -> FoldType | None:
        """Fold on the bottom edge of cell ``(r, c)`` (1-based); ``r = 0`` is the top border."""
        v = int(self.horizontal[r, c - 1])
        return FoldType(v) if v else None

    def crease_count(self) -> int:
        return int(np.count_nonzero(self.vertical) + np.count_nonzero(self.horizontal))

    def markers(self) -> list[tuple[float, float, str]]:
        """``(x, y, "M"|"V")`` at each creased edge midpoint, origin lower left, y up."""
        out = []
        for r, l in zip(*np.nonzero(self.vertical)):
            out.append((float(l), self.rows - r - 0.5, _EDGE_CHARS[int(self.vertical[r, l])]))
        for l, c in zip(*np.nonzero(self.horizontal)):
            out.append((c + 0.5, float(self.rows - l), _EDGE_CHARS[int(self.horizontal[l, c])]))
        return sorted(out)

    def flipped(self) -> "CreaseField":
        return CreaseField(-self.vertical, -self.horizontal)

    def subfield(self, r: int, c: int, rows: int, cols: int) -> "CreaseField":
        """Cells ``r..r+rows-1`` x ``c..c+cols-1`` (1-based) including their four boundary lines."""
        r0, c0 = r - 1, c - 1
        if r0 < 0 or c0 < 0 or r0 + rows > self.rows or c0 + cols > self.cols:
            raise IndexError("subfield outside the field")
        return CreaseField(
            self.vertical[r0 : r0 + rows, c0 : c0 + cols + 1],
            self.horizontal[r0 : r0 + rows + 1, c0 : c0 + cols],
        )

    def __eq__(self, other):
        if not isinstance(other, CreaseField):
            return NotImplemented
        return np.array_equal(self.vertical, other.vertical) and np.array_equal(
            self.horizontal, other.horizontal
        )

    def __hash__(self):
        return hash((self.vertical.tobytes(), self.horizontal.tobytes(), self.rows))

    def __repr__(self):
        return f"CreaseField({self.rows}x{self.cols}, {self.crease_count()} creases)"

    def to_json(self) -> str:
        enc = lambda a: "".join(_EDGE_CHARS[int(x)] for x in a.ravel())
        return json.dumps(
            {
                "rows": self.rows,
                "cols": self.cols,
                "vertical": enc(self.vertical),
                "horizontal": enc(self.horizontal),
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str | dict) -> "CreaseField":
        obj = json.loads(text) if isinstance(text, str) else text
        rows, cols = obj["rows"], obj["cols"]
        dec = lambda s, shape: np.array([_EDGE_CODES[ch] for ch in s], dtype=np.int8).reshape(shape)
        return cls(dec(obj["vertical"], (rows, cols + 1)), dec(obj["horizontal"], (rows + 1, cols)))


def reflect_x(f: CreaseField) -> CreaseField:
    """Mirror in the horizontal axis (top and bottom swap) and flip every fold."""
    return CreaseField(-f.vertical[::-1, :], -f.horizontal[::-1, :])


def reflect_y(f: CreaseField) -> CreaseField:
    """Mirror in the vertical axis (left and right swap) and flip every fold."""
    return CreaseField(-f.vertical[:, ::-1], -f.horizontal[:, ::-1])


def rotate_180(f: CreaseField) -> CreaseField:
    return CreaseField(f.vertical[::-1, ::-1], f.horizontal[::-1, ::-1])


# letter -> (left edge, bottom edge)
DECORATION = {
    0: (FoldType.MOUNTAIN, FoldType.MOUNTAIN),
    1: (FoldType.MOUNTAIN, FoldType.VALLEY),
    2: (FoldType.VALLEY, FoldType.MOUNTAIN),
    3: (FoldType.VALLEY, FoldType.VALLEY),
}
_LEFT = np.array([DECORATION[k][0] for k in range(4)], dtype=np.int8)
_BOTTOM = np.array([DECORATION[k][1] for k in range(4)], dtype=np.int8)


def decorate(s: Grid) -> CreaseField:
    """Crease field of a ``0..3`` grid: every cell owns its left and bottom edge."""
    if s.alphabet != B4:
        raise AlphabetMismatch(f"decorate expects a {B4} grid, got {s.alphabet}")
    rows, cols = s.shape
    v = np.zeros((rows, cols + 1), dtype=np.int8)
    h = np.zeros((rows + 1, cols), dtype=np.int8)
    v[:, :cols] = _LEFT[s.cells]
    h[1:, :] = _BOTTOM[s.cells]
    return CreaseField(v, h)


def fold_structure(n: int, cap: int | None = None) -> CreaseField:
    """Crease pattern of a square folded ``n`` times and unfolded, as a ``2**n`` cell square.

    Built from four reflected copies of the previous level: the plain copy in
    the upper right, its x-reflection below it, its y-reflection to its left and
    the doubly reflected copy in the lower left. The new centre lines carry a
    mountain fold on the left half of the horizontal axis and valley folds on
    the other three half-axes.
    """
    _check_depth(n, cap)
    field = CreaseField.empty(1)
    for level in range(1, n + 1):
        half = 1 << (level - 1)
        side = 2 * half
        v = np.zeros((side, side + 1), dtype=np.int8)
        h = np.zeros((side + 1, side), dtype=np.int8)
        # Quadrant boundaries are crease-free, so overlapping lines can be summed.
        for sub, r0, c0 in (
            (field, 0, half),
            (reflect_y(field), 0, 0),
            (reflect_x(field), half, half),
            (reflect_x(reflect_y(field)), half, 0),
        ):
            v[r0 : r0 + half, c0 : c0 + half + 1] += sub.vertical
            h[r0 : r0 + half + 1, c0 : c0 + half] += sub.horizontal
        h[half, :half] = FoldType.MOUNTAIN
        h[half, half:] = FoldType.VALLEY
        v[:, half] = FoldType.VALLEY
        field = CreaseField(v, h)
    return field


@dataclass(frozen=True)
class QuadrantReport:
    n: int
    equal: bool
    mismatch: tuple | None = None  # (edge kind, line, index, expected, actual)

    def __bool__(self):
        return self.equal


def quadrant_equivalence(n: int, cap: int | None = None) -> QuadrantReport:
    """Compare decorated ``S(n)`` with the upper right quadrant of ``fold_structure(n + 1)``.

    The quadrant includes the centre axes as its left and bottom boundary.
    """
    from .substitution import S

    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    side = 1 << n
    quad = fold_structure(n + 1, cap).subfield(1, side + 1, side, side)
    dec = decorate(S(n, cap=cap))
    for kind, want, got in (
        ("vertical", quad.vertical, dec.vertical),
        ("horizontal", quad.horizontal, dec.horizontal),
    ):
        diff = np.argwhere(want != got)
        if len(diff):
            a, b = (int(x) for x in diff[0])
            return QuadrantReport(n, False, (kind, a, b, int(want[a, b]), int(got[a, b])))
    return QuadrantReport(n, True)
