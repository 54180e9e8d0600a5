"""Alphabets, letter grids and the two paperfolding block substitutions.

Grids use 1-based ``(row, col)`` coordinates in every public method, with row 1
at the top. Internally the letters are stored as ``uint8`` codes in a 0-based
row-major numpy array: ``A..P`` map to ``0..15`` and ``0..3`` map to ``0..3``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetMismatch, DepthCapExceeded

A16 = "A16"
B4 = "B4"
LETTERS = {A16: "ABCDEFGHIJKLMNOP", B4: "0123"}
ALPHABET_TAGS = {A16: 0, B4: 1}

DEFAULT_DEPTH_CAP = 12
DEPTH_CAP_ENV = "PAPERFOLD_DEPTH_CAP"


def depth_cap() -> int:
    """Current supertile depth cap, overridable through ``PAPERFOLD_DEPTH_CAP``."""
    raw = os.environ.get(DEPTH_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DEPTH_CAP
    cap = int(raw)
    if cap < 0:
        raise ValueError(f"{DEPTH_CAP_ENV} must be non-negative, got {cap}")
    return cap


def _check_depth(n: int, cap: int | None) -> None:
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    cap = depth_cap() if cap is None else cap
    if n > cap:
        raise DepthCapExceeded(f"level {n} exceeds depth cap {cap}")


def letter_code(letter: str, alphabet: str = A16) -> int:
    try:
        return LETTERS[alphabet].index(letter)
    except ValueError:
        raise AlphabetMismatch(f"{letter!r} is not a letter of {alphabet}") from None


class Grid:
    """Immutable rectangular array of letters over one alphabet."""

    __slots__ = ("alphabet", "cells")

    def __init__(self, alphabet: str, cells):
        if alphabet not in LETTERS:
            raise ValueError(f"unknown alphabet {alphabet!r}")
        arr = np.array(cells, dtype=np.uint8, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"grid cells must be a non-empty 2-D array, got shape {arr.shape}")
        if arr.size and int(arr.max()) >= len(LETTERS[alphabet]):
            raise AlphabetMismatch(f"cell code {int(arr.max())} outside alphabet {alphabet}")
        arr.flags.writeable = False
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "cells", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Grid is immutable")

    @classmethod
    def _wrap(cls, alphabet: str, arr: np.ndarray) -> "Grid":
        # Trusted fast path for arrays produced inside the package.
        self = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.flags.writeable = False
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "cells", arr)
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[str] | str, alphabet: str | None = None) -> "Grid":
        """Build a grid from strings, e.g. ``Grid.from_rows(["IN", "PL"])``.

        Whitespace inside a row is ignored, so ``"2 3"`` and ``"23"`` are equal.
        The alphabet is inferred from the first letter when not given.
        """
        if isinstance(rows, str):
            rows = rows.split("/") if "/" in rows else rows.splitlines()
        rows = ["".join(r.split()) for r in rows]
        rows = [r for r in rows if r]
        if not rows:
            raise ValueError("empty grid")
        if alphabet is None:
            alphabet = B4 if rows[0][0] in LETTERS[B4] else A16
        codes = [[letter_code(ch, alphabet) for ch in r] for r in rows]
        if len({len(r) for r in codes}) != 1:
            raise ValueError("ragged rows")
        return cls(alphabet, codes)

    @classmethod
    def single(cls, letter: str, alphabet: str = A16) -> "Grid":
        return cls(alphabet, [[letter_code(letter, alphabet)]])

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def __getitem__(self, rc: tuple[int, int]) -> str:
        r, c = rc
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise IndexError(f"({r}, {c}) outside {self.rows}x{self.cols} grid")
        return LETTERS[self.alphabet][self.cells[r - 1, c - 1]]

    def window(self, r: int, c: int, m: int, n: int) -> "Grid":
        """The ``m x n`` subgrid with its upper left corner at row ``r``, column ``c``."""
        if m < 1 or n < 1 or r < 1 or c < 1 or r + m - 1 > self.rows or c + n - 1 > self.cols:
            raise IndexError(
                f"window at ({r}, {c}) of shape {m}x{n} outside {self.rows}x{self.cols} grid"
            )
        return Grid._wrap(self.alphabet, self.cells[r - 1 : r - 1 + m, c - 1 : c - 1 + n])

    def to_rows(self) -> list[str]:
        letters = np.frombuffer(LETTERS[self.alphabet].encode(), dtype=np.uint8)
        chars = letters[self.cells]
        return [row.tobytes().decode() for row in chars]

    def data(self) -> str:
        return "".join(self.to_rows())

    def to_text(self, sep: str = " ") -> str:
        return "\n".join(sep.join(r) for r in self.to_rows())

    def key(self) -> bytes:
        """Canonical byte encoding: alphabet tag, rows, cols, then the cells row-major."""
        return pattern_key(self.alphabet, self.cells)

    def to_json(self) -> str:
        return json.dumps(
            {"alphabet": self.alphabet, "rows": self.rows, "cols": self.cols, "data": self.data()},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str | dict) -> "Grid":
        obj = json.loads(text) if isinstance(text, str) else text
        alphabet, rows, cols, data = obj["alphabet"], obj["rows"], obj["cols"], obj["data"]
        if len(data) != rows * cols:
            raise ValueError(f"data length {len(data)} does not match {rows}x{cols}")
        return cls.from_rows([data[i * cols : (i + 1) * cols] for i in range(rows)], alphabet)

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"Grid({self.alphabet}, {'/'.join(self.to_rows())})"
        return f"Grid({self.alphabet}, {self.rows}x{self.cols})"


def pattern_key(alphabet: str, cells: np.ndarray) -> bytes:
    rows, cols = cells.shape
    if rows > 255 or cols > 255:
        raise ValueError(f"pattern keys are limited to 255x255, got {rows}x{cols}")
    return bytes((ALPHABET_TAGS[alphabet], rows, cols)) + np.ascontiguousarray(cells, np.uint8).tobytes()


@dataclass(frozen=True)
class BlockSubstitution:
    """A letter-to-2x2-block rule, stored as data.

    ``blocks[k]`` holds the image of source letter ``k`` as four target letters
    in the order top-left, top-right, bottom-left, bottom-right.
    """

    name: str
    source: str
    target: str
    blocks: tuple[str, ...]

    def __post_init__(self):
        if len(self.blocks) != len(LETTERS[self.source]):
            raise ValueError(f"{self.name}: need one block per letter of {self.source}")
        for b in self.blocks:
            if len(b) != 4 or any(ch not in LETTERS[self.target] for ch in b):
                raise ValueError(f"{self.name}: bad block {b!r}")

    @classmethod
    def from_mapping(cls, name: str, source: str, target: str, mapping: dict[str, str]):
        return cls(name, source, target, tuple(mapping[x] for x in LETTERS[source]))

    @cached_property
    def table(self) -> np.ndarray:
        t = np.array(
            [[letter_code(ch, self.target) for ch in b] for b in self.blocks], dtype=np.uint8
        ).reshape(-1, 2, 2)
        t.flags.writeable = False
        return t

    def image(self, letter: str) -> Grid:
        return Grid._wrap(self.target, self.table[letter_code(letter, self.source)])

    def apply_array(self, cells: np.ndarray) -> np.ndarray:
        """Substitute a ``(..., rows, cols)`` code array into ``(..., 2 rows, 2 cols)``."""
        blocks = self.table[cells]  # (..., R, C, 2, 2)
        *lead, R, C = cells.shape
        return blocks.swapaxes(-3, -2).reshape(*lead, 2 * R, 2 * C)

    def __call__(self, grid: Grid) -> Grid:
        if grid.alphabet != self.source:
            raise AlphabetMismatch(f"{self.name} expects a {self.source} grid, got {grid.alphabet}")
        return Grid._wrap(self.target, self.apply_array(grid.cells))

    def replace(self, letter: str, block: str) -> "BlockSubstitution":
        """Copy of this rule with one block swapped out (for experiments and mutation tests)."""
        blocks = list(self.blocks)
        blocks[letter_code(letter, self.source)] = block
        return BlockSubstitution(self.name + "*", self.source, self.target, tuple(blocks))


MU = BlockSubstitution.from_mapping(
    "mu",
    A16,
    A16,
    {
        "A": "AFGC", "B": "AFHD", "C": "BEGC", "D": "BEHD",
        "E": "ANGK", "F": "ANHL", "G": "BMGK", "H": "BMHL",
        "I": "IFOC", "J": "IFPD", "K": "JEOC", "L": "JEPD",
        "M": "INOK", "N": "INPL", "O": "JMOK", "P": "JMPL",
    },
)

PHI = BlockSubstitution.from_mapping(
    "phi",
    A16,
    B4,
    {
        "A": "0100", "B": "0111", "C": "1000", "D": "1011",
        "E": "0302", "F": "0313", "G": "1202", "H": "1213",
        "I": "2120", "J": "2131", "K": "3020", "L": "3031",
        "M": "2322", "N": "2333", "O": "3222", "P": "3233",
    },
)


def mu_apply(p: Grid, mu: BlockSubstitution = MU) -> Grid:
    return mu(p)


def phi_apply(p: Grid, phi: BlockSubstitution = PHI) -> Grid:
    return phi(p)


@lru_cache(maxsize=128)
def _supertile_cells(mu: BlockSubstitution, code: int, n: int) -> np.ndarray:
    if n == 0:
        arr = np.array([[code]], dtype=np.uint8)
    else:
        arr = mu.apply_array(_supertile_cells(mu, code, n - 1))
    arr.flags.writeable = False
    return arr


def supertile(x: str, n: int, mu: BlockSubstitution = MU, cap: int | None = None) -> Grid:
    """``mu`` iterated ``n`` times on the single letter ``x``; a ``2**n`` square."""
    _check_depth(n, cap)
    return Grid._wrap(mu.source, _supertile_cells(mu, letter_code(x, mu.source), n))


def T(n: int, mu: BlockSubstitution = MU, cap: int | None = None) -> Grid:
    return supertile("N", n, mu, cap)


def S(n: int, mu: BlockSubstitution = MU, phi: BlockSubstitution = PHI, cap: int | None = None) -> Grid:
    """``phi(T(n - 1))``: the ``2**n`` square over ``0..3``."""
    if n < 1:
        raise ValueError(f"S(n) needs n >= 1, got {n}")
    _check_depth(n - 1, cap)
    return Grid._wrap(phi.target, phi.apply_array(_supertile_cells(mu, letter_code("N"), n - 1)))


def cell_at(x: str, n: int, r: int, c: int, mu: BlockSubstitution = MU) -> str:
    """Entry ``(r, c)`` of ``supertile(x, n)`` without materialising it.

    Walks down one substitution level per step; the bit of ``r - 1`` (and
    ``c - 1``) at each scale selects the quadrant.
    """
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    side = 1 << n
    if not (1 <= r <= side and 1 <= c <= side):
        raise IndexError(f"({r}, {c}) outside {side}x{side} supertile")
    table = mu.table
    code = letter_code(x, mu.source)
    r0, c0 = r - 1, c - 1
    for level in range(n - 1, -1, -1):
        code = table[code, (r0 >> level) & 1, (c0 >> level) & 1]
    return LETTERS[mu.target][code]


def iter_letters(alphabet: str = A16) -> Iterable[str]:
    return iter(LETTERS[alphabet])
