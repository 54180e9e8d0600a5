"""Exhaustive enumeration of rectangular subpatterns and their position classes.

The window scan is exact. Each length-``cols`` row strip of the source grid
first gets an integer id. A window is then the column of ``rows`` consecutive
strip ids, and those columns are deduplicated with ``np.unique``. Only one
representative per distinct window is turned into a canonical byte key.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import BudgetExceeded, PlateauNotFound
from .substitution import (
    A16,
    ALPHABET_TAGS,
    B4,
    LETTERS,
    MU,
    PHI,
    BlockSubstitution,
    Grid,
    S,
    T,
    depth_cap,
    pattern_key,
)

DEFAULT_MAX_DIM = 64
_TAG_ALPHABET = {v: k for k, v in ALPHABET_TAGS.items()}


class PatternSet:
    """Deduplicated set of equally shaped patterns, held as canonical keys."""

    __slots__ = ("alphabet", "rows", "cols", "keys")

    def __init__(self, alphabet: str, rows: int, cols: int, keys: Iterable[bytes] = ()):
        self.alphabet = alphabet
        self.rows = rows
        self.cols = cols
        self.keys = frozenset(keys)
        head = bytes((ALPHABET_TAGS[alphabet], rows, cols))
        for k in self.keys:
            if k[:3] != head or len(k) != 3 + rows * cols:
                raise ValueError("pattern key does not match the set's shape or alphabet")

    @classmethod
    def from_array(cls, alphabet: str, arr: np.ndarray) -> "PatternSet":
        """From an ``(N, rows, cols)`` code array; duplicates collapse."""
        _, rows, cols = arr.shape
        return cls(alphabet, rows, cols, (pattern_key(alphabet, a) for a in arr))

    def __len__(self):
        return len(self.keys)

    @property
    def cardinality(self) -> int:
        return len(self.keys)

    def __contains__(self, item):
        if isinstance(item, Grid):
            item = item.key()
        return item in self.keys

    def sorted_keys(self) -> list[bytes]:
        return sorted(self.keys)

    def __iter__(self) -> Iterator[Grid]:
        for k in self.sorted_keys():
            yield key_to_grid(k)

    def array(self) -> np.ndarray:
        """Members as an ``(N, rows, cols)`` uint8 array in key order."""
        if not self.keys:
            return np.zeros((0, self.rows, self.cols), dtype=np.uint8)
        buf = b"".join(k[3:] for k in self.sorted_keys())
        return np.frombuffer(buf, dtype=np.uint8).reshape(-1, self.rows, self.cols)

    def _same_kind(self, other: "PatternSet"):
        if (self.alphabet, self.rows, self.cols) != (other.alphabet, other.rows, other.cols):
            raise ValueError("pattern sets of different shape or alphabet")

    def __or__(self, other: "PatternSet") -> "PatternSet":
        self._same_kind(other)
        return PatternSet(self.alphabet, self.rows, self.cols, self.keys | other.keys)

    def __and__(self, other: "PatternSet") -> "PatternSet":
        self._same_kind(other)
        return PatternSet(self.alphabet, self.rows, self.cols, self.keys & other.keys)

    def __le__(self, other: "PatternSet") -> bool:
        return self.keys <= other.keys

    def isdisjoint(self, other: "PatternSet") -> bool:
        return self.keys.isdisjoint(other.keys)

    def __eq__(self, other):
        if not isinstance(other, PatternSet):
            return NotImplemented
        return (self.alphabet, self.rows, self.cols, self.keys) == (
            other.alphabet,
            other.rows,
            other.cols,
            other.keys,
        )

    def __hash__(self):
        return hash((self.alphabet, self.rows, self.cols, self.keys))

    def __repr__(self):
        return f"PatternSet({self.alphabet} {self.rows}x{self.cols}, {len(self)} patterns)"

    def to_text(self) -> str:
        """One ``rows cols alphabet data`` record per line, in key order."""
        letters = LETTERS[self.alphabet]
        lines = [
            f"{self.rows} {self.cols} {self.alphabet} " + "".join(letters[b] for b in k[3:])
            for k in self.sorted_keys()
        ]
        return "".join(line + "\n" for line in lines)

    @classmethod
    def from_text(cls, text: str) -> "PatternSet":
        records = [line.split() for line in text.splitlines() if line.strip()]
        if not records:
            raise ValueError("empty pattern listing")
        rows, cols, alphabet = int(records[0][0]), int(records[0][1]), records[0][2]
        keys = []
        for r, c, a, data in records:
            if (int(r), int(c), a) != (rows, cols, alphabet):
                raise ValueError("mixed shapes in pattern listing")
            keys.append(Grid.from_rows([data[i * cols : (i + 1) * cols] for i in range(rows)], a).key())
        return cls(alphabet, rows, cols, keys)


def key_to_grid(key: bytes) -> Grid:
    alphabet, rows, cols = _TAG_ALPHABET[key[0]], key[1], key[2]
    return Grid._wrap(alphabet, np.frombuffer(key[3:], dtype=np.uint8).reshape(rows, cols))


def _first_of_each(flat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Indices of first occurrences and inverse ids for the rows of a 2-D array."""
    flat = np.ascontiguousarray(flat)
    rowtype = np.dtype((np.void, flat.shape[1] * flat.itemsize))
    _, first, inverse = np.unique(flat.view(rowtype).ravel(), return_index=True, return_inverse=True)
    return first, inverse.ravel()


def _scan_band(cells, m, n, r_start, r_stop, step, offset, alphabet) -> set[bytes]:
    """Keys of windows whose top row lies in ``[r_start, r_stop)`` (0-based)."""
    if r_stop <= r_start:
        return set()
    band = cells[r_start : r_stop + m - 1]
    _, width = band.shape
    strips = sliding_window_view(band, n, axis=1)
    _, strip_ids = _first_of_each(strips.reshape(-1, n))
    ids = strip_ids.reshape(band.shape[0], width - n + 1).astype(np.int32)
    stacks = sliding_window_view(ids, m, axis=0)  # (rows, cols, m)
    sr, sc = step
    # step/offset select top-left corners by residue; offset is relative to row 0 of `cells`.
    r_first = (offset[0] - r_start) % sr
    stacks = stacks[r_first::sr, offset[1] % sc :: sc]
    if stacks.size == 0:
        return set()
    n_cols = stacks.shape[1]
    first, _ = _first_of_each(stacks.reshape(-1, m))
    rr, cc = np.divmod(first, n_cols)
    rr = rr * sr + r_first
    cc = cc * sc + offset[1] % sc
    return {pattern_key(alphabet, band[r : r + m, c : c + n]) for r, c in zip(rr, cc)}


def enumerate_subpatterns(
    X: Grid,
    m: int,
    n: int,
    *,
    partitions: int = 1,
    workers: int = 1,
    step: tuple[int, int] = (1, 1),
    offset: tuple[int, int] = (0, 0),
) -> PatternSet:
    """All distinct ``m x n`` windows of ``X``.

    ``step``/``offset`` restrict the top-left corners to rows ``offset[0] mod
    step[0]`` and columns ``offset[1] mod step[1]`` (0-based). The scan is split
    into ``partitions`` row bands, run on ``workers`` threads and merged by
    union, so the result does not depend on either number.
    """
    if m < 1 or n < 1:
        raise ValueError(f"window shape must be positive, got {m}x{n}")
    if m > X.rows or n > X.cols:
        raise ValueError(f"{m}x{n} window does not fit a {X.rows}x{X.cols} grid")
    n_starts = X.rows - m + 1
    partitions = max(1, min(partitions, n_starts))
    bounds = np.linspace(0, n_starts, partitions + 1).round().astype(int)
    jobs = [
        (X.cells, m, n, int(a), int(b), step, offset, X.alphabet)
        for a, b in zip(bounds[:-1], bounds[1:])
    ]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _scan_band(*job), jobs))
    else:
        parts = [_scan_band(*job) for job in jobs]
    keys: set[bytes] = set()
    for p in parts:
        keys |= p
    return PatternSet(X.alphabet, m, n, keys)


@dataclass(frozen=True)
class CensusResult:
    patterns: PatternSet
    plateau_level: int
    structure: str = "T"
    #: set sizes for each level scanned during the plateau search
    history: tuple[tuple[int, int], ...] = ()

    @property
    def cardinality(self) -> int:
        return len(self.patterns)


def start_level(m: int, n: int) -> int:
    """Smallest ``k`` with ``2**k >= max(m, n)``."""
    return (max(m, n) - 1).bit_length()


def _norm(i: int, period: int) -> int:
    if i < 1:
        raise ValueError(f"class index must be positive, got {i}")
    return (i - 1) % period + 1


class Census:
    """Brute-force pattern census for one pair of substitution rules.

    Results are memoised per instance; a fresh instance with altered rules
    shares nothing with the default one.
    """

    def __init__(
        self,
        mu: BlockSubstitution = MU,
        phi: BlockSubstitution = PHI,
        *,
        cap: int | None = None,
        max_dim: int = DEFAULT_MAX_DIM,
        partitions: int = 1,
        workers: int = 1,
    ):
        self.mu = mu
        self.phi = phi
        self.cap = depth_cap() if cap is None else cap
        self.max_dim = max_dim
        self.partitions = partitions
        self.workers = workers
        self._levels: dict = {}
        self._results: dict = {}
        self._classes: dict = {}

    def _check_budget(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ValueError(f"pattern shape must be positive, got {m}x{n}")
        if m > self.max_dim or n > self.max_dim:
            raise BudgetExceeded(f"{m}x{n} exceeds the window budget of {self.max_dim}")

    def level_patterns(self, k: int, m: int, n: int, structure: str = "T") -> PatternSet:
        """``P(T_k, m x n)`` or ``P(S_k, m x n)``, memoised."""
        key = (structure, k, m, n)
        if key not in self._levels:
            grid = T(k, self.mu, self.cap) if structure == "T" else S(k, self.mu, self.phi, self.cap)
            self._levels[key] = enumerate_subpatterns(
                grid, m, n, partitions=self.partitions, workers=self.workers
            )
        return self._levels[key]

    def pattern_set_T(self, m: int, n: int | None = None) -> CensusResult:
        """Every ``m x n`` pattern of the infinite structure, via the first stable level.

        Scans ``T_k, T_{k+1}, ...`` from the smallest ``k`` whose side covers the
        window and stops at the first ``k`` with equal pattern sets on both
        levels. Strict growth is asserted on the way.
        """
        n = m if n is None else n
        self._check_budget(m, n)
        if ("T", m, n) in self._results:
            return self._results[("T", m, n)]
        k = start_level(m, n)
        history = []
        prev = self.level_patterns(k, m, n)
        history.append((k, len(prev)))
        while k + 1 <= self.cap:
            nxt = self.level_patterns(k + 1, m, n)
            history.append((k + 1, len(nxt)))
            if not prev <= nxt:
                raise AssertionError(f"pattern chain not monotone at level {k} for {m}x{n}")
            if nxt == prev:
                res = CensusResult(prev, k, "T", tuple(history))
                self._results[("T", m, n)] = res
                return res
            prev = nxt
            k += 1
        raise PlateauNotFound(m, n, k, history)

    def pattern_set_S(self, m: int, n: int | None = None) -> CensusResult:
        """Every ``m x n`` pattern of ``S = phi(T)``.

        Any ``m x n`` window of ``S`` lies inside the image of a
        ``(m//2 + 1) x (n//2 + 1)`` window of ``T``. Once ``T_k`` holds all of
        those, ``S_{k+1} = phi(T_k)`` holds every ``m x n`` window of ``S``.
        """
        n = m if n is None else n
        self._check_budget(m, n)
        if ("S", m, n) in self._results:
            return self._results[("S", m, n)]
        base = self.pattern_set_T(m // 2 + 1, n // 2 + 1)
        level = base.plateau_level + 1
        if level > self.cap:
            raise PlateauNotFound(m, n, level, base.history)
        pats = self.level_patterns(level, m, n, "S")
        res = CensusResult(pats, level, "S", base.history)
        self._results[("S", m, n)] = res
        return res

    def _images(self, m: int, n: int, rules: tuple[BlockSubstitution, ...]) -> np.ndarray:
        arr = self.pattern_set_T(m, n).patterns.array()
        for rule in rules:
            arr = rule.apply_array(arr)
        return arr

    def P_ij(self, m: int, n: int, i: int, j: int, structure: str = "T") -> PatternSet:
        """Crops at ``(i, j)`` of the ``mu`` (or ``phi``) images of all ``m x n`` patterns."""
        i, j = _norm(i, 2), _norm(j, 2)
        key = ("P", structure, m, n, i, j)
        if key not in self._classes:
            rule = self.mu if structure == "T" else self.phi
            imgs = self._images(m, n, (rule,))
            crop = imgs[:, i - 1 : i - 1 + m, j - 1 : j - 1 + n]
            self._classes[key] = PatternSet.from_array(rule.target, crop)
        return self._classes[key]

    def Q_ij(self, m: int, n: int, i: int, j: int) -> PatternSet:
        """Crops at ``(i, j)``, ``i, j`` in ``1..4``, of the twice-substituted patterns."""
        i, j = _norm(i, 4), _norm(j, 4)
        key = ("Q", m, n, i, j)
        if key not in self._classes:
            imgs = self._images(m, n, (self.mu, self.mu))
            crop = imgs[:, i - 1 : i - 1 + m, j - 1 : j - 1 + n]
            self._classes[key] = PatternSet.from_array(self.mu.target, crop)
        return self._classes[key]

    def P_ij_by_position(self, m: int, n: int, i: int, j: int) -> PatternSet:
        """Windows of ``T_{k+1}`` (``k`` the plateau level) anchored at rows ``= i`` and columns ``= j`` mod 2."""
        i, j = _norm(i, 2), _norm(j, 2)
        k = self.pattern_set_T(m, n).plateau_level + 1
        if k > self.cap:
            raise PlateauNotFound(m, n, k, ())
        grid = T(k, self.mu, self.cap)
        return enumerate_subpatterns(grid, m, n, step=(2, 2), offset=(i - 1, j - 1))

    def abc(self, n: int) -> dict[str, int]:
        """The twelve class counts ``a11 .. c22`` at argument ``n``."""
        out = {}
        for name, (m, w) in (("a", (n, n)), ("b", (n, n + 1)), ("c", (n + 1, n))):
            for i in (1, 2):
                for j in (1, 2):
                    out[f"{name}{i}{j}"] = len(self.P_ij(m, w, i, j))
        return out

    def A(self, n: int) -> int:
        return self.pattern_set_S(n, n).cardinality


_default: Census | None = None


def default_census() -> Census:
    global _default
    if _default is None or _default.cap != depth_cap():
        _default = Census()
    return _default


def pattern_set_T(m: int, n: int | None = None) -> CensusResult:
    return default_census().pattern_set_T(m, n)


def pattern_set_S(m: int, n: int | None = None) -> CensusResult:
    return default_census().pattern_set_S(m, n)


def P_ij(m: int, n: int, i: int, j: int, structure: str = "T") -> PatternSet:
    return default_census().P_ij(m, n, i, j, structure)


def Q_ij(m: int, n: int, i: int, j: int) -> PatternSet:
    return default_census().Q_ij(m, n, i, j)


def A_bruteforce(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return default_census().A(n)


def abc_bruteforce(n: int) -> dict[str, int]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return default_census().abc(n)


__all__ = [
    "A16",
    "B4",
    "Census",
    "CensusResult",
    "PatternSet",
    "A_bruteforce",
    "P_ij",
    "Q_ij",
    "abc_bruteforce",
    "default_census",
    "enumerate_subpatterns",
    "key_to_grid",
    "pattern_set_S",
    "pattern_set_T",
    "start_level",
]
