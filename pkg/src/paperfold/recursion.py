"""Class counts and square-pattern counts without enumeration.

Three routes to the number ``A_n`` of distinct ``n x n`` patterns:

* ``abc_recursive``: the mod-4 recursion for the twelve class counts, seeded with
  the first ten values;
* ``A_recursive``: ``A_{2n} = 4 A_n + 12`` and ``A_{2n+1} = 2 A_n + 2 A_{n+1}``
  for ``n >= 3``, seeded with ``A_1 .. A_5``;
* ``A_closed``: ``12 n^2 + 24 n 2^alpha - 16 4^alpha - 4`` with
  ``alpha = floor(log2(n - 1))``, plus the two small cases.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

INT64_MAX = 2**63 - 1

COUNT_NAMES = tuple(f"{f}{i}{j}" for f in "abc" for i in (1, 2) for j in (1, 2))

# Initial values for n = 1..10, one row per count.
_SEED_ROWS = {
    "a11": (4, 16, 48, 76, 136, 184, 256, 316, 432, 520),
    "a12": (4, 20, 20, 80, 80, 188, 188, 320, 320, 524),
    "a21": (4, 20, 76, 80, 184, 188, 316, 320, 520, 524),
    "a22": (4, 20, 40, 80, 120, 188, 240, 320, 400, 524),
    "b11": (8, 40, 48, 128, 136, 252, 256, 424, 432, 644),
    "b12": (8, 20, 48, 80, 136, 188, 256, 320, 432, 524),
    "b21": (8, 48, 76, 136, 184, 256, 316, 432, 520, 648),
    "b22": (16, 20, 80, 80, 188, 188, 320, 320, 524, 524),
    "c11": (8, 20, 76, 80, 184, 188, 316, 320, 520, 524),
    "c12": (8, 20, 40, 80, 120, 188, 240, 320, 400, 524),
    "c21": (12, 36, 80, 116, 188, 236, 320, 396, 524, 612),
    "c22": (8, 40, 40, 120, 120, 240, 240, 400, 400, 616),
    "A": (4, 68, 184, 316, 520, 748, 1000, 1276, 1672, 2092),
}
SEED_MAX = 10
INITIAL_VALUES = {
    n: {name: row[n - 1] for name, row in _SEED_ROWS.items()} for n in range(1, SEED_MAX + 1)
}
A_SEEDS = {n: _SEED_ROWS["A"][n - 1] for n in range(1, 6)}

# Each rule rewrites a count at 4n + r in terms of counts at 2n, 2n+1, 2n+2
# or, for one-term aliases, another count at the same level 4n + r'.
_RULES_TEXT = """
a11(4n)   = a11(2n)   + a12(2n)   + a21(2n)   + a22(2n)
a12(4n)   = a12(2n)   + a12(2n)   + a12(2n)   + a12(2n)
a21(4n)   = a21(2n)   + a12(2n)   + a21(2n)   + a12(2n)
a22(4n)   = a12(2n)   + a12(2n)   + a12(2n)   + a12(2n)
a11(4n+1) = a11(2n+1) + a12(2n)   + a11(2n+1) + a12(2n)
a12(4n+1) = a22(4n)
a21(4n+1) = a11(2n+1) + a12(2n)   + a11(2n+2) + a22(2n+1)
a22(4n+1) = a12(2n)   + a12(2n)   + a22(2n+1) + a22(2n+1)
a11(4n+2) = a21(4n+1)
a12(4n+2) = a12(2n)   + b12(2n+1) + a22(2n+1) + a12(2n+2)
a21(4n+2) = a11(2n+1) + a12(2n)   + a21(2n+2) + a22(2n+1)
a22(4n+2) = a12(2n)   + b12(2n+1) + a22(2n+1) + a12(2n+2)
a11(4n+3) = a11(2n+1) + b12(2n+1) + a21(2n+2) + a12(2n+2)
a12(4n+3) = a22(4n+2)
a21(4n+3) = a11(2n+2) + a12(2n+2) + a21(2n+2) + a12(2n+2)
a22(4n+3) = a22(2n+1) + a12(2n+2) + a22(2n+1) + a12(2n+2)

b11(4n)   = b11(2n)   + a12(2n)   + a11(2n+1) + a12(2n)
b12(4n)   = a12(4n)
b21(4n)   = a11(4n+1)
b22(4n)   = a22(4n)
b11(4n+1) = a11(4n+1)
b12(4n+1) = a12(2n)   + b12(2n+1) + a12(2n)   + b12(2n+1)
b21(4n+1) = a21(4n+1)
b22(4n+1) = a12(4n+2)
b11(4n+2) = a11(2n+1) + b12(2n+1) + a11(2n+2) + a12(2n+2)
b12(4n+2) = a12(4n+2)
b21(4n+2) = a11(4n+3)
b22(4n+2) = a22(4n+2)
b11(4n+3) = a11(4n+3)
b12(4n+3) = b12(2n+1) + b12(2n+1) + a12(2n+2) + a12(2n+2)
b21(4n+3) = a21(4n+3)
b22(4n+3) = a12(2n+2) + a12(2n+2) + a12(2n+2) + a12(2n+2)

c11(4n)   = a21(4n)
c12(4n)   = a22(4n)
c21(4n)   = a21(2n)   + a12(2n)   + c21(2n)   + a22(2n+1)
c22(4n)   = a22(4n+1)
c11(4n+1) = a21(4n+1)
c12(4n+1) = a22(4n+1)
c21(4n+1) = a21(4n+2)
c22(4n+1) = a12(2n)   + a12(2n)   + a22(2n+1) + a22(2n+1)
c11(4n+2) = a21(4n+2)
c12(4n+2) = a22(4n+2)
c21(4n+2) = a11(2n+2) + a22(2n+1) + a21(2n+2) + a22(2n+1)
c22(4n+2) = a22(4n+3)
c11(4n+3) = a21(4n+3)
c12(4n+3) = a22(4n+3)
c21(4n+3) = a21(2n+2) + a12(2n+2) + a21(2n+2) + a12(2n+2)
c22(4n+3) = a22(2n+1) + a12(2n+2) + a22(2n+1) + a12(2n+2)
"""

_TERM = re.compile(r"([abc][12][12])\((\d)n(?:\+(\d))?\)")


def _parse_rules(text: str) -> dict[tuple[str, int], tuple[tuple[str, int, int], ...]]:
    """``(count, r) -> ((count, mult, add), ...)``: evaluate each term at ``mult*q + add``."""
    rules = {}
    for line in text.strip().splitlines():
        if not line.strip():
            continue
        lhs, rhs = line.split("=")
        name, mult, add = _TERM.fullmatch(lhs.strip()).groups()
        assert mult == "4"
        terms = []
        for part in rhs.split("+ "):
            t = _TERM.fullmatch(part.strip())
            terms.append((t.group(1), int(t.group(2)), int(t.group(3) or 0)))
        rules[(name, int(add or 0))] = tuple(terms)
    missing = {(c, r) for c in COUNT_NAMES for r in range(4)} - set(rules)
    if missing:
        raise ValueError(f"incomplete recursion table, missing {sorted(missing)}")
    return rules


RULES = _parse_rules(_RULES_TEXT)


def _guard(value: int) -> int:
    if value > INT64_MAX:
        raise OverflowError(f"count {value} does not fit in 64 bits")
    return value


class RecursionEngine:
    """Memoised evaluation of the class-count recursion.

    Termination: a multi-term rule at ``4q + r`` only refers to arguments
    ``2q .. 2q + 2``, which are smaller since ``q >= 1`` and the argument exceeds
    the seed range. A one-term alias stays at level ``4q + r'``, but every
    alias ends on a multi-term rule. The ``a`` aliases point to a smaller
    residue. The ``b``/``c`` aliases point to an ``a`` count whose rule has
    more than one term.
    """

    def __init__(self, seeds: dict[int, dict[str, int]] | None = None, seed_max: int = SEED_MAX):
        seeds = INITIAL_VALUES if seeds is None else seeds
        self.seed_max = seed_max
        self._memo: dict[tuple[str, int], int] = {}
        for n in range(1, seed_max + 1):
            for name in COUNT_NAMES:
                self._memo[(name, n)] = seeds[n][name]

    def count(self, name: str, n: int) -> int:
        if n < 1:
            raise ValueError(f"argument must be positive, got {n}")
        key = (name, n)
        memo = self._memo
        if key in memo:
            return memo[key]
        q, r = divmod(n, 4)
        value = 0
        for term, mult, add in RULES[(name, r)]:
            value += self.count(term, mult * q + add)
        memo[key] = _guard(value)
        return memo[key]

    def abc(self, n: int) -> dict[str, int]:
        return {name: self.count(name, n) for name in COUNT_NAMES}


_engine = RecursionEngine()


def abc_recursive(n: int) -> dict[str, int]:
    return _engine.abc(n)


def count_recursive(name: str, n: int) -> int:
    return _engine.count(name, n)


_A_memo: dict[int, int] = dict(A_SEEDS)


def A_recursive(n: int) -> int:
    """``A_n`` from the even/odd halving recursion. Iterative, so deep indices are fine."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    stack = [n]
    while stack:
        k = stack[-1]
        if k in _A_memo:
            stack.pop()
            continue
        half = k // 2
        deps = (half,) if k % 2 == 0 else (half, half + 1)
        todo = [d for d in deps if d not in _A_memo]
        if todo:
            stack.extend(todo)
            continue
        if k % 2 == 0:
            _A_memo[k] = _guard(4 * _A_memo[half] + 12)
        else:
            _A_memo[k] = _guard(2 * _A_memo[half] + 2 * _A_memo[half + 1])
        stack.pop()
    return _A_memo[n]


def A_recursive_table(n_max: int) -> list[int]:
    """``[A_1, ..., A_{n_max}]`` bottom-up; index 0 is unused and holds 0."""
    table = [0] * (n_max + 1)
    for k in range(1, min(n_max, 5) + 1):
        table[k] = A_SEEDS[k]
    for k in range(6, n_max + 1):
        half = k >> 1
        if k & 1:
            table[k] = 2 * table[half] + 2 * table[half + 1]
        else:
            table[k] = 4 * table[half] + 12
    if n_max >= 1:
        _guard(table[n_max])
    return table


def alpha(n: int) -> int:
    """``floor(log2(n - 1))`` by bit length, for ``n >= 2``."""
    if n < 2:
        raise ValueError(f"alpha needs n >= 2, got {n}")
    return (n - 1).bit_length() - 1


def A_closed(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return 4
    if n == 2:
        return 68
    a = alpha(n)
    return _guard(12 * n * n + 24 * n * (1 << a) - 16 * (1 << (2 * a)) - 4)


@dataclass
class IdentityResult:
    name: str
    n: int
    holds: bool
    values: tuple[int, ...]


def _chain(name, n, *values) -> IdentityResult:
    return IdentityResult(name, n, len(set(values)) == 1, tuple(values))


def derived_identities(n: int) -> list[IdentityResult]:
    """Evaluate the even/odd class identities and the halving recursion at ``n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    c = count_recursive
    out = [
        _chain("a12(2n)=a21(2n)=a22(2n)", n, c("a12", 2 * n), c("a21", 2 * n), c("a22", 2 * n)),
        _chain("a11(2n+1)=b12(2n+1)", n, c("a11", 2 * n + 1), c("b12", 2 * n + 1)),
        _chain("a11(2n)+4=a12(2n)", n, c("a11", 2 * n) + 4, c("a12", 2 * n)),
        _chain("a21(2n+1)+4=b22(2n+1)", n, c("a21", 2 * n + 1) + 4, c("b22", 2 * n + 1)),
    ]
    if n >= 3:
        out.append(_chain("A(2n)=4A(n)+12", n, A_recursive(2 * n), 4 * A_recursive(n) + 12))
        out.append(
            _chain(
                "A(2n+1)=2A(n)+2A(n+1)",
                n,
                A_recursive(2 * n + 1),
                2 * A_recursive(n) + 2 * A_recursive(n + 1),
            )
        )
    return out


# Unique-extension identities.  Each entry: (label, minimum n, list of chains),
# a chain being a tuple of (count, mult, add) meaning count(mult*n + add).
FIRST_EXTENSIONS = (
    ("1", 2, (("a12", 2, 0), ("b12", 2, 0), ("b22", 2, -1))),
    ("2", 2, (("a21", 2, 0), ("c11", 2, 0), ("c21", 2, -1))),
    ("3", 2, (("a22", 2, 0), ("a12", 2, 1), ("c12", 2, 0), ("b22", 2, 0))),
    ("4", 2, (("a11", 2, 1), ("b11", 2, 1), ("b21", 2, 0))),
    ("5", 2, (("a21", 2, 1), ("a11", 2, 2), ("b21", 2, 1), ("c11", 2, 1))),
    ("6", 2, (("a22", 2, 1), ("c12", 2, 1), ("c22", 2, 0))),
)

MOD4_EXTENSIONS = (
    ("1", 1, (("a12", 4, 0), ("b12", 4, 0))),
    ("2", 1, (("a21", 4, 0), ("c11", 4, 0))),
    ("3", 1, (("a22", 4, 0), ("a12", 4, 1), ("c12", 4, 0), ("b22", 4, 0))),
    ("4", 1, (("a11", 4, 1), ("b11", 4, 1), ("b21", 4, 0))),
    ("5", 1, (("a21", 4, 1), ("a11", 4, 2), ("c11", 4, 1), ("b21", 4, 1))),
    ("6", 1, (("a22", 4, 1), ("c12", 4, 1), ("c22", 4, 0))),
    ("7", 1, (("a12", 4, 2), ("b12", 4, 2), ("b22", 4, 1))),
    ("8", 1, (("a21", 4, 2), ("c11", 4, 2), ("c21", 4, 1))),
    ("9", 1, (("a22", 4, 2), ("a12", 4, 3), ("c12", 4, 2), ("b22", 4, 2))),
    ("10", 1, (("a11", 4, 3), ("b11", 4, 3), ("b21", 4, 2))),
    ("11", 1, (("a21", 4, 3), ("c11", 4, 3), ("b21", 4, 3))),
    ("12", 1, (("a22", 4, 3), ("c12", 4, 3), ("c22", 4, 2))),
)

SECOND_EXTENSIONS = (
    ("1", 1, (("a12", 2, 0), ("a21", 2, 0), ("a22", 2, 0))),
    ("2", 1, (("a11", 2, 1), ("b12", 2, 1))),
)


def count_shape(name: str, n: int) -> tuple[int, int]:
    """Window shape counted by ``name`` at argument ``n``: square, wide or tall."""
    return {"a": (n, n), "b": (n, n + 1), "c": (n + 1, n)}[name[0]]


def chain_window(chain, n: int) -> int:
    """Largest window dimension a brute-force evaluation of ``chain`` at ``n`` needs."""
    return max(max(count_shape(name, mult * n + add)) for name, mult, add in chain)


def evaluate_chain(chain, n: int, lookup) -> tuple[int, ...]:
    """Values of each ``count(mult*n + add)`` in ``chain`` via ``lookup(name, arg)``."""
    return tuple(lookup(name, mult * n + add) for name, mult, add in chain)


def plus4_identities(n: int, lookup) -> list[IdentityResult]:
    return [
        IdentityResult(
            "a11(2n)+4=a12(2n)", n, lookup("a11", 2 * n) + 4 == lookup("a12", 2 * n),
            (lookup("a11", 2 * n) + 4, lookup("a12", 2 * n)),
        ),
        IdentityResult(
            "a21(2n+1)+4=b22(2n+1)", n, lookup("a21", 2 * n + 1) + 4 == lookup("b22", 2 * n + 1),
            (lookup("a21", 2 * n + 1) + 4, lookup("b22", 2 * n + 1)),
        ),
    ]


@dataclass
class CensusRecord:
    n: int
    counts: dict[str, int]
    A: int
    source: str  # seed | recursive | bruteforce | closed


@dataclass
class CensusTable:
    records: list[CensusRecord] = field(default_factory=list)

    HEADER = ("n",) + COUNT_NAMES + ("A",)

    def row(self, n: int) -> CensusRecord:
        for rec in self.records:
            if rec.n == n:
                return rec
        raise KeyError(n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        for rec in self.records:
            w.writerow([rec.n] + [rec.counts[k] for k in COUNT_NAMES] + [rec.A])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, source: str = "seed") -> "CensusTable":
        rows = list(csv.reader(io.StringIO(text)))
        if tuple(rows[0]) != cls.HEADER:
            raise ValueError(f"unexpected header {rows[0]}")
        recs = []
        for r in rows[1:]:
            vals = [int(x) for x in r]
            recs.append(CensusRecord(vals[0], dict(zip(COUNT_NAMES, vals[1:13])), vals[13], source))
        return cls(recs)


def seed_table() -> CensusTable:
    return CensusTable(
        [
            CensusRecord(n, {k: INITIAL_VALUES[n][k] for k in COUNT_NAMES}, INITIAL_VALUES[n]["A"], "seed")
            for n in range(1, SEED_MAX + 1)
        ]
    )


def census_table(n_max: int, brute_max: int = 0, census=None) -> CensusTable:
    """Counts for ``n = 1..n_max``: brute force up to ``brute_max``, recursion beyond."""
    recs = []
    for n in range(1, n_max + 1):
        if n <= brute_max:
            from .census import default_census

            cen = census or default_census()
            recs.append(CensusRecord(n, cen.abc(n), cen.A(n), "bruteforce"))
        else:
            recs.append(
                CensusRecord(
                    n, abc_recursive(n), A_recursive(n), "seed" if n <= SEED_MAX else "recursive"
                )
            )
    return CensusTable(recs)
