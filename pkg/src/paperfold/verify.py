"""Run every counting identity against brute force and the recursions, in a fixed order."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from . import recursion as rec
from .census import Census, PatternSet
from .creases import quadrant_equivalence
from .errors import BudgetExceeded, DepthCapExceeded, PlateauNotFound

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

ANCHORS = (
    "initial-values table",
    "pattern stabilisation",
    "disjoint classes over T",
    "disjoint classes over S",
    "disjoint Q classes",
    "mu/phi crop correspondence",
    "|P(T)| = |P(S)|",
    "class by anchor position",
    "first extension identities",
    "mod-4 extension identities",
    "second extension identities",
    "plus-four identities",
    "Q extension",
    "class-count recursion",
    "halving recursion for A",
    "closed form for A_n",
    "quadrant relation",
)


@dataclass(frozen=True)
class Budget:
    max_square: int = 24
    max_depth: int = 12
    max_closed_n: int = 10**6

    @classmethod
    def parse(cls, text: str) -> "Budget":
        """``"max_square=8,max_depth=10"`` style overrides of the defaults."""
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, value = part.partition("=")
            key = key.strip().replace("-", "_")
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown budget key {key!r}")
            kw[key] = int(value)
        b = cls(**kw)
        if b.max_square < 1 or b.max_depth < 0 or b.max_closed_n < 1:
            raise ValueError(f"budget out of range: {b}")
        return b


@dataclass
class CheckReport:
    check_id: str
    anchor: str
    params: dict
    status: str = PASS
    witness: object = None
    elapsed: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


class _Skip(Exception):
    pass


class _Fail(Exception):
    def __init__(self, witness, detail=""):
        super().__init__(detail)
        self.witness = witness
        self.detail = detail


def _require(limit_ok: bool, why: str):
    if not limit_ok:
        raise _Skip(why)


def _fail(witness, detail=""):
    raise _Fail(witness, detail)


class Verifier:
    def __init__(self, budget: Budget = Budget(), census: Census | None = None):
        self.budget = budget
        self.census = census or Census(cap=budget.max_depth, max_dim=budget.max_square)
        self._bf: dict[int, dict[str, int]] = {}

    # brute-force class counts, memoised; abc(k) needs windows up to (k+1) x k
    def bf(self, k: int) -> dict[str, int]:
        if k not in self._bf:
            self._bf[k] = self.census.abc(k)
        return self._bf[k]

    def bf_lookup(self, name: str, k: int) -> int:
        if k in self._bf:
            return self._bf[k][name]
        m, n = rec.count_shape(name, k)
        return len(self.census.P_ij(m, n, int(name[1]), int(name[2])))

    @property
    def bf_max(self) -> int:
        """Largest argument whose twelve class counts fit the window budget."""
        return self.budget.max_square - 1

    # -- checks --------------------------------------------------------------

    def check_table(self):
        top = min(rec.SEED_MAX, self.bf_max)
        _require(top >= 1, "window budget too small")
        for n in range(1, top + 1):
            got = dict(self.bf(n), A=self.census.A(n))
            want = rec.INITIAL_VALUES[n]
            for name in rec.COUNT_NAMES + ("A",):
                if got[name] != want[name]:
                    _fail({"n": n, "count": name, "got": got[name], "want": want[name]})
        out = {"n": [1, top]}
        if top < rec.SEED_MAX:
            out["beyond_budget"] = [top + 1, rec.SEED_MAX]
        return out

    def check_plateau(self):
        out = {}
        for m, size, level in ((2, 76, 5), (4, 316, 6)):
            _require(m <= self.budget.max_square and level + 1 <= self.budget.max_depth, "budget")
            r = self.census.pattern_set_T(m, m)
            if (r.cardinality, r.plateau_level) != (size, level):
                _fail({"shape": [m, m], "got": [r.cardinality, r.plateau_level], "want": [size, level]})
            out[f"{m}x{m}"] = [size, level]
        # strict growth until the plateau, and the plateau level covers the window
        top = min(self.budget.max_square, 12)
        for m in range(1, top + 1):
            r = self.census.pattern_set_T(m, m)
            sizes = [s for _, s in r.history]
            if any(b <= a for a, b in zip(sizes[:-2], sizes[1:-1])) or sizes[-1] != sizes[-2]:
                _fail({"shape": [m, m], "history": r.history}, "chain not strictly increasing")
            if (1 << r.plateau_level) < m:
                _fail({"shape": [m, m], "level": r.plateau_level}, "plateau level too small")
            # stability predicted one level further
            k = r.plateau_level + 2
            if m <= 8 and k <= self.budget.max_depth:
                if self.census.level_patterns(k, m, m) != r.patterns:
                    _fail({"shape": [m, m], "level": k}, "set changed after the plateau")
        out["squares"] = [1, top]
        return out

    def _partition(self, whole: PatternSet, parts: list[PatternSet], shape, tag):
        for idx, p in enumerate(parts):
            if len(p) == 0:
                _fail({"shape": shape, "class": tag[idx]}, "empty class")
        for (ia, a), (ib, b) in combinations(enumerate(parts), 2):
            common = a & b
            if len(common):
                g = next(iter(common))
                _fail({"shape": shape, "classes": [tag[ia], tag[ib]], "pattern": g.to_rows()}, "classes overlap")
        union = parts[0]
        for p in parts[1:]:
            union = union | p
        if union != whole:
            _fail({"shape": shape, "union": len(union), "whole": len(whole)}, "union differs")

    def check_partition_T(self):
        top = min(8, self.budget.max_square)
        classes = [(1, 1), (1, 2), (2, 1), (2, 2)]
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                whole = self.census.pattern_set_T(m, n).patterns
                parts = [self.census.P_ij(m, n, i, j) for i, j in classes]
                self._partition(whole, parts, [m, n], classes)
        return {"dims": [1, top]}

    def check_partition_S(self):
        top = min(8, self.budget.max_square)
        _require(top >= 3, "window budget below 3")
        classes = [(1, 1), (1, 2), (2, 1), (2, 2)]
        for m in range(3, top + 1):
            for n in range(3, top + 1):
                whole = self.census.pattern_set_S(m, n).patterns
                parts = [self.census.P_ij(m, n, i, j, "S") for i, j in classes]
                self._partition(whole, parts, [m, n], classes)
        # the small cases are genuine exceptions: S has fewer patterns than T
        for n, want_s, want_t in ((1, 4, 16), (2, 68, 76)):
            s = self.census.pattern_set_S(n, n).cardinality
            t = self.census.pattern_set_T(n, n).cardinality
            if (s, t) != (want_s, want_t):
                _fail({"n": n, "S": s, "T": t}, "small-case exception not reproduced")
        return {"dims": [3, top], "exceptions": {"1": [4, 16], "2": [68, 76]}}

    def check_partition_Q(self):
        top = min(8, self.budget.max_square)
        _require(top >= 2, "window budget below 2")
        for m in range(2, top + 1):
            for n in range(2, top + 1):
                for i in (1, 2):
                    for j in (1, 2):
                        tags = [(i + k, j + l) for k in (0, 2) for l in (0, 2)]
                        parts = [self.census.Q_ij(m, n, a, b) for a, b in tags]
                        self._partition(self.census.P_ij(m, n, i, j), parts, [m, n, i, j], tags)
        return {"dims": [2, top]}

    def check_mu_phi(self):
        top = min(6, self.budget.max_square)
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                arr = self.census.pattern_set_T(m, n).patterns.array()
                mu_img = self.census.mu.apply_array(arr)
                phi_img = self.census.phi.apply_array(arr)
                for i in (1, 2):
                    for j in (1, 2):
                        a = mu_img[:, i - 1 : i - 1 + m, j - 1 : j - 1 + n].reshape(len(arr), -1)
                        b = phi_img[:, i - 1 : i - 1 + m, j - 1 : j - 1 + n].reshape(len(arr), -1)
                        na = len(np.unique(a, axis=0))
                        nb = len(np.unique(b, axis=0))
                        nab = len(np.unique(np.hstack([a, b]), axis=0))
                        if not na == nb == nab:
                            _fail({"shape": [m, n], "class": [i, j], "mu": na, "phi": nb, "pairs": nab})
        return {"dims": [1, top]}

    def check_T_equals_S(self):
        top = min(12, self.budget.max_square)
        _require(top >= 3, "window budget below 3")
        for n in range(3, top + 1):
            t = self.census.pattern_set_T(n, n).cardinality
            s = self.census.pattern_set_S(n, n).cardinality
            if t != s:
                _fail({"n": n, "T": t, "S": s})
        return {"n": [3, top]}

    def check_position(self):
        top = min(6, self.budget.max_square)
        _require(self.budget.max_depth >= 8, "depth budget")
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                for i in (1, 2):
                    for j in (1, 2):
                        lit = self.census.P_ij(m, n, i, j)
                        pos = self.census.P_ij_by_position(m, n, i, j)
                        if lit != pos:
                            _fail({"shape": [m, n], "class": [i, j], "image": len(lit), "position": len(pos)})
        return {"dims": [1, top]}

    def _identities(self, table, n_rec: int):
        reach = {}
        for label, n_min, chain in table:
            n = n_min
            reach[label] = 0
            while rec.chain_window(chain, n) <= self.budget.max_square:
                vals = rec.evaluate_chain(chain, n, self.bf_lookup)
                if len(set(vals)) != 1:
                    _fail({"item": label, "n": n, "values": vals, "source": "bruteforce"})
                reach[label] = n
                n += 1
            for n in range(n_min, n_rec + 1):
                vals = rec.evaluate_chain(chain, n, rec.count_recursive)
                if len(set(vals)) != 1:
                    _fail({"item": label, "n": n, "values": vals, "source": "recursive"})
        # reach[item] is the largest n checked by brute force, 0 if none fit the budget
        return {
            "bruteforce_reach": reach,
            "bruteforce_n_max": min(reach.values()),
            "recursive_n_max": n_rec,
        }

    def check_first_extensions(self):
        return self._identities(rec.FIRST_EXTENSIONS, 500)

    def check_mod4_extensions(self):
        return self._identities(rec.MOD4_EXTENSIONS, 500)

    def check_second_extensions(self):
        return self._identities(rec.SECOND_EXTENSIONS, 500)

    def check_plus4(self):
        bf_top = 0
        n = 1
        while 2 * n + 2 <= self.budget.max_square:
            for r in rec.plus4_identities(n, self.bf_lookup):
                if not r.holds:
                    _fail({"identity": r.name, "n": n, "values": r.values, "source": "bruteforce"})
            bf_top = n
            n += 1
        for n in range(1, 501):
            for r in rec.plus4_identities(n, rec.count_recursive):
                if not r.holds:
                    _fail({"identity": r.name, "n": n, "values": r.values, "source": "recursive"})
        return {"bruteforce_n_max": bf_top, "recursive_n_max": 500}

    def check_Q_extension(self):
        _require(self.budget.max_square >= 11, "window budget below 11")
        cases = [((5, 6), (11, 11))]
        for n in (1, 2):
            if 4 * n + 7 <= self.budget.max_square:
                cases.append(((4 * n + 1, 4 * n + 2), (4 * n + 7, 4 * n + 7)))
        done = []
        for small, big in cases:
            a = len(self.census.Q_ij(*small, 4, 4))
            b = len(self.census.Q_ij(*big, 1, 2))
            if a != b:
                _fail({"small": small, "big": big, "Q44": a, "Q12": b})
            done.append([list(small), list(big), a])
        return {"cases": done}

    def check_recursion_vs_bruteforce(self):
        top = min(16, self.bf_max)
        _require(top >= 1, "window budget too small")
        for n in range(1, top + 1):
            want, got = self.bf(n), rec.abc_recursive(n)
            if want != got:
                diff = {k: [got[k], want[k]] for k in want if got[k] != want[k]}
                _fail({"n": n, "diff": diff})
        return {"n": [1, top]}

    def check_derived(self):
        for n in range(1, 2001):
            for r in rec.derived_identities(n):
                if not r.holds:
                    _fail({"identity": r.name, "n": n, "values": r.values})
        return {"n": [1, 2000]}

    def check_A_three_ways(self):
        top = self.budget.max_square
        for n in range(1, top + 1):
            b, c, r = self.census.A(n), rec.A_closed(n), rec.A_recursive(n)
            if not b == c == r:
                _fail({"n": n, "bruteforce": b, "closed": c, "recursive": r})
        return {"n": [1, top]}

    def check_closed_vs_recursive(self):
        top = self.budget.max_closed_n
        table = rec.A_recursive_table(top)
        for n in range(1, top + 1):
            if table[n] != rec.A_closed(n):
                _fail({"n": n, "recursive": table[n], "closed": rec.A_closed(n)})
        return {"n": [1, top]}

    def check_quadrant(self):
        top = min(6, self.budget.max_depth - 1)
        _require(top >= 1, "depth budget")
        for n in range(1, top + 1):
            r = quadrant_equivalence(n, cap=self.budget.max_depth)
            if not r.equal:
                _fail({"n": n, "mismatch": r.mismatch})
        return {"n": [1, top]}

    CHECKS: tuple[tuple[str, str, str], ...] = (
        ("initial-values", ANCHORS[0], "check_table"),
        ("plateau", ANCHORS[1], "check_plateau"),
        ("partition-P-T", ANCHORS[2], "check_partition_T"),
        ("partition-P-S", ANCHORS[3], "check_partition_S"),
        ("partition-Q", ANCHORS[4], "check_partition_Q"),
        ("mu-phi", ANCHORS[5], "check_mu_phi"),
        ("T-equals-S", ANCHORS[6], "check_T_equals_S"),
        ("position-classes", ANCHORS[7], "check_position"),
        ("first-extensions", ANCHORS[8], "check_first_extensions"),
        ("mod4-extensions", ANCHORS[9], "check_mod4_extensions"),
        ("second-extensions", ANCHORS[10], "check_second_extensions"),
        ("plus4", ANCHORS[11], "check_plus4"),
        ("Q-extension", ANCHORS[12], "check_Q_extension"),
        ("recursion-vs-bruteforce", ANCHORS[13], "check_recursion_vs_bruteforce"),
        ("derived-identities", ANCHORS[14], "check_derived"),
        ("A-three-ways", ANCHORS[15], "check_A_three_ways"),
        ("closed-vs-recursive", ANCHORS[15], "check_closed_vs_recursive"),
        ("quadrant", ANCHORS[16], "check_quadrant"),
    )

    def run(self, only: Callable[[str], bool] | None = None) -> list[CheckReport]:
        reports = []
        for check_id, anchor, method in self.CHECKS:
            if only is not None and not only(check_id):
                continue
            report = CheckReport(check_id, anchor, {})
            t0 = time.perf_counter()
            try:
                report.params = getattr(self, method)() or {}
            except _Skip as exc:
                report.status, report.detail = SKIPPED, str(exc)
            except _Fail as exc:
                report.status, report.witness, report.detail = FAIL, exc.witness, exc.detail
            except (BudgetExceeded, DepthCapExceeded, PlateauNotFound) as exc:
                report.status, report.detail = SKIPPED, f"resource limit: {exc}"
            report.elapsed = time.perf_counter() - t0
            reports.append(report)
        return reports


def verify_all(budget: Budget | None = None, census: Census | None = None, only=None) -> list[CheckReport]:
    return Verifier(budget or Budget(), census).run(only)


def format_table(reports: list[CheckReport]) -> str:
    width = max(len(r.check_id) for r in reports) if reports else 10
    lines = [f"{'check':<{width}}  {'status':<7}  {'time':>7}  anchor / witness"]
    for r in reports:
        tail = r.anchor
        if r.status == FAIL:
            tail += f"  witness={json.dumps(r.witness, default=str)}"
        elif r.status == SKIPPED:
            tail += f"  ({r.detail})"
        lines.append(f"{r.check_id:<{width}}  {r.status:<7}  {r.elapsed:6.2f}s  {tail}")
    n_fail = sum(r.status == FAIL for r in reports)
    n_skip = sum(r.status == SKIPPED for r in reports)
    lines.append(f"{len(reports)} checks, {n_fail} failed, {n_skip} skipped")
    return "\n".join(lines) + "\n"


def reports_to_json(reports: list[CheckReport]) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2, default=str)
