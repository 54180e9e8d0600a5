import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paperfold import recursion as rec
from paperfold.recursion import (
    COUNT_NAMES,
    RULES,
    INITIAL_VALUES,
    A_closed,
    A_recursive,
    A_recursive_table,
    CensusTable,
    RecursionEngine,
    abc_recursive,
    alpha,
    census_table,
    count_recursive,
    derived_identities,
    seed_table,
)


def test_rule_table_shape():
    # four residues for each of the twelve counts
    assert set(RULES) == {(name, r) for name in COUNT_NAMES for r in range(4)}
    assert RULES[("a11", 0)] == (("a11", 2, 0), ("a12", 2, 0), ("a21", 2, 0), ("a22", 2, 0))
    assert RULES[("a12", 1)] == (("a22", 4, 0),)


def test_recursion_examples():
    assert count_recursive("a12", 8) == 4 * INITIAL_VALUES[4]["a12"] == 320
    col = abc_recursive(7)
    assert (col["a11"], col["a12"], col["a21"], col["a22"]) == (256, 188, 316, 240)


@pytest.mark.parametrize("n", range(1, 11))
def test_recursion_reproduces_initial_values(n):
    assert abc_recursive(n) == {k: INITIAL_VALUES[n][k] for k in COUNT_NAMES}


@pytest.mark.parametrize("n", range(5, 11))
def test_short_seed_rebuilds_the_rest(n):
    # the rules alone, grounded on n <= 4, give back the later initial values
    eng = RecursionEngine(seeds=INITIAL_VALUES, seed_max=4)
    assert eng.abc(n) == {k: INITIAL_VALUES[n][k] for k in COUNT_NAMES}


def test_A_examples():
    assert A_recursive(6) == 4 * 184 + 12 == 748
    assert A_recursive(7) == 2 * 184 + 2 * 316 == 1000
    assert A_recursive(9) == 2 * 316 + 2 * 520 == 1672
    assert A_closed(1) == 4 and A_closed(2) == 68
    assert A_closed(3) == 184
    assert A_closed(5) == 520
    assert A_closed(10) == 2092
    assert [A_closed(n) for n in range(1, 11)] == [INITIAL_VALUES[n]["A"] for n in range(1, 11)]


def test_A_rejects_nonpositive():
    for f in (A_closed, A_recursive, abc_recursive):
        with pytest.raises(ValueError):
            f(0)


def test_A_is_class_sum():
    for n in range(3, 600):
        col = abc_recursive(n)
        assert col["a11"] + col["a12"] + col["a21"] + col["a22"] == A_closed(n), n


def test_A_strictly_increasing():
    table = A_recursive_table(5000)
    assert all(x < y for x, y in zip(table[1:], table[2:]))


def test_table_matches_closed_form():
    table = A_recursive_table(20000)
    assert all(table[n] == A_closed(n) for n in range(1, 20001))
    assert table[12345] == A_recursive(12345)


@pytest.mark.parametrize("k", range(1, 61))
def test_alpha_at_powers_of_two(k):
    assert alpha(2**k + 1) == k
    assert alpha(2**k) == k - 1
    if k > 1:
        assert alpha(2**k - 1) == k - 1


@given(st.integers(2, 2**80))
def test_alpha_bounds(n):
    a = alpha(n)
    assert 2**a <= n - 1 < 2 ** (a + 1)


def test_alpha_rejects_small():
    with pytest.raises(ValueError):
        alpha(1)


@given(st.integers(3, 10**8))
def test_closed_form_matches_power_loop(n):
    # 2**alpha found by doubling, as the largest power of two not above n - 1
    p = 1
    while 2 * p <= n - 1:
        p *= 2
    assert A_closed(n) == 12 * n * n + 24 * n * p - 16 * p * p - 4


def test_overflow_guard():
    # 12 n^2 alone exceeds 2**63 - 1 near n = 8.8e8
    big = math.isqrt((2**63) // 12) + 1
    with pytest.raises(OverflowError):
        A_closed(big)
    with pytest.raises(OverflowError):
        A_recursive(big)
    assert A_closed(10**8) < 2**63


@pytest.mark.parametrize("n", [1, 2, 3, 5, 17, 500, 2000])
def test_derived_identities_examples(n):
    results = derived_identities(n)
    assert all(r.holds for r in results), [r for r in results if not r.holds]
    assert len(results) == (6 if n >= 3 else 4)


def test_derived_identity_values():
    first = derived_identities(5)[0]
    assert first.values == (524, 524, 524)
    plus = derived_identities(3)[2]
    assert plus.values == (188, 188)


def test_derived_identities_range():
    for n in range(1, 2001):
        assert all(r.holds for r in derived_identities(n)), n


@pytest.mark.parametrize("table", ["FIRST_EXTENSIONS", "MOD4_EXTENSIONS", "SECOND_EXTENSIONS"])
def test_extension_identities_on_recursive_values(table):
    for label, n_min, chain in getattr(rec, table):
        for n in range(n_min, 501):
            vals = rec.evaluate_chain(chain, n, count_recursive)
            assert len(set(vals)) == 1, (table, label, n, vals)


def test_plus4_on_recursive_values():
    for n in range(1, 501):
        assert all(r.holds for r in rec.plus4_identities(n, count_recursive)), n


def test_chain_window():
    # b counts are one column wider, c counts one row taller
    assert rec.count_shape("b12", 4) == (4, 5)
    assert rec.count_shape("c21", 4) == (5, 4)
    assert rec.chain_window((("a12", 2, 0), ("b12", 2, 0), ("b22", 2, -1)), 3) == 7


def test_seed_table_csv():
    text = seed_table().to_csv()
    lines = text.splitlines()
    assert lines[0] == "n,a11,a12,a21,a22,b11,b12,b21,b22,c11,c12,c21,c22,A"
    assert lines[1] == "1,4,4,4,4,8,8,8,16,8,8,12,8,4"
    assert lines[10] == "10,520,524,524,524,644,524,648,524,524,524,612,616,2092"
    assert len(lines) == 11
    back = CensusTable.from_csv(text)
    assert back.to_csv() == text
    assert back.row(7).A == 1000
    with pytest.raises(KeyError):
        back.row(11)


def test_census_table_mixes_sources():
    table = census_table(14, brute_max=3)
    assert [r.source for r in table.records] == ["bruteforce"] * 3 + ["seed"] * 7 + ["recursive"] * 4
    assert table.to_csv().splitlines()[1:11] == seed_table().to_csv().splitlines()[1:]
    assert table.row(14).A == A_closed(14)


def test_csv_header_check():
    with pytest.raises(ValueError):
        CensusTable.from_csv("n,x\n1,2\n")
