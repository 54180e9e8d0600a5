import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paperfold.errors import AlphabetMismatch, DepthCapExceeded
from paperfold.substitution import (
    A16,
    B4,
    DEPTH_CAP_ENV,
    LETTERS,
    MU,
    PHI,
    Grid,
    S,
    T,
    cell_at,
    depth_cap,
    mu_apply,
    phi_apply,
    supertile,
)

# Block images written out independently of the package tables, as nested lists.
MU_BLOCKS = {
    "A": ["AF", "GC"], "B": ["AF", "HD"], "C": ["BE", "GC"], "D": ["BE", "HD"],
    "E": ["AN", "GK"], "F": ["AN", "HL"], "G": ["BM", "GK"], "H": ["BM", "HL"],
    "I": ["IF", "OC"], "J": ["IF", "PD"], "K": ["JE", "OC"], "L": ["JE", "PD"],
    "M": ["IN", "OK"], "N": ["IN", "PL"], "O": ["JM", "OK"], "P": ["JM", "PL"],
}


def naive_mu(rows):
    """Pure-Python block substitution on a list of strings."""
    out = []
    for row in rows:
        top = "".join(MU_BLOCKS[ch][0] for ch in row)
        bottom = "".join(MU_BLOCKS[ch][1] for ch in row)
        out += [top, bottom]
    return out


def naive_supertile(x, n):
    rows = [x]
    for _ in range(n):
        rows = naive_mu(rows)
    return rows


def block_recursion_T(n):
    """Build T_n from the quadrant recursion instead of iterating on N."""
    if n == 0:
        return ["N"]
    prev = block_recursion_T(n - 1)
    I_, P_, L_ = (naive_supertile(x, n - 1) for x in "IPL")
    return [a + b for a, b in zip(I_, prev)] + [a + b for a, b in zip(P_, L_)]


def test_mu_single_letters():
    assert mu_apply(Grid.single("N")).to_rows() == ["IN", "PL"]
    assert mu_apply(Grid.single("A")).to_rows() == ["AF", "GC"]
    assert mu_apply(mu_apply(Grid.single("N"))).window(1, 1, 2, 2).to_rows() == ["IF", "OC"]


def test_mu_table_matches_independent_copy():
    for x in LETTERS[A16]:
        assert MU.image(x).to_rows() == MU_BLOCKS[x]


def test_phi_single_letters():
    assert phi_apply(Grid.single("N")).to_rows() == ["23", "33"]
    assert phi_apply(Grid.single("A")).to_rows() == ["01", "00"]


def test_phi_of_T1_is_S2():
    assert phi_apply(T(1)).to_rows() == ["2123", "2033", "3230", "3331"]


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        mu_apply(S(1))
    with pytest.raises(AlphabetMismatch):
        phi_apply(S(1))
    with pytest.raises(AlphabetMismatch):
        Grid.from_rows(["0Q"], B4)


def test_S_examples():
    assert S(1).to_rows() == ["23", "33"]
    assert S(2).to_rows() == ["2123", "2033", "3230", "3331"]
    assert S(3).to_rows() == [
        "21032123",
        "20132033",
        "32103230",
        "22003331",
        "21232103",
        "31223102",
        "32303210",
        "33313311",
    ]
    with pytest.raises(ValueError):
        S(0)


def test_T_small_levels():
    assert T(0).to_rows() == ["N"]
    assert T(1).to_rows() == ["IN", "PL"]
    assert supertile("N", 0) == Grid.single("N")


@pytest.mark.parametrize("n", range(0, 7))
def test_T_matches_block_recursion(n):
    assert T(n).to_rows() == block_recursion_T(n)


@pytest.mark.parametrize("n", range(0, 8))
def test_quadrants_of_next_level(n):
    side = 1 << n
    nxt = T(n + 1)
    assert nxt.window(1, 1, side, side) == supertile("I", n)
    assert nxt.window(1, side + 1, side, side) == T(n)
    assert nxt.window(side + 1, 1, side, side) == supertile("P", n)
    assert nxt.window(side + 1, side + 1, side, side) == supertile("L", n)


@pytest.mark.parametrize("x", list(LETTERS[A16]))
def test_supertile_dimensions_and_oracle(x):
    for n in range(0, 6):
        g = supertile(x, n)
        assert g.shape == (1 << n, 1 << n)
        assert g.to_rows() == naive_supertile(x, n)


def test_depth_cap(monkeypatch):
    with pytest.raises(DepthCapExceeded):
        supertile("N", 13)
    assert supertile("N", 3, cap=3).rows == 8
    with pytest.raises(DepthCapExceeded):
        supertile("N", 4, cap=3)
    monkeypatch.setenv(DEPTH_CAP_ENV, "5")
    assert depth_cap() == 5
    with pytest.raises(DepthCapExceeded):
        T(6)


def test_position_class_letters():
    classes = {
        (0, 0): set("ABIJ"),
        (0, 1): set("EFMN"),
        (1, 0): set("GHOP"),
        (1, 1): set("CDKL"),
    }
    for x in LETTERS[A16]:
        block = MU.image(x).to_rows()
        for (i, j), allowed in classes.items():
            assert block[i][j] in allowed
    # each letter occurs in exactly one position class
    union = set().union(*classes.values())
    assert union == set(LETTERS[A16]) and sum(map(len, classes.values())) == 16


def test_mu_phi_letter_correspondence():
    pairs = {
        (0, 0): "ABIJ",
        (0, 1): "EFMN",
        (1, 0): "GHOP",
        (1, 1): "CDKL",
    }
    checked = 0
    for x in LETTERS[A16]:
        m = MU.image(x).to_rows()
        p = PHI.image(x).to_rows()
        for (i, j), letters in pairs.items():
            assert letters.index(m[i][j]) == int(p[i][j])
            checked += 1
    assert checked == 64


def test_cell_at_examples():
    assert cell_at("N", 0, 1, 1) == "N"
    assert cell_at("N", 1, 2, 1) == "P"
    with pytest.raises(IndexError):
        cell_at("N", 2, 5, 1)


@pytest.mark.parametrize("x", list(LETTERS[A16]))
def test_cell_at_exhaustive_small(x):
    for n in range(0, 5):
        g = supertile(x, n)
        side = 1 << n
        for r in range(1, side + 1):
            for c in range(1, side + 1):
                assert cell_at(x, n, r, c) == g[r, c]


def test_cell_at_sampled_level_12():
    rng = random.Random(12)
    g = T(12)
    for _ in range(1000):
        r, c = rng.randint(1, 4096), rng.randint(1, 4096)
        assert cell_at("N", 12, r, c) == g[r, c]


def test_grid_indexing_and_windows():
    g = S(2)
    assert g[1, 1] == "2" and g[4, 4] == "1"
    assert g.window(2, 2, 2, 3).to_rows() == ["033", "230"]
    with pytest.raises(IndexError):
        g.window(3, 3, 3, 1)
    with pytest.raises(IndexError):
        g[0, 1]


def test_grid_is_immutable():
    g = T(2)
    with pytest.raises(AttributeError):
        g.alphabet = B4
    with pytest.raises(ValueError):
        g.cells[0, 0] = 3


def test_grid_json_example():
    assert S(1).to_json() == '{"alphabet":"B4","rows":2,"cols":2,"data":"2333"}'
    assert Grid.from_json(T(1).to_json()) == T(1)


@st.composite
def grids(draw):
    alphabet = draw(st.sampled_from([A16, B4]))
    rows = draw(st.integers(1, 6))
    cols = draw(st.integers(1, 6))
    k = len(LETTERS[alphabet])
    cells = draw(st.lists(st.integers(0, k - 1), min_size=rows * cols, max_size=rows * cols))
    return Grid(alphabet, np.array(cells).reshape(rows, cols))


@given(grids())
def test_grid_json_roundtrip(g):
    back = Grid.from_json(g.to_json())
    assert back == g and back.key() == g.key()


@given(grids(), grids())
def test_key_equality_iff_grid_equality(g, h):
    assert (g.key() == h.key()) == (g == h)


@settings(max_examples=50)
@given(st.sampled_from(list(LETTERS[A16])), st.integers(0, 4))
def test_mu_doubles_dimensions(x, n):
    g = supertile(x, n)
    assert mu_apply(g).shape == (2 * g.rows, 2 * g.cols)
    assert phi_apply(g).shape == (2 * g.rows, 2 * g.cols)


def test_replace_builds_altered_rule():
    bad = MU.replace("N", "INPK")
    assert bad.image("N").to_rows() == ["IN", "PK"]
    assert MU.image("N").to_rows() == ["IN", "PL"]
    with pytest.raises(ValueError):
        MU.replace("N", "IN")
