import numpy as np
import pytest
from hypothesis import given, strategies as st

from staircases.constructions import build_P, half_up
from staircases.dp import st_profile
from staircases.matrix import Matrix, Position, complement, random_matrices, transpose, validate_staircase
from staircases.witness import (
    check_observation10, corner_staircase, observation10_sides, sigma_witness, theorem2_bound,
    theorem2_witness,
)
from test_matrix import matrices


def all_square(n):
    for bits in range(1 << (n * n)):
        a = np.array([(bits >> k) & 1 for k in range(n * n)], dtype=np.uint8).reshape(n, n)
        yield Matrix.from_array(a)


# --- sigma witness -------------------------------------------------------------

def test_sigma_witness_on_P(P68):
    w = sigma_witness(P68)
    assert w.majority_staircase.value == 1  # three 0's and three 1's: tie goes to 1
    assert w.anchor == Position(6, 1)
    assert len(w.majority_staircase) == 7 and len(w.minority_staircase) == 3
    assert w.total >= 10


def test_sigma_witness_single_row():
    for s in ["0", "1", "0110", "11111", "00000"]:
        M = Matrix.from_rows([s])
        assert sigma_witness(M).total == len(s)


def test_sigma_witness_all_ones():
    w = sigma_witness(Matrix.ones(4, 7))
    assert len(w.majority_staircase) == 10 and w.minority_staircase is None


@given(matrices(8, 8))
def test_sigma_witness_sound(M):
    w = sigma_witness(M)
    n, N = min(M.n, M.N), max(M.n, M.N)
    assert validate_staircase(M, w.majority_staircase)
    if w.minority_staircase is not None:
        assert validate_staircase(M, w.minority_staircase)
        assert w.minority_staircase.value != w.majority_staircase.value
    assert w.total >= half_up(n) + N - 1
    assert st_profile(M).sigma >= w.total


# --- corner staircases ----------------------------------------------------------

def test_corner_hv_at_top_right():
    M = Matrix.from_rows(["01011", "00001", "11110", "00001"])
    S = corner_staircase(M, (1, 5), "⌐")
    assert S.cells == ((1, 2), (1, 4), (1, 5), (2, 5), (4, 5))
    assert S.turns == 1


def test_corner_all_zero():
    M = Matrix.zeros(5, 7)
    for i, j in [(1, 1), (3, 4), (5, 7)]:
        assert len(corner_staircase(M, (i, j), "⌐")) == j + (5 - i)


def test_corner_L_at_bottom_left():
    M = Matrix.from_rows(["100", "010", "101"])
    S = corner_staircase(M, (3, 1), "L")
    assert S.cells == ((1, 1), (3, 1), (3, 3))


@given(matrices(6, 6), st.data())
def test_corner_valid(M, data):
    i, j = data.draw(st.integers(1, M.n)), data.draw(st.integers(1, M.N))
    for o in ("⌐", "L"):
        S = corner_staircase(M, (i, j), o)
        assert validate_staircase(M, S) and S.turns <= 1 and (i, j) in S.cells


# --- the 5n/6 - 7/12 witness ------------------------------------------------------

def test_bound_values():
    assert [theorem2_bound(n) for n in range(1, 8)] == [1, 2, 2, 3, 4, 5, 6]


def test_obs9_instance():
    M = Matrix.from_rows(["001", "101", "100"])
    S, t = theorem2_witness(M)
    assert (t.a1, t.a2, t.a3, t.a4) == ((1, 3), (1, 2), (3, 3), (3, 2))
    assert t.case_taken == "obs9"
    assert S.cells == ((1, 1), (1, 2), (2, 2), (3, 2), (3, 3))
    assert validate_staircase(M, S) and len(S) == 5 <= st_profile(M).st
    assert len(t.staircases["obs9-1"]) + len(t.staircases["obs9-2"]) >= 2 * 3


def test_all_ones_trivial_row():
    for n in (1, 2, 5, 9):
        S, t = theorem2_witness(Matrix.ones(n, n))
        assert t.case_taken == "trivial-row" and len(S) == 2 * n - 1


def test_non_square_rejected():
    with pytest.raises(ValueError):
        theorem2_witness(Matrix.zeros(3, 4))


def test_P66_trace():
    M = build_P(6, 6)
    S, t = theorem2_witness(M)
    assert (t.a2, t.a3, t.a4) == ((1, 3), (4, 6), (4, 3))
    assert [t.length(k) for k in ("S1", "S2", "S3", "S4")] == [5, 3, 3, 5]
    assert (t.x1, t.y0, t.z0, t.w1) == (0, 0, 0, 0)
    assert t.case_taken == "case1"
    assert check_observation10(M, t) and check_observation10(M, t, primed=True)


def test_n2_counterexample_is_st_one():
    # the bound ceil((10n-7)/12) is 2 at n = 2, but this matrix has no staircase of length 2
    for rows in (["01", "10"], ["10", "01"]):
        M = Matrix.from_rows(rows)
        assert st_profile(M).st == 1
        S, t = theorem2_witness(M)
        assert t.case_taken == "case1" and len(S) == 1 < theorem2_bound(2)


@pytest.mark.parametrize("n", [1, 3, 4])
def test_exhaustive_small(n):
    for M in all_square(n):
        S, t = theorem2_witness(M)
        assert validate_staircase(M, S), (M, t.case_taken)
        assert S.turns <= 3 and len(S) >= theorem2_bound(n)
        assert len(S) <= st_profile(M).st


def test_exhaustive_n2_fails_exactly_on_antidiagonals():
    failing = []
    for M in all_square(2):
        S, _ = theorem2_witness(M)
        assert validate_staircase(M, S)
        if len(S) < theorem2_bound(2):
            failing.append(M.row_strings())
    assert sorted(failing) == [["01", "10"], ["10", "01"]]


def test_case_branches_invariants():
    seen = set()
    for n in (5, 6, 8, 11):
        for M in random_matrices(n, n, 1500, seed=n):
            S, t = theorem2_witness(M)
            seen.add(t.case_taken)
            W = np.array(transpose(M).array if t.transposed else M.array)
            if t.complemented:
                W = 1 - W
            assert W[0, n - 1] == 1
            if t.case_taken == "obs9":
                assert W[t.a4.i - 1, t.a4.j - 1] == 0
                assert len(t.staircases["obs9-1"]) + len(t.staircases["obs9-2"]) >= 2 * n
            if t.case_taken.startswith("case2"):
                assert t.length("S1") + t.length("S1'") < 2 * n - 2
                assert t.s1_h + t.sa_h < n
                c = t.a5.j
                assert W[0, c - 1] == 0 and W[n - 1, c - 1] == 1 - t.a
                assert t.weighted_sum() >= 10 * n - 7
                assert (t.case_taken == "case2-sub1") == (t.a == 1)
            if t.reached_main_branch:
                assert (t.x1, t.y0, t.z0, t.w1) == observation10_sides(M, t)
                assert (t.xa_p, t.ya_p, t.za_p, t.wa_p) == observation10_sides(M, t, primed=True)
                assert check_observation10(M, t) and check_observation10(M, t, primed=True)
            assert len(S) >= theorem2_bound(n) and S.turns <= 3
    assert {"obs9", "obs9-primed", "case1", "case2-sub1", "case2-sub2"} <= seen


def test_transposed_branch_is_exercised():
    hits = 0
    for M in random_matrices(7, 7, 3000, seed=3):
        S, t = theorem2_witness(M)
        if t.transposed:
            hits += 1
            assert t.case_taken.startswith("case2")
            assert validate_staircase(M, S)
    assert hits > 0


def test_normalization_round_trip():
    for M in random_matrices(6, 6, 300, seed=9):
        S, t = theorem2_witness(M)
        S2, t2 = theorem2_witness(complement(M))
        assert validate_staircase(complement(M), S2)
        assert validate_staircase(M, S)
        assert t2.complemented != t.complemented or t.transposed != t2.transposed or len(S) == len(S2)


def test_observation10_requires_main_branch():
    M = Matrix.ones(3, 3)
    _, t = theorem2_witness(M)
    with pytest.raises(ValueError):
        check_observation10(M, t)
