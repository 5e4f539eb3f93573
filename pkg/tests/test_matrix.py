import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from staircases.matrix import (
    Matrix, MatrixFormatError, Staircase, complement, parse_matrix, random_matrix,
    rotate180, serialize_matrix, staircase_from_dict, transpose, turns, validate_staircase,
)
from staircases.constructions import build_P
from conftest import DISPLAY_P_6_8


@st.composite
def matrices(draw, max_n=6, max_N=6):
    n = draw(st.integers(1, max_n))
    N = draw(st.integers(1, max_N))
    bits = draw(st.lists(st.integers(0, 1), min_size=n * N, max_size=n * N))
    return Matrix.from_array(np.array(bits, dtype=np.uint8).reshape(n, N))


def test_parse_basic():
    M = parse_matrix("01\n10")
    assert M.to_lists() == [[0, 1], [1, 0]]
    assert parse_matrix("000").to_lists() == [[0, 0, 0]]


def test_parse_display_equals_builder():
    assert parse_matrix("\n".join(DISPLAY_P_6_8) + "\n") == build_P(6, 8)


@pytest.mark.parametrize("text", ["", "\n", "01\n1", "012", "01\n1a"])
def test_parse_errors(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_serialize():
    M = Matrix.from_rows([[0, 1], [1, 0]])
    assert serialize_matrix(M, "plain") == "01\n10"
    assert json.loads(serialize_matrix(Matrix.from_rows([[0]]), "json")) == {"n": 1, "N": 1, "rows": ["0"]}
    assert serialize_matrix(build_P(6, 8)).splitlines() == DISPLAY_P_6_8


@given(matrices())
def test_roundtrip(M):
    assert parse_matrix(serialize_matrix(M, "plain")) == M
    assert parse_matrix(serialize_matrix(M, "json")) == M


def test_json_shape_mismatch():
    with pytest.raises(MatrixFormatError):
        parse_matrix('{"n": 2, "N": 2, "rows": ["01"]}')


def test_wide_rows_use_bigints():
    M = Matrix.from_rows(["1" + "0" * 98 + "1"])
    assert M[1, 1] == 1 and M[1, 100] == 1 and M[1, 50] == 0
    assert M.array.sum() == 2
    assert Matrix(M.n, M.N, M.rows).array.tolist() == M.array.tolist()


def test_equality_is_bitwise():
    a = Matrix.from_rows(["0110"])
    b = Matrix.from_array(np.array([[0, 1, 1, 0]]))
    assert a == b and hash(a) == hash(b)


def test_transforms_examples():
    M = Matrix.from_rows([[0, 1], [0, 0]])
    assert complement(Matrix.from_rows([[0, 1], [1, 0]])).to_lists() == [[1, 0], [0, 1]]
    assert complement(Matrix.zeros(3, 4)) == Matrix.ones(3, 4)
    assert transpose(M).to_lists() == [[0, 0], [1, 0]]
    assert rotate180(M).to_lists() == [[0, 0], [1, 0]]


@given(matrices())
def test_transforms_are_involutions(M):
    assert complement(complement(M)) == M
    assert transpose(transpose(M)) == M
    assert rotate180(rotate180(M)) == M
    assert transpose(M).shape == (M.N, M.n)


def test_complement_involution_on_random():
    for seed in range(100):
        M = random_matrix(4, 7, seed)
        assert complement(complement(M)) == M


def test_random_matrix():
    assert random_matrix(3, 3, seed=7, p=0) == Matrix.zeros(3, 3)
    assert random_matrix(3, 3, seed=7, p=1) == Matrix.ones(3, 3)
    assert random_matrix(5, 6, 11, 0.3) == random_matrix(5, 6, 11, 0.3)
    with pytest.raises(ValueError):
        random_matrix(0, 3, 1)
    with pytest.raises(ValueError):
        random_matrix(2, 3, 1, p=1.5)


def test_validate_examples():
    M = Matrix.from_rows([[0, 0], [1, 0]])
    assert validate_staircase(M, Staircase(0, ((1, 1), (1, 2), (2, 2)))).valid
    bad = validate_staircase(M, Staircase(0, ((1, 1), (2, 2))))
    assert not bad and "neither right nor down" in bad.reason
    bad = validate_staircase(M, Staircase(0, ((1, 1), (2, 1))))
    assert not bad and "holds 1" in bad.reason
    assert not validate_staircase(M, Staircase(0, ((1, 1), (3, 1))))
    assert not validate_staircase(M, Staircase(0, ((1, 2), (1, 1))))


def test_turns_examples():
    assert turns(Staircase(1, ((2, 2),))) == 0
    assert turns(Staircase(1, ((1, 1), (1, 3), (4, 3)))) == 1
    assert turns(Staircase(1, ((1, 1), (1, 2), (2, 2), (2, 4)))) == 2


@st.composite
def walks(draw):
    """A random right/down walk inside a random matrix, with the walk's cells set to v."""
    n = draw(st.integers(1, 7))
    N = draw(st.integers(1, 7))
    v = draw(st.integers(0, 1))
    a = np.array(draw(st.lists(st.integers(0, 1), min_size=n * N, max_size=n * N)),
                 dtype=np.uint8).reshape(n, N)
    i, j = draw(st.integers(1, n)), draw(st.integers(1, N))
    cells = [(i, j)]
    for _ in range(draw(st.integers(0, 12))):
        options = []
        if j < N:
            options.append((i, draw(st.integers(j + 1, N))))
        if i < n:
            options.append((draw(st.integers(i + 1, n)), j))
        if not options:
            break
        i, j = draw(st.sampled_from(options))
        cells.append((i, j))
    for ci, cj in cells:
        a[ci - 1, cj - 1] = v
    return Matrix.from_array(a), Staircase(v, tuple(cells))


@given(walks(), st.data())
def test_validate_property(walk, data):
    M, S = walk
    assert validate_staircase(M, S)
    if len(S) >= 2:
        assert S.turns <= len(S) - 2
    # flip the value of one visited cell
    k = data.draw(st.integers(0, len(S) - 1))
    i, j = S.cells[k]
    a = M.array.copy()
    a[i - 1, j - 1] ^= 1
    assert not validate_staircase(Matrix.from_array(a), S)
    # swap two consecutive cells: order is then no longer monotone
    if len(S) >= 2:
        cells = list(S.cells)
        cells[0], cells[1] = cells[1], cells[0]
        assert not validate_staircase(M, Staircase(S.value, tuple(cells)))


def test_staircase_json():
    S = Staircase(1, ((1, 1), (1, 3), (4, 3)))
    d = S.to_dict()
    assert d == {"value": 1, "cells": [[1, 1], [1, 3], [4, 3]], "turns": 1}
    assert staircase_from_dict(json.loads(json.dumps(d))) == S
