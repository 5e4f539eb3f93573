"""0/1 matrices, positions and staircases.

Rows are stored bit-packed as Python ints with column 1 in the most
significant bit, so comparing row tuples compares matrices in row-major
lexicographic order. All objects are immutable.

Indices are 1-based everywhere in the public API: ``(i, j)`` is row ``i``
(top to bottom) and column ``j`` (left to right).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

import numpy as np

RNG_NAME = "numpy.PCG64"


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed."""


class Position(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class Matrix:
    n: int
    N: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise ValueError(f"invalid dimensions {self.n}x{self.N}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.N
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {self.N} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]] | Sequence[str]) -> "Matrix":
        """Build from nested 0/1 sequences or from '0'/'1' strings."""
        if not rows:
            raise ValueError("matrix needs at least one row")
        strs = [r if isinstance(r, str) else "".join(str(int(c)) for c in r) for r in rows]
        N = len(strs[0])
        for s in strs:
            if len(s) != N or set(s) - {"0", "1"}:
                raise ValueError(f"bad row {s!r}")
        return cls(len(strs), N, tuple(int(s, 2) for s in strs))

    @classmethod
    def from_array(cls, a) -> "Matrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        if a.dtype != np.uint8:
            if a.size and not np.isin(a, (0, 1)).all():
                raise ValueError("cells must be 0 or 1")
            a = a.astype(np.uint8)
        elif a.size and a.max() > 1:
            raise ValueError("cells must be 0 or 1")
        n, N = a.shape
        pad = -N % 8
        packed = np.packbits(a, axis=1)
        rows = tuple(int.from_bytes(b.tobytes(), "big") >> pad for b in packed)
        M = cls(n, N, rows)
        cached = np.array(a, dtype=np.uint8)
        cached.setflags(write=False)
        M.__dict__["array"] = cached
        return M

    @classmethod
    def zeros(cls, n: int, N: int) -> "Matrix":
        return cls(n, N, (0,) * n)

    @classmethod
    def ones(cls, n: int, N: int) -> "Matrix":
        return cls(n, N, ((1 << N) - 1,) * n)

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only ``uint8`` view of the cells, shape ``(n, N)``, 0-based."""
        nbytes, pad = -(-self.N // 8), -self.N % 8
        buf = b"".join((r << pad).to_bytes(nbytes, "big") for r in self.rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes)
        a = np.unpackbits(packed, axis=1)[:, : self.N].copy()
        a.setflags(write=False)
        return a

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.N)

    def __getitem__(self, pos: tuple[int, int]) -> int:
        i, j = pos
        if not (1 <= i <= self.n and 1 <= j <= self.N):
            raise IndexError(f"position {pos} outside {self.n}x{self.N}")
        return (self.rows[i - 1] >> (self.N - j)) & 1

    def row_strings(self) -> list[str]:
        return [format(r, f"0{self.N}b") for r in self.rows]

    def to_lists(self) -> list[list[int]]:
        return self.array.tolist()

    def count(self, v: int) -> int:
        ones = sum(bin(r).count("1") for r in self.rows)
        return ones if v == 1 else self.n * self.N - ones

    def sort_key(self) -> tuple[int, ...]:
        """Row-major lexicographic key (valid between equal-shaped matrices)."""
        return self.rows

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


# --- symmetry transforms ---------------------------------------------------

def complement(M: Matrix) -> Matrix:
    full = (1 << M.N) - 1
    return Matrix(M.n, M.N, tuple(r ^ full for r in M.rows))


def transpose(M: Matrix) -> Matrix:
    return Matrix.from_array(M.array.T)


def rotate180(M: Matrix) -> Matrix:
    return Matrix.from_array(M.array[::-1, ::-1])


# --- text formats ----------------------------------------------------------

def parse_matrix(text: str) -> Matrix:
    """Parse the plain format (lines of '0'/'1'), or the JSON object format."""
    stripped = text.strip()
    if not stripped:
        raise MatrixFormatError("empty input")
    if stripped.startswith("{"):
        return matrix_from_json(stripped)
    lines = stripped.splitlines()
    width = len(lines[0])
    for k, line in enumerate(lines, 1):
        if len(line) != width:
            raise MatrixFormatError(f"line {k} has length {len(line)}, expected {width}")
        bad = set(line) - {"0", "1"}
        if bad:
            raise MatrixFormatError(f"line {k}: unexpected characters {sorted(bad)}")
    return Matrix(len(lines), width, tuple(int(line, 2) for line in lines))


def matrix_to_dict(M: Matrix) -> dict:
    return {"n": M.n, "N": M.N, "rows": M.row_strings()}


def matrix_from_json(text: str) -> Matrix:
    try:
        obj = json.loads(text)
        n, N, rows = obj["n"], obj["N"], obj["rows"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad JSON matrix: {exc}") from None
    if len(rows) != n or any(len(r) != N for r in rows):
        raise MatrixFormatError("JSON rows do not match declared n and N")
    try:
        return Matrix.from_rows(rows)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None


def serialize_matrix(M: Matrix, format: str = "plain") -> str:
    if format == "plain":
        return str(M)
    if format == "json":
        return json.dumps(matrix_to_dict(M), separators=(",", ":"))
    raise ValueError(f"unknown matrix format {format!r}")


# --- random generation -----------------------------------------------------

def random_matrix(n: int, N: int, seed: int, p: float = 0.5) -> Matrix:
    """Each cell is 1 independently with probability ``p``; PCG64 seeded by ``seed``."""
    if n < 1 or N < 1:
        raise ValueError(f"invalid dimensions {n}x{N}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return Matrix.from_array((rng.random((n, N)) < p).astype(np.uint8))


def random_matrices(n: int, N: int, count: int, seed: int, p: float = 0.5) -> Iterator[Matrix]:
    """A reproducible stream of ``count`` matrices from one PCG64 generator."""
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(count):
        yield Matrix.from_array((rng.random((n, N)) < p).astype(np.uint8))


# --- staircases ------------------------------------------------------------

@dataclass(frozen=True)
class Staircase:
    """A run of equal-valued cells, each strictly right in the same row or
    strictly below in the same column of its predecessor."""

    value: int
    cells: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def turns(self) -> int:
        return turns(self)

    def to_dict(self) -> dict:
        return {"value": self.value, "cells": [list(c) for c in self.cells], "turns": self.turns}

    def transposed(self) -> "Staircase":
        return Staircase(self.value, tuple((j, i) for i, j in self.cells))

    def rotated180(self, n: int, N: int) -> "Staircase":
        return Staircase(self.value, tuple((n + 1 - i, N + 1 - j) for i, j in reversed(self.cells)))

    def complemented(self) -> "Staircase":
        return Staircase(1 - self.value, self.cells)


def staircase_from_dict(obj: dict) -> Staircase:
    return Staircase(int(obj["value"]), tuple((int(i), int(j)) for i, j in obj["cells"]))


def _step_dirs(cells) -> list[str]:
    out = []
    for (pi, pj), (qi, qj) in zip(cells, cells[1:]):
        if qi == pi and qj > pj:
            out.append("R")
        elif qj == pj and qi > pi:
            out.append("D")
        else:
            out.append("?")
    return out


def turns(S: Staircase) -> int:
    """Number of cells whose incoming and outgoing steps differ in direction."""
    d = _step_dirs(S.cells)
    return sum(1 for a, b in zip(d, d[1:]) if a != b)


class Validation(NamedTuple):
    valid: bool
    reason: str

    def __bool__(self) -> bool:
        return self.valid


def validate_staircase(M: Matrix, S: Staircase) -> Validation:
    if S.value not in (0, 1):
        return Validation(False, f"value {S.value} is not a bit")
    if not S.cells:
        return Validation(False, "empty staircase")
    for k, (i, j) in enumerate(S.cells):
        if not (1 <= i <= M.n and 1 <= j <= M.N):
            return Validation(False, f"cell {k} at {(i, j)} lies outside {M.n}x{M.N}")
        if M[i, j] != S.value:
            return Validation(False, f"cell {k} at {(i, j)} holds {1 - S.value}, not {S.value}")
    for k, d in enumerate(_step_dirs(S.cells)):
        if d == "?":
            return Validation(
                False, f"step {k} from {S.cells[k]} to {S.cells[k + 1]} is neither right nor down"
            )
    return Validation(True, "ok")
