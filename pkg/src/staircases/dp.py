"""Exact longest homogeneous staircases, with witnesses.

A matrix with no ``v`` cells has longest ``v``-staircase 0 and no witness.
That case never arises in the combinatorial arguments, but all-zero and
all-one inputs need it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .matrix import Matrix, Staircase

ORACLE_MAX_CELLS = 25


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class StProfile:
    st0: int
    st1: int

    @property
    def st(self) -> int:
        return max(self.st0, self.st1)

    @property
    def sigma(self) -> int:
        return self.st0 + self.st1

    def to_dict(self) -> dict:
        return {"st0": self.st0, "st1": self.st1, "st": self.st, "sigma": self.sigma}


def _as_array(M: Matrix | np.ndarray) -> np.ndarray:
    return M.array if isinstance(M, Matrix) else np.ascontiguousarray(M, dtype=np.uint8)


def _effective_budget(n: int, N: int, max_turns: int | None) -> int | None:
    # a staircase has at most n + N - 1 cells, hence at most n + N - 3 turns
    if max_turns is None or max_turns >= max(n + N - 3, 0):
        return None
    if max_turns < 0:
        raise ValueError(f"turn budget must be >= 0, got {max_turns}")
    return max_turns


def longest_length(M: Matrix | np.ndarray, v: int, max_turns: int | None = None) -> int:
    """Length only; skips witness recovery."""
    A = _as_array(M)
    k = _effective_budget(*A.shape, max_turns)
    if k is None:
        return int(_kernels.start_lengths(A, v).max())
    return int(_kernels.start_lengths_turns(A, v, k)[1].max())


def longest_value_staircase(
    M: Matrix, v: int, max_turns: int | None = None
) -> tuple[int, Staircase | None]:
    """Longest ``v``-staircase with at most ``max_turns`` turns (None: unbounded).

    Ties among optimal witnesses are broken by the smallest start cell
    (row, then column), then by preferring right steps, nearest first.
    """
    A = _as_array(M)
    n, N = A.shape
    k = _effective_budget(n, N, max_turns)
    if k is None:
        F = _kernels.start_lengths(A, v)
        best = int(F.max())
        if best == 0:
            return 0, None
        i, j = np.argwhere(F == best)[0]
        cells = [(int(i), int(j))]
        need = best - 1
        while need:
            i, j = cells[-1]
            nxt = None
            for jj in range(j + 1, N):
                if F[i, jj] == need:
                    nxt = (i, jj)
                    break
            if nxt is None:
                for ii in range(i + 1, n):
                    if F[ii, j] == need:
                        nxt = (ii, j)
                        break
            cells.append(nxt)
            need -= 1
        return best, Staircase(v, tuple((i + 1, j + 1) for i, j in cells))

    T, S = _kernels.start_lengths_turns(A, v, k)
    best = int(S.max())
    if best == 0:
        return 0, None
    i, j = np.argwhere(S == best)[0]
    cells = [(int(i), int(j))]
    need = best - 1
    d, t = None, k
    while need:
        i, j = cells[-1]
        step = None
        # right move: free unless the previous step went down
        tr = t - (1 if d == 1 else 0)
        if tr >= 0:
            for jj in range(j + 1, N):
                if A[i, jj] == v and T[i, jj, 0, tr] == need:
                    step = ((i, jj), 0, tr)
                    break
        if step is None:
            td = t - (1 if d == 0 else 0)
            for ii in range(i + 1, n):
                if A[ii, j] == v and T[ii, j, 1, td] == need:
                    step = ((ii, j), 1, td)
                    break
        cell, d, t = step
        cells.append(cell)
        need -= 1
    return best, Staircase(v, tuple((i + 1, j + 1) for i, j in cells))


def st_profile(M: Matrix | np.ndarray) -> StProfile:
    A = _as_array(M)
    return StProfile(
        int(_kernels.start_lengths(A, 0).max()),
        int(_kernels.start_lengths(A, 1).max()),
    )


def brute_force_all_budgets(M: Matrix, v: int, max_cells: int = ORACLE_MAX_CELLS) -> dict[int, int]:
    """Enumerate every ``v``-staircase explicitly by depth-first search.

    Returns ``{turns: longest staircase with exactly that many turns}``.
    Exponential; only for cross-checking the DP on small inputs.
    """
    if M.n * M.N > max_cells:
        raise InstanceTooLarge(f"{M.n}x{M.N} exceeds the oracle guard of {max_cells} cells")
    grid = M.to_lists()
    n, N = M.n, M.N
    best: dict[int, int] = {}

    def extend(i, j, length, last, nturns):
        if best.get(nturns, 0) < length:
            best[nturns] = length
        for jj in range(j + 1, N):
            if grid[i][jj] == v:
                extend(i, jj, length + 1, "R", nturns + (last == "D"))
        for ii in range(i + 1, n):
            if grid[ii][j] == v:
                extend(ii, j, length + 1, "D", nturns + (last == "R"))

    for i in range(n):
        for j in range(N):
            if grid[i][j] == v:
                extend(i, j, 1, None, 0)
    return best


def brute_force_longest(
    M: Matrix, v: int, max_turns: int | None = None, max_cells: int = ORACLE_MAX_CELLS
) -> int:
    by_turns = brute_force_all_budgets(M, v, max_cells)
    return max((L for t, L in by_turns.items() if max_turns is None or t <= max_turns), default=0)
