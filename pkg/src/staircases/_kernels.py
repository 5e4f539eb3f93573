"""Compiled inner loops for the staircase DP.

Arrays are 0-based here. Direction index 0 is "right", 1 is "down".
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def start_lengths(A, v):
    """F[i, j] = longest v-staircase starting at (i, j); 0 on non-v cells.

    Reverse sweep keeping, per column, the best F among v-cells below the
    current row, and, within the row, the best F among v-cells to the right.
    """
    n, N = A.shape
    F = np.zeros((n, N), dtype=np.int32)
    colbest = np.zeros(N, dtype=np.int32)
    for i in range(n - 1, -1, -1):
        rowbest = 0
        for j in range(N - 1, -1, -1):
            if A[i, j] == v:
                f = 1 + max(rowbest, colbest[j])
                F[i, j] = f
                if f > rowbest:
                    rowbest = f
        # column maxima are refreshed after the row so a cell never sees its own row
        for j in range(N):
            if F[i, j] > colbest[j]:
                colbest[j] = F[i, j]
    return F


@njit(cache=True, nogil=True)
def start_lengths_turns(A, v, k):
    """Turn-budgeted variant.

    T[i, j, d, t]: longest v-staircase starting at (i, j), entered by a step
    in direction d, allowed at most t further turns.
    S[i, j]: longest v-staircase starting at (i, j) with at most k turns.
    """
    n, N = A.shape
    T = np.zeros((n, N, 2, k + 1), dtype=np.int32)
    S = np.zeros((n, N), dtype=np.int32)
    # down[j, t]: best T[., j, 1, t] over v-cells strictly below in column j
    down = np.zeros((N, k + 1), dtype=np.int32)
    right = np.zeros(k + 1, dtype=np.int32)
    for i in range(n - 1, -1, -1):
        right[:] = 0
        for j in range(N - 1, -1, -1):
            if A[i, j] != v:
                continue
            for t in range(k + 1):
                # entered going right: continue right for free, turn down costs 1
                best = right[t]
                if t >= 1 and down[j, t - 1] > best:
                    best = down[j, t - 1]
                T[i, j, 0, t] = 1 + best
                best = down[j, t]
                if t >= 1 and right[t - 1] > best:
                    best = right[t - 1]
                T[i, j, 1, t] = 1 + best
            S[i, j] = 1 + max(right[k], down[j, k])
            for t in range(k + 1):
                if T[i, j, 0, t] > right[t]:
                    right[t] = T[i, j, 0, t]
        for j in range(N):
            if A[i, j] == v:
                for t in range(k + 1):
                    if T[i, j, 1, t] > down[j, t]:
                        down[j, t] = T[i, j, 1, t]
    return T, S


# --- exhaustive search ------------------------------------------------------
# Rows are ints with column 1 in the most significant of N bits. The forward
# DP keeps, per column and value, the best staircase ending in that column
# among rows already placed, so a row is absorbed in O(N) (O(N k) with turns).

STAT_ST = 0
STAT_SIGMA = 1
STAT_ST_TURNS = 2


@njit(cache=True, nogil=True, inline="always")
def _absorb_row(row, N, col_in, col_out, m):
    r0 = 0
    r1 = 0
    for j in range(N):
        v = (row >> (N - 1 - j)) & 1
        if v == 0:
            L = 1 + max(r0, col_in[0, j])
            if L > r0:
                r0 = L
            if L > m[0]:
                m[0] = L
            col_out[0, j] = max(col_in[0, j], L)
            col_out[1, j] = col_in[1, j]
        else:
            L = 1 + max(r1, col_in[1, j])
            if L > r1:
                r1 = L
            if L > m[1]:
                m[1] = L
            col_out[1, j] = max(col_in[1, j], L)
            col_out[0, j] = col_in[0, j]


@njit(cache=True, nogil=True, inline="always")
def _absorb_row_turns(row, N, k, col_in, col_out, rowst, cell, m):
    # col_in[v, d, t, j]: best staircase ending in column j (rows above) with
    # last step d and at most t turns; rowst[v, d, t] the same for cells to
    # the left in this row. A lone cell counts under both directions.
    rowst[:, :, :] = 0
    col_out[:, :, :, :] = col_in[:, :, :, :]
    for j in range(N):
        v = (row >> (N - 1 - j)) & 1
        for t in range(k + 1):
            er = rowst[v, 0, t]
            if t >= 1 and rowst[v, 1, t - 1] > er:
                er = rowst[v, 1, t - 1]
            ed = col_in[v, 1, t, j]
            if t >= 1 and col_in[v, 0, t - 1, j] > ed:
                ed = col_in[v, 0, t - 1, j]
            cell[0, t] = er + 1
            cell[1, t] = ed + 1
        for d in range(2):
            for t in range(k + 1):
                x = cell[d, t]
                if x > rowst[v, d, t]:
                    rowst[v, d, t] = x
                if x > col_out[v, d, t, j]:
                    col_out[v, d, t, j] = x
            if cell[d, k] > m[v]:
                m[v] = cell[d, k]


@njit(cache=True, nogil=True)
def search_range(n, N, stat, k, r_lo, r_hi, shared, cap, prune):
    """Exhaust all n x N matrices whose first row lies in [r_lo, r_hi).

    Rows below the first run over all 2^N values in increasing order, so
    matrices are visited in row-major lexicographic order. A prefix whose
    partial statistic already exceeds the best known value is skipped with
    its whole subtree (statistics only grow as rows are added); ties are
    never skipped, so every minimiser at the final minimum is visited.

    Returns (best, n_best, samples, n_samples, covered, leaves).
    """
    big = n + N + 1
    local = 2 * big
    n_best = 0
    samples = np.zeros((cap, n), dtype=np.int64)
    n_samples = 0
    covered = 0
    leaves = 0
    top = 1 << N
    cur = np.zeros(n, dtype=np.int64)
    mvals = np.zeros((n + 1, 2), dtype=np.int32)
    col = np.zeros((n + 1, 2, N), dtype=np.int32)
    kk = max(k, 0)
    colt = np.zeros((n + 1, 2, 2, kk + 1, N), dtype=np.int32)
    rowst = np.zeros((2, 2, kk + 1), dtype=np.int32)
    cell = np.zeros((2, kk + 1), dtype=np.int32)
    # subtree[L] = number of completions below a prefix ending at level L
    subtree = np.ones(n, dtype=np.int64)
    for L in range(n - 2, -1, -1):
        subtree[L] = subtree[L + 1] << N
    if r_lo >= r_hi:
        return local, n_best, samples, n_samples, covered, leaves
    level = 0
    cur[0] = r_lo
    while True:
        mvals[level + 1, 0] = mvals[level, 0]
        mvals[level + 1, 1] = mvals[level, 1]
        if stat == STAT_ST_TURNS:
            _absorb_row_turns(cur[level], N, k, colt[level], colt[level + 1], rowst, cell,
                              mvals[level + 1])
        else:
            _absorb_row(cur[level], N, col[level], col[level + 1], mvals[level + 1])
        if stat == STAT_SIGMA:
            val = mvals[level + 1, 0] + mvals[level + 1, 1]
        else:
            val = max(mvals[level + 1, 0], mvals[level + 1, 1])
        bound = local
        if shared[0] < bound:
            bound = shared[0]
        if level == n - 1:
            covered += 1
            leaves += 1
            if val < local:
                local = val
                n_best = 0
                n_samples = 0
                if val < shared[0]:
                    shared[0] = val
            if val == local:
                n_best += 1
                if n_samples < cap:
                    for r in range(n):
                        samples[n_samples, r] = cur[r]
                    n_samples += 1
        elif prune and val > bound:
            covered += subtree[level]
        else:
            level += 1
            cur[level] = 0
            continue
        # advance the odometer
        cur[level] += 1
        while level > 0 and cur[level] == top:
            level -= 1
            cur[level] += 1
        if level == 0 and cur[0] >= r_hi:
            break
    return local, n_best, samples, n_samples, covered, leaves
