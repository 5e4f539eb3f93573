"""Exact extremal values st(n, N), Sigma(n, N) by exhaustive enumeration.

Complementing a matrix swaps st0 and st1, so st, Sigma and the
turn-budgeted st are unchanged; only matrices with a 0 in the top-left
corner are enumerated. Work is split by first row and the partitions are
merged by a min-reduction in partition order, which makes the reported
value, minimiser count and minimiser sample independent of thread count.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dp import longest_length, st_profile
from .matrix import Matrix, complement, random_matrices, rotate180, transpose, RNG_NAME

DEFAULT_BUDGET_CELLS = 30
SAMPLE_CAP = 10

STATISTICS = ("st", "sigma", "st-turns")


class BudgetExceeded(ValueError):
    pass


@dataclass
class SearchReport:
    n: int
    N: int
    statistic: str
    exact_value: int
    minimizers_sample: list[Matrix]
    minimizer_count: int
    matrices_enumerated: int
    full_evaluations: int
    symmetry_factor: int
    wall_time: float
    thread_count: int
    max_turns: int | None = None
    transposed: bool = False

    @property
    def matrices_per_second(self) -> float:
        return self.matrices_enumerated / self.wall_time if self.wall_time > 0 else float("inf")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "statistic": self.statistic,
            "max_turns": self.max_turns,
            "exact_value": self.exact_value,
            "minimizer_count": self.minimizer_count,
            "minimizers_sample": [m.row_strings() for m in self.minimizers_sample],
            "matrices_enumerated": self.matrices_enumerated,
            "full_evaluations": self.full_evaluations,
            "symmetry_factor": self.symmetry_factor,
            "thread_count": self.thread_count,
            "wall_time": round(self.wall_time, 6),
            "matrices_per_second": round(self.matrices_per_second, 1),
        }


def statistic_value(M: Matrix, statistic: str, max_turns: int | None = None) -> int:
    """The searched statistic recomputed through the DP module."""
    if statistic == "st":
        return st_profile(M).st
    if statistic == "sigma":
        return st_profile(M).sigma
    if statistic == "st-turns":
        return max(longest_length(M, 0, max_turns), longest_length(M, 1, max_turns))
    raise ValueError(f"unknown statistic {statistic!r}")


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo))
    edges = [lo + (hi - lo) * p // parts for p in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if a < b]


def exact_extremal(
    n: int,
    N: int,
    statistic: str = "st",
    *,
    max_turns: int | None = None,
    threads: int = 1,
    budget_cells: int = DEFAULT_BUDGET_CELLS,
    prune: bool = True,
    progress: bool = False,
    sample_cap: int = SAMPLE_CAP,
) -> SearchReport:
    """Minimum of ``statistic`` over all n x N 0/1 matrices.

    ``n > N`` is handled by transposing (all statistics are transpose
    invariant); minimisers are reported in the requested orientation.
    """
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}; choose from {STATISTICS}")
    if statistic == "st-turns" and (max_turns is None or max_turns < 0):
        raise ValueError("st-turns needs a turn budget >= 0")
    if n < 1 or N < 1:
        raise ValueError(f"invalid dimensions {n}x{N}")
    if n * N > budget_cells:
        raise BudgetExceeded(f"{n}x{N} = {n * N} cells exceeds the budget of {budget_cells}")
    flipped = n > N
    if flipped:
        n, N = N, n
    if N > 62:
        raise BudgetExceeded("rows wider than 62 columns are not supported")
    stat_code = {"st": _kernels.STAT_ST, "sigma": _kernels.STAT_SIGMA,
                 "st-turns": _kernels.STAT_ST_TURNS}[statistic]
    k = max_turns if statistic == "st-turns" else 0

    first_rows = 1 << (N - 1)  # top-left cell fixed to 0
    parts = _chunks(0, first_rows, max(64, 8 * threads))
    shared = np.full(1, n + N + 1, dtype=np.int64)

    # compile outside the timed region
    _kernels.search_range(1, 1, stat_code, k, 0, 0, shared.copy(), 1, prune)

    def run(part):
        lo, hi = part
        return _kernels.search_range(n, N, stat_code, k, lo, hi, shared, sample_cap, prune)

    t0 = time.perf_counter()
    results = []
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for idx, res in enumerate(pool.map(run, parts)):
            results.append(res)
            if progress:
                done = sum(r[4] for r in results)
                dt = time.perf_counter() - t0
                rate = done / dt if dt > 0 else float("inf")
                print(
                    f"[search {n}x{N} {statistic}] part {idx + 1}/{len(parts)} "
                    f"matrices={done} rate={rate:.3g}/s best={int(shared[0])}",
                    file=sys.stderr,
                )
    wall = time.perf_counter() - t0

    best = min(int(r[0]) for r in results)
    count = 0
    sample: list[Matrix] = []
    for local, n_best, samples, n_samples, _, _ in results:
        if int(local) != best:
            continue
        count += int(n_best)
        for s in range(int(n_samples)):
            if len(sample) < sample_cap:
                sample.append(Matrix(n, N, tuple(int(x) for x in samples[s])))
    covered = sum(int(r[4]) for r in results)
    leaves = sum(int(r[5]) for r in results)
    if flipped:
        sample = [transpose(m) for m in sample]
        n, N = N, n
    return SearchReport(
        n=n, N=N, statistic=statistic, exact_value=best, minimizers_sample=sample,
        minimizer_count=count, matrices_enumerated=covered, full_evaluations=leaves,
        symmetry_factor=2, wall_time=wall, thread_count=threads,
        max_turns=max_turns if statistic == "st-turns" else None, transposed=flipped,
    )


def canonical_reduce(M: Matrix) -> Matrix:
    """Lexicographically least image of ``M`` under complement, 180-degree
    rotation and, for square matrices, transposition."""
    return min(symmetry_orbit(M), key=Matrix.sort_key)


def symmetry_orbit(M: Matrix) -> set[Matrix]:
    base = [M, rotate180(M)]
    if M.n == M.N:
        base += [transpose(m) for m in base]
    return set(base) | {complement(m) for m in base}


@dataclass
class ConjectureRow:
    n: int
    exact: int
    conjectured: int

    @property
    def holds(self) -> bool:
        return self.exact == self.conjectured

    def to_dict(self) -> dict:
        return {"n": self.n, "st": self.exact, "n_minus_1": self.conjectured,
                "verdict": "holds" if self.holds else "fails"}


def conjecture_scan(n_max: int, *, n_min: int = 2, threads: int = 1,
                    budget_cells: int = DEFAULT_BUDGET_CELLS, progress: bool = False) -> list[ConjectureRow]:
    """Exact st(n) for each square size, against the conjectured n - 1."""
    rows = []
    for n in range(n_min, n_max + 1):
        rep = exact_extremal(n, n, "st", threads=threads, budget_cells=budget_cells, progress=progress)
        rows.append(ConjectureRow(n, rep.exact_value, n - 1))
    return rows


@dataclass
class ProbeResult:
    n: int
    max_turns: int
    min_value: int
    minimizers: list[Matrix]
    exact: bool
    matrices_inspected: int
    rng: str | None = None
    seed: int | None = None
    running_min: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "max_turns": self.max_turns, "min_value": self.min_value,
            "exact": self.exact, "note": "exhaustive" if self.exact else "sampled, not exact",
            "matrices_inspected": self.matrices_inspected,
            "minimizers": [m.row_strings() for m in self.minimizers],
            "rng": self.rng, "seed": self.seed,
        }


def probe_two_turn_bound(
    n: int, sample_budget: int = 10_000, *, seed: int = 0, max_turns: int = 2,
    budget_cells: int = DEFAULT_BUDGET_CELLS, threads: int = 1,
) -> ProbeResult:
    """Smallest longest staircase with at most ``max_turns`` turns over n x n
    matrices: exhaustive when n*n fits the cell budget, otherwise the
    minimum over ``sample_budget`` seeded random matrices (marked not exact)."""
    if n * n <= budget_cells:
        rep = exact_extremal(n, n, "st-turns", max_turns=max_turns, threads=threads,
                             budget_cells=budget_cells)
        return ProbeResult(n, max_turns, rep.exact_value, rep.minimizers_sample, True,
                           rep.matrices_enumerated)
    best = None
    found: list[Matrix] = []
    running = []
    for M in random_matrices(n, n, sample_budget, seed):
        val = statistic_value(M, "st-turns", max_turns)
        if best is None or val < best:
            best, found = val, [M]
        elif val == best and len(found) < SAMPLE_CAP:
            found.append(M)
        running.append(best)
    return ProbeResult(n, max_turns, best if best is not None else 0, found, False,
                       sample_budget, RNG_NAME, seed, running)
