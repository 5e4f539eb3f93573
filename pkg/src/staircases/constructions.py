"""The extremal matrix families P, Q, R and their closed-form values.

Builders evaluate each family's defining predicate on every cell rather
than painting blocks, so the matrices follow the clauses literally.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .matrix import Matrix


class RangeError(ValueError):
    """Dimensions outside a construction's valid range."""


def cdiv(a: int, b: int) -> int:
    return -(-a // b)


def half_up(n: int) -> int:
    return cdiv(n, 2)


def q_threshold(n: int) -> int:
    """Smallest N for which the Q family applies: floor(5n/2) - 1."""
    return 5 * n // 2 - 1


def in_q_range(n: int, N: int) -> bool:
    return n >= 1 and N >= q_threshold(n)


def in_r_range(n: int, N: int) -> bool:
    return n >= 1 and n < N < q_threshold(n)


def _check_P(n, N):
    if not 1 <= n <= N:
        raise RangeError(f"P needs 1 <= n <= N, got n={n}, N={N}")


def _check_Q(n, N):
    if n < 1 or not in_q_range(n, N):
        raise RangeError(f"Q needs N >= floor(5n/2) - 1 = {q_threshold(n)}, got n={n}, N={N}")


def _check_R(n, N):
    if n < 1 or not in_r_range(n, N):
        raise RangeError(
            f"R needs n < N < floor(5n/2) - 1 = {q_threshold(n)}, got n={n}, N={N}"
        )


def _build(n, N, predicate) -> Matrix:
    # predicate sees 1-based index grids, so each clause reads as written per cell
    i = np.arange(1, n + 1)[:, None]
    j = np.arange(1, N + 1)[None, :]
    return Matrix.from_array(np.broadcast_to(predicate(i, j), (n, N)).astype(np.uint8))


def build_P(n: int, N: int) -> Matrix:
    """Zeros on the two corner triangles i+j <= floor(n/2)+1 and i+j >= floor(n/2)+N+1."""
    _check_P(n, N)
    h = n // 2
    return _build(n, N, lambda i, j: ~((i + j <= h + 1) | (i + j >= h + N + 1)))


def q_width(n: int, N: int) -> int:
    """Width of the parallelogram blocks of Q: floor((ceil(n/2) + N - 1) / 2)."""
    return (half_up(n) + N - 1) // 2


def build_Q(n: int, N: int) -> Matrix:
    _check_Q(n, N)
    c = half_up(n)
    w = q_width(n, N)

    def one(i, j):
        s = i + j
        top = (i <= c) & ((s <= c + 1) | (c + w + 1 < s))
        bottom = (i > c) & (c + N - w < s) & (s <= c + N)
        return top | bottom

    return _build(n, N, one)


def r_blocks(n: int, N: int) -> tuple[int, int, int]:
    """Top-row block widths of R: leading 1's, middle 0's, trailing 1's."""
    return (N - n + 2) // 3, cdiv(2 * n + N - 2, 3), cdiv(N - n - 1, 3)


def build_R(n: int, N: int) -> Matrix:
    _check_R(n, N)
    c = half_up(n)
    left, mid, right = r_blocks(n, N)

    def one(i, j):
        s = i + j
        top = (i <= c) & ((s <= left + 1) | (left + mid + 1 < s))
        bottom = (i > c) & (n + left < s) & (s <= n + N - right)
        return top | bottom

    return _build(n, N, one)


BUILDERS = {"P": build_P, "Q": build_Q, "R": build_R}


def formula_sigma_P(n: int, N: int) -> int:
    _check_P(n, N)
    return half_up(n) + N - 1


def formula_st_Q(n: int, N: int) -> int:
    _check_Q(n, N)
    return cdiv(half_up(n) + N - 1, 2)


def formula_st_R(n: int, N: int) -> int:
    _check_R(n, N)
    return cdiv(2 * n + N - 2, 3)


def st_lower_bound_from_sigma(n: int, N: int) -> int:
    """Every n x N matrix (n <= N) has st >= ceil((ceil(n/2) + N - 1) / 2)."""
    if n > N:
        n, N = N, n
    return cdiv(half_up(n) + N - 1, 2)


PROVED_EXACT = "proved-exact"
UPPER_BOUND_ONLY = "upper-bound-only"
CONJECTURED = "conjectured"


class Bound(NamedTuple):
    value: int
    status: str


def st_upper_bound(n: int, N: int) -> Bound:
    """Best known upper bound on st(n, N), tagged with how it is known.

    Wide shapes are settled exactly by Q; the middle range only has R's
    value as an upper bound; square shapes get the conjectured n - 1.
    """
    if n > N:
        n, N = N, n
    if n < 1:
        raise ValueError(f"invalid dimensions {n}x{N}")
    if in_q_range(n, N):
        return Bound(formula_st_Q(n, N), PROVED_EXACT)
    if in_r_range(n, N):
        return Bound(formula_st_R(n, N), UPPER_BOUND_ONLY)
    return Bound(n - 1, CONJECTURED)


def regime(n: int, N: int) -> str:
    if n > N:
        n, N = N, n
    if in_q_range(n, N):
        return "Q"
    if in_r_range(n, N):
        return "R"
    return "square"
