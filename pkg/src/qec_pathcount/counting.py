"""Exact counts of error placements along minimum-length logical paths.

``count_error_patterns(d, n)`` counts ordered placements of ``n`` errors in
strictly increasing rows, starting no lower than row ``d - n``, such that
every consecutive pair is a valid transition. With ``n = d_e`` this is the
leading configuration count ``C_{d_e}``; with ``n = d`` it is the number of
minimum-length logical paths.

Three independent routes are provided:

* ``dp``        layered table over (row, col, remaining) built from cone and
                diagonal running sums, O(d^2 n) big-integer additions;
                the default.
* ``recursive`` memoized recursion that scans every later cell, O(d^4 n).
* ``brute``     exhaustive enumeration, for validation only.
"""

from __future__ import annotations

import itertools
import os
import sys
from functools import lru_cache

import numpy as np

from .lattice import GridPosition, check_distance, diagonal_masks, is_valid_transition

ORACLE_CAP_ENV = "QEC_PATHCOUNT_ORACLE_CAP"
DEFAULT_ORACLE_CAP = 10_000_000

METHODS = ("dp", "recursive", "brute-force")


class OracleScopeExceeded(ValueError):
    """Raised when a brute-force enumeration would exceed the configured cap."""


def _check_args(d: int, n: int) -> None:
    check_distance(d)
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"error count must be an int, got {type(n).__name__}")
    if not 1 <= n <= d:
        raise ValueError(f"error count must lie in [1, d={d}], got n={n}")


def _continuations(d: int, n: int, flipped: bool) -> np.ndarray:
    """Table of continuation counts for ``n - 1`` further errors, indexed [row, col].

    Each layer needs, for every cell, the sum of the previous layer over the
    open downward cone ``|dx| < dy`` plus the admissible exact diagonals. Cone
    sums obey ``K(r, c) = v(r, c) + v(r+1, c) + K(r+1, c-1) + K(r+1, c+1) - K(r+2, c)``
    on a column-padded grid, and diagonal sums telescope along the diagonal,
    so each layer costs O(d^2). Arrays hold Python ints (dtype=object).
    """
    right_ok, left_ok = diagonal_masks(d, flipped)
    zero = np.zeros((d, d), dtype=object)

    pad = d + 1
    width = d + 2 * pad
    ways = np.ones((d, d), dtype=object)
    for _ in range(n - 1):
        cone = np.zeros((d + 2, width), dtype=object)
        v = np.zeros(width, dtype=object)
        for r in range(d - 1, -1, -1):
            v[pad:pad + d] = ways[r] + ways[r + 1] if r + 1 < d else ways[r]
            cone[r, 1:-1] = v[1:-1] + cone[r + 1, :-2] + cone[r + 1, 2:] - cone[r + 2, 1:-1]
        wr = np.where(right_ok, ways, zero)
        wl = np.where(left_ok, ways, zero)
        right = wr.copy()
        left = wl.copy()
        for r in range(d - 2, -1, -1):
            right[r, :-1] += right[r + 1, 1:]
            left[r, 1:] += left[r + 1, :-1]
        nxt = np.zeros((d, d), dtype=object)
        nxt[:-1, :] = cone[1:d, pad:pad + d]
        nxt[:-1, :-1] += right[1:, 1:]
        nxt[:-1, 1:] += left[1:, :-1]
        ways = nxt
    return ways


def _count_dp(d: int, n: int, flipped: bool) -> int:
    ways = _continuations(d, n, flipped)
    return int(ways[: d - n + 1].sum())


def _count_recursive(d: int, n: int, flipped: bool) -> int:
    memo: dict[tuple[int, int, int], int] = {}

    def count_from(row: int, col: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        key = (row, col, remaining)
        if key in memo:
            return memo[key]
        here = GridPosition(row, col)
        total = 0
        for r2 in range(row + 1, d):
            for c2 in range(d):
                if is_valid_transition(here, GridPosition(r2, c2), flipped):
                    total += count_from(r2, c2, remaining - 1)
        memo[key] = total
        return total

    limit = sys.getrecursionlimit()
    if n + 50 > limit:
        sys.setrecursionlimit(n + 100)
    total = 0
    for r in range(d - n + 1):
        for c in range(d):
            total += count_from(r, c, n - 1)
    return total


def oracle_cap() -> int:
    raw = os.environ.get(ORACLE_CAP_ENV)
    if raw is None:
        return DEFAULT_ORACLE_CAP
    try:
        cap = int(float(raw))
    except ValueError:
        raise ValueError(f"{ORACLE_CAP_ENV} must be a number, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{ORACLE_CAP_ENV} must be positive, got {cap}")
    return cap


def brute_force_count(d: int, n: int, flipped: bool = False, cap: int | None = None) -> int:
    """Enumerate every row-distinct ``n``-subset of cells and test it directly.

    The enumeration space is ``binom(d, n) * d**n``; instances larger than
    ``cap`` (default from ``QEC_PATHCOUNT_ORACLE_CAP``) are refused.
    """
    _check_args(d, n)
    if cap is None:
        cap = oracle_cap()
    from math import comb

    space = comb(d, n) * d**n
    if space > cap:
        raise OracleScopeExceeded(
            f"brute force for d={d}, n={n} needs {space} candidates, above cap {cap}; "
            f"raise {ORACLE_CAP_ENV} to allow it"
        )
    accepted = 0
    for rows in itertools.combinations(range(d), n):
        if rows[0] > d - n:
            continue
        for cols in itertools.product(range(d), repeat=n):
            cells = [GridPosition(r, c) for r, c in zip(rows, cols)]
            if all(is_valid_transition(a, b, flipped) for a, b in zip(cells, cells[1:])):
                accepted += 1
    return accepted


def count_error_patterns(d: int, n: int, method: str = "dp", flipped: bool = False) -> int:
    """Exact number of ``n``-error placements along minimum-length logical paths.

    Parameters
    ----------
    d : int
        Odd code distance, at least 3.
    n : int
        Number of errors, ``1 <= n <= d``.
    method : {"dp", "recursive", "brute-force"}
        Evaluation route. All return the same integer.
    flipped : bool
        Use the mirrored parity convention (totals are invariant under it).
    """
    _check_args(d, n)
    if method == "dp":
        return _cached_dp(d, n, flipped)
    if method == "recursive":
        return _count_recursive(d, n, flipped)
    if method == "brute-force":
        return brute_force_count(d, n, flipped)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@lru_cache(maxsize=256)
def _cached_dp(d: int, n: int, flipped: bool) -> int:
    return _count_dp(d, n, flipped)


def leading_count(d: int, both_axes: bool = False) -> int:
    """``C_{d_e}`` for the rotated code, per error type unless ``both_axes``."""
    check_distance(d)
    c = count_error_patterns(d, (d + 1) // 2)
    return 2 * c if both_axes else c


def count_paths(d: int) -> int:
    """Number of minimum-length logical paths (one error in every row)."""
    return count_error_patterns(d, d)


def path_ratio(d: int) -> float:
    """``count_paths(d) / (d 2^(d-1))``, the tightness of the naive path bound."""
    from fractions import Fraction

    return float(Fraction(count_paths(d), d * 2 ** (d - 1)))
