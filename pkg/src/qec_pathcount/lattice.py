"""Rotated-code grid geometry and the consecutive-error transition rule.

Data qubits sit on a ``d x d`` grid with row 0 at the top boundary. A
minimum-length logical path visits one cell per row; two errors that are
consecutive in row order can lie on a common path only if they are closer
vertically than horizontally, or exactly diagonal through a plaquette of
the right type. The plaquette type is read off the parity of the
destination cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class GridPosition:
    row: int
    col: int

    def in_grid(self, d: int) -> bool:
        return 0 <= self.row < d and 0 <= self.col < d


@dataclass(frozen=True)
class CodeDistance:
    """An odd code distance ``d >= 3`` together with ``d_e = (d + 1) / 2``."""

    d: int

    def __post_init__(self):
        check_distance(self.d)

    @property
    def d_e(self) -> int:
        return (self.d + 1) // 2


def check_distance(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError(f"code distance must be an int, got {type(d).__name__}")
    if d < 3 or d % 2 == 0:
        raise ValueError(f"code distance must be odd and >= 3, got d={d}")
    return d


def min_errors(d: int) -> int:
    """Fewest errors that can complete a logical path: ``ceil(d / 2)``.

    Accepts even lengths as well, which the rectangular layout search needs.
    """
    if d < 1:
        raise ValueError(f"length must be positive, got {d}")
    return (d + 1) // 2


def cell_parity(pos: GridPosition) -> int:
    return (pos.row + pos.col) % 2


def is_valid_transition(prev: GridPosition, nxt: GridPosition, flipped: bool = False) -> bool:
    """True when ``nxt`` can follow ``prev`` on a minimum-length logical path.

    ``flipped`` swaps which diagonal each parity admits (the mirrored
    plaquette colouring); per-transition answers change, totals do not.
    """
    dy = nxt.row - prev.row
    if dy <= 0:
        return False
    dx = nxt.col - prev.col
    if dy < abs(dx):
        return False
    if dy == abs(dx):
        parity = cell_parity(nxt) ^ int(flipped)
        if parity == 0 and dx < 0:
            return False
        if parity == 1 and dx > 0:
            return False
    return True


def diagonal_masks(d: int, flipped: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Boolean ``d x d`` masks of cells reachable by an exact diagonal step.

    The first mask marks destinations that admit ``dx > 0``, the second
    ``dx < 0``; they are complementary.
    """
    rows, cols = np.indices((d, d))
    right = (rows + cols + int(flipped)) % 2 == 0
    return right, ~right
