"""Shared table builders for the test suite."""

import numpy as np

from xebench import WeightTable


def worked_table() -> WeightTable:
    """The hand-checked 2-digit fixture used throughout the tests."""
    return WeightTable(n=2, d=2, rows=np.array([[0.7, 0.3], [0.6, 0.4]]))


def uniform_table(n: int, d: int) -> WeightTable:
    return WeightTable(n=n, d=d, rows=np.full((n, d), 1.0 / d))


def point_mass_table(n: int, d: int) -> WeightTable:
    row = np.zeros(d)
    row[0] = 1.0
    return WeightTable(n=n, d=d, rows=np.tile(row, (n, 1)))


def all_digit_rows(n: int, d: int) -> np.ndarray:
    """(d**n, n) matrix of every digit string in index order."""
    codes = np.arange(d**n, dtype=np.int64)
    digits = np.empty((d**n, n), dtype=np.int64)
    for i in range(n):
        digits[:, i] = codes % d
        codes //= d
    return digits
