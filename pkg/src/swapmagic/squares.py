"""Little squares, the 4x4 base square, and weaving squares of order 4q.

A weaving square interleaves rotated little squares over the base square so
that every row and column carries equal sums, two long runs of consecutive
values, and a clean low/high quadrant split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import LabelingError

# Fixed constant: row and column sums are all 34, entries <= 8 sit in the
# upper-left and lower-right 2x2 quadrants.
BASE_SQUARE = (
    (1, 6, 11, 16),
    (7, 4, 13, 10),
    (12, 15, 2, 5),
    (14, 9, 8, 3),
)


def little_square(q: int, rot: int = 0) -> np.ndarray:
    """q x q square of 1..q^2; rot counts clockwise quarter-turns (0..3)."""
    if q < 1:
        raise LabelingError(f"little square order must be >= 1, got {q}")
    if rot not in (0, 1, 2, 3):
        raise LabelingError(f"rotation must be in 0..3, got {rot}")
    base = np.arange(1, q * q + 1, dtype=np.int64).reshape(q, q)
    out = np.rot90(base, k=-rot)
    out.flags.writeable = False
    return out


def base_square() -> np.ndarray:
    out = np.array(BASE_SQUARE, dtype=np.int64)
    out.flags.writeable = False
    return out


def weaving_square(q: int) -> np.ndarray:
    """Order-4q square: block (i1, j1) holds the little square rotated by
    (j1 - i1) mod 4, lifted by (B(i1, j1) - 1) * q^2."""
    if q < 1:
        raise LabelingError(f"weaving square parameter must be >= 1, got {q}")
    b = base_square()
    out = np.empty((4 * q, 4 * q), dtype=np.int64)
    littles = [little_square(q, r) for r in range(4)]
    for i1 in range(4):
        for j1 in range(4):
            block = (b[i1, j1] - 1) * q * q + littles[(j1 - i1) % 4]
            out[i1 * q : (i1 + 1) * q, j1 * q : (j1 + 1) * q] = block
    out.flags.writeable = False
    return out


def line_sum(q: int) -> int:
    """Common row/column sum of the order-4q weaving square."""
    return 32 * q**3 + 2 * q


def disjoint_run_count(values: np.ndarray, run_len: int) -> int:
    """How many disjoint runs of `run_len` consecutive integers fit in the set."""
    s = np.sort(values)
    breaks = np.flatnonzero(np.diff(s) != 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [len(s) - 1]))
    lengths = ends - starts + 1
    return int(np.sum(lengths // run_len))


@dataclass(frozen=True)
class WeavingReport:
    """Pass/fail per weaving-square property, with a witness line on failure."""

    order: int
    bijective: bool
    line_sums_ok: bool
    runs_ok: bool
    quadrants_ok: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.bijective and self.line_sums_ok and self.runs_ok and self.quadrants_ok


def check_weaving(w: np.ndarray) -> WeavingReport:
    """Verify the four weaving-square properties of a candidate square."""
    w = np.asarray(w)
    order = w.shape[0]
    if w.ndim != 2 or w.shape[0] != w.shape[1] or order % 4 != 0:
        raise LabelingError("weaving check needs a square of order divisible by 4")
    q = order // 4
    witness: str | None = None

    flat = np.sort(w.ravel())
    bijective = bool(np.array_equal(flat, np.arange(1, order * order + 1)))
    if not bijective:
        witness = "entries are not a bijection onto [16q^2]"

    target = line_sum(q)
    row_sums = w.sum(axis=1)
    col_sums = w.sum(axis=0)
    bad_rows = np.flatnonzero(row_sums != target)
    bad_cols = np.flatnonzero(col_sums != target)
    line_sums_ok = bad_rows.size == 0 and bad_cols.size == 0
    if not line_sums_ok and witness is None:
        if bad_rows.size:
            witness = f"row {bad_rows[0] + 1} sums to {row_sums[bad_rows[0]]} != {target}"
        else:
            witness = f"column {bad_cols[0] + 1} sums to {col_sums[bad_cols[0]]} != {target}"

    runs_ok = True
    for i in range(order):
        if disjoint_run_count(w[i, :], q) < 2 or disjoint_run_count(w[:, i], q) < 2:
            runs_ok = False
            if witness is None:
                which = "row" if disjoint_run_count(w[i, :], q) < 2 else "column"
                witness = f"{which} {i + 1} lacks two disjoint runs of length {q}"
            break

    idx = np.arange(1, order + 1)
    same_half = (idx[:, None] <= 2 * q) == (idx[None, :] <= 2 * q)
    quadrants_ok = bool(np.array_equal(w <= 8 * q * q, same_half))
    if not quadrants_ok and witness is None:
        bad = np.argwhere((w <= 8 * q * q) != same_half)[0]
        witness = f"entry ({bad[0] + 1}, {bad[1] + 1}) breaks the low/high quadrant split"

    return WeavingReport(order, bijective, line_sums_ok, runs_ok, quadrants_ok, witness)


def square_to_csv(square: np.ndarray) -> str:
    """Row-major comma-separated dump, one row per line."""
    return "\n".join(",".join(str(int(x)) for x in row) for row in np.asarray(square)) + "\n"
