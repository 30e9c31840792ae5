"""Young frames, ordered spectra, and their dimension combinatorics.

A frame with ``d`` rows and ``N`` boxes is a partition of ``N`` into at most
``d`` parts. Rows are stored with explicit trailing zeros so frames of a
fixed dimension compare row by row against the spectra they estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterator, Sequence


@dataclass(frozen=True, order=True)
class YoungFrame:
    """Arrangement of boxes into non-increasing rows (trailing zeros kept)."""

    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) == 0:
            raise ValueError("frame needs at least one row slot")
        for value in self.rows:
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"row lengths must be non-negative integers: {self.rows}")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if upper < lower:
                raise ValueError(f"row lengths must be non-increasing: {self.rows}")

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    def nonzero_rows(self) -> int:
        return sum(1 for value in self.rows if value > 0)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.rows) + ")"


@dataclass(frozen=True)
class Spectrum:
    """Point of the closed ordered simplex: non-increasing, sums to one."""

    values: tuple[float, ...]

    _SUM_TOLERANCE = 1e-12

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("spectrum needs at least one entry")
        if self.values[-1] < 0.0:
            raise ValueError(f"eigenvalues must be non-negative: {self.values}")
        for upper, lower in zip(self.values, self.values[1:]):
            if upper < lower:
                raise ValueError(
                    f"eigenvalues must be non-increasing: {self.values}"
                )
        total = math.fsum(self.values)
        if abs(total - 1.0) > self._SUM_TOLERANCE:
            raise ValueError(f"eigenvalues must sum to 1, got {total!r}")

    @classmethod
    def from_unsorted(cls, values: Sequence[float]) -> "Spectrum":
        """Canonicalize arbitrary eigenvalue order by sorting descending."""
        return cls(tuple(sorted((float(v) for v in values), reverse=True)))

    @property
    def d(self) -> int:
        return len(self.values)

    def support_size(self) -> int:
        return sum(1 for v in self.values if v > 0.0)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]


def enumerate_frames(d: int, boxes: int) -> Iterator[YoungFrame]:
    """Yield every frame with ``d`` rows and ``boxes`` boxes, lexicographically decreasing."""
    if d < 1:
        raise ValueError(f"need at least one row, got d={d}")
    if boxes < 0:
        raise ValueError(f"box count must be non-negative, got {boxes}")
    for rows in _partition_tuples(boxes, boxes, d):
        yield YoungFrame(rows)


def _partition_tuples(n: int, max_part: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if n == 0:
            yield ()
        return
    if n == 0:
        yield (0,) * slots
        return
    lowest = -(-n // slots)  # smallest feasible leading part
    for part in range(min(n, max_part), lowest - 1, -1):
        for rest in _partition_tuples(n - part, part, slots - 1):
            yield (part,) + rest


@cache
def frame_count(d: int, boxes: int) -> int:
    """Number of partitions of ``boxes`` into at most ``d`` parts."""
    if d < 0:
        raise ValueError("frame_count needs a non-negative row count")
    if boxes < 0:
        return 0
    if boxes == 0:
        return 1
    if d == 0:
        return 0
    # parts <= d via the conjugate recurrence p(n, d) = p(n, d-1) + p(n-d, d)
    return frame_count(d - 1, boxes) + frame_count(d, boxes - d)


def hook_lengths(frame: YoungFrame) -> list[int]:
    """Hook length of every box, row by row."""
    rows = frame.rows
    hooks = []
    for i, length in enumerate(rows):
        for j in range(length):
            arm = length - j - 1
            leg = sum(1 for below in rows[i + 1 :] if below > j)
            hooks.append(arm + leg + 1)
    return hooks


@cache
def _dim_symmetric_cached(rows: tuple[int, ...]) -> int:
    frame = YoungFrame(rows)
    product = 1
    for hook in hook_lengths(frame):
        product *= hook
    return math.factorial(frame.boxes) // product


def dim_symmetric_irrep(frame: YoungFrame) -> int:
    """Number of standard tableaux of this shape (exact integer arithmetic)."""
    return _dim_symmetric_cached(frame.rows)


def log_dim_symmetric_irrep(frame: YoungFrame) -> float:
    """Parallel log-space path: ln N! minus the summed log hook lengths."""
    total = math.lgamma(frame.boxes + 1)
    for hook in hook_lengths(frame):
        total -= math.log(hook)
    return total


def dim_unitary_irrep(frame: YoungFrame, d: int | None = None) -> int:
    """Dimension of the unitary-group irrep with this highest weight.

    Evaluates the pairwise product (Y_i - Y_j + j - i)/(j - i) over i < j in
    exact integer arithmetic; ``d`` defaults to the frame's row count and may
    pad extra zero rows.
    """
    if d is None:
        d = frame.d
    if frame.nonzero_rows() > d:
        raise ValueError(f"frame {frame} has more than {d} nonzero rows")
    rows = (frame.rows + (0,) * d)[:d]
    numerator = 1
    denominator = 1
    for i in range(d):
        for j in range(i + 1, d):
            numerator *= rows[i] - rows[j] + j - i
            denominator *= j - i
    if numerator % denominator != 0:
        raise AssertionError("Weyl dimension product must divide exactly")
    return numerator // denominator


def log_dim_unitary_irrep(frame: YoungFrame, d: int | None = None) -> float:
    if d is None:
        d = frame.d
    if frame.nonzero_rows() > d:
        raise ValueError(f"frame {frame} has more than {d} nonzero rows")
    rows = (frame.rows + (0,) * d)[:d]
    total = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            total += math.log(rows[i] - rows[j] + j - i) - math.log(j - i)
    return total


def dim_poly_bound(d: int, boxes: int) -> int:
    """(N+1)^(d(d-1)/2), an upper bound for every unitary irrep dimension."""
    if d < 1 or boxes < 0:
        raise ValueError(f"need d >= 1 and boxes >= 0, got d={d}, boxes={boxes}")
    return (boxes + 1) ** (d * (d - 1) // 2)


def frame_to_estimate(frame: YoungFrame) -> Spectrum:
    """Normalized rows Y/N as a point of the closed ordered simplex."""
    n = frame.boxes
    if n == 0:
        raise ValueError("cannot normalize an empty frame")
    return Spectrum(tuple(value / n for value in frame.rows))


def frame_to_exact_estimate(frame: YoungFrame) -> tuple[Fraction, ...]:
    """Y/N with exact rational entries, for boundary-safe comparisons."""
    n = frame.boxes
    if n == 0:
        raise ValueError("cannot normalize an empty frame")
    return tuple(Fraction(value, n) for value in frame.rows)
