"""Exact outcome distribution of the Young-frame measurement.

For N copies of a d-level state with spectrum r, the outcome probability of
a frame Y factors into a Schur polynomial value times a standard-tableau
count. Probabilities live in log space and all reductions run in the
canonical frame order, so every constructed distribution is bit-reproducible.
"""
from __future__ import annotations

import abc
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator, Sequence

from .errors import ResourceLimitError
from .frames import (
    YoungFrame,
    Spectrum,
    dim_symmetric_irrep,
    enumerate_frames,
    frame_count,
    frame_to_exact_estimate,
)
from .logspace import NEG_INF, log_sum_exp
from .schur import SchurTable

MAX_DIMENSION = 4
MAX_BOXES = 400


@dataclass(frozen=True)
class SchurWeylDistribution:
    """Exact map frame -> log probability for fixed (d, N, spectrum)."""

    spectrum: Spectrum
    frames: tuple[YoungFrame, ...]
    log_probs: tuple[float, ...]

    @property
    def d(self) -> int:
        return self.frames[0].d

    @property
    def boxes(self) -> int:
        return self.frames[0].boxes

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {frame.rows: i for i, frame in enumerate(self.frames)}

    def log_prob(self, frame: YoungFrame) -> float:
        return self.log_probs[self._index[frame.rows]]

    def prob(self, frame: YoungFrame) -> float:
        return math.exp(self.log_prob(frame))

    def items(self) -> Iterator[tuple[YoungFrame, float]]:
        return zip(self.frames, self.log_probs)

    def total_log_prob(self) -> float:
        return log_sum_exp(self.log_probs)


def exact_distribution(
    d: int,
    boxes: int,
    spectrum: Spectrum,
    *,
    table: SchurTable | None = None,
) -> SchurWeylDistribution:
    """Construct the full outcome distribution over frames with d rows, N boxes.

    A prebuilt ``table`` for the same spectrum may be shared across calls
    with different box counts; entries come out identical either way.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if boxes < 0:
        raise ValueError(f"need a non-negative box count, got {boxes}")
    if spectrum.d != d:
        raise ValueError(f"spectrum has {spectrum.d} entries, expected {d}")
    if d > MAX_DIMENSION or boxes > MAX_BOXES:
        cap = frame_count(MAX_DIMENSION, MAX_BOXES)
        raise ResourceLimitError(
            f"exact enumeration is capped at d <= {MAX_DIMENSION} and N <= {MAX_BOXES} "
            f"(at most {cap} frames); got d={d}, N={boxes}"
        )
    if table is None:
        table = SchurTable(spectrum, boxes)
    elif table.spectrum != spectrum:
        raise ValueError("table was built for a different spectrum")
    frames = tuple(enumerate_frames(d, boxes))
    log_probs = tuple(
        table.log_value(frame.rows) + math.log(dim_symmetric_irrep(frame))
        for frame in frames
    )
    return SchurWeylDistribution(spectrum=spectrum, frames=frames, log_probs=log_probs)


class Region(abc.ABC):
    """Measurable subset of the closed ordered simplex."""

    #: True when the interior is dense in the closure, which is the
    #: regularity needed to compare decay rates against the rate function.
    small_boundary: bool = False

    @abc.abstractmethod
    def contains_point(self, values: Sequence[float]) -> bool:
        """Membership for an arbitrary simplex point given as floats."""

    def contains_estimate(self, frame: YoungFrame) -> bool:
        """Membership for a frame estimate Y/N; exact where the region data allow."""
        boxes = frame.boxes
        if boxes == 0:
            raise ValueError("cannot normalize an empty frame")
        return self.contains_point([v / boxes for v in frame.rows])


@dataclass(frozen=True)
class BallComplement(Region):
    """Points at sup-distance strictly greater than ``radius`` from ``center``.

    The complement of the closed ball, so radius zero keeps every point
    except the center itself. Frame estimates are compared in exact rational
    arithmetic, eliminating boundary misclassification; pass the center and
    radius as ``Fraction`` values (e.g. built from decimal text) when the
    region data are meant as exact decimals rather than binary floats.
    """

    center: tuple[float | Fraction, ...]
    radius: float | Fraction
    small_boundary: bool = field(default=True, init=False)

    @cached_property
    def _exact_center(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self.center)

    @cached_property
    def _exact_radius(self) -> Fraction:
        return Fraction(self.radius)

    @cached_property
    def _float_center(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.center)

    def contains_point(self, values: Sequence[float]) -> bool:
        distance = max(abs(v - c) for v, c in zip(values, self._float_center))
        return distance > float(self.radius)

    def contains_estimate(self, frame: YoungFrame) -> bool:
        estimate = frame_to_exact_estimate(frame)
        return any(
            abs(e - c) > self._exact_radius
            for e, c in zip(estimate, self._exact_center)
        )


@dataclass(frozen=True)
class HalfSpace(Region):
    """Points with normal . s >= offset."""

    normal: tuple[float, ...]
    offset: float
    small_boundary: bool = field(default=True, init=False)

    def contains_point(self, values: Sequence[float]) -> bool:
        return math.fsum(n * v for n, v in zip(self.normal, values)) >= self.offset


@dataclass(frozen=True)
class FrameSet(Region):
    """Explicit list of frames; membership is exact row equality."""

    rows_set: frozenset[tuple[int, ...]]
    small_boundary: bool = field(default=False, init=False)

    @classmethod
    def of(cls, frames: Sequence[YoungFrame]) -> "FrameSet":
        return cls(rows_set=frozenset(frame.rows for frame in frames))

    def contains_point(self, values: Sequence[float]) -> bool:
        return False

    def contains_estimate(self, frame: YoungFrame) -> bool:
        return frame.rows in self.rows_set


class PredicateRegion(Region):
    """Arbitrary membership callable; carries no boundary guarantee."""

    def __init__(self, predicate: Callable[[Sequence[float]], bool], *, small_boundary: bool = False):
        self._predicate = predicate
        self.small_boundary = small_boundary

    def contains_point(self, values: Sequence[float]) -> bool:
        return bool(self._predicate(values))


def region_log_probability(dist: SchurWeylDistribution, region: Region) -> float:
    """ln of the total outcome probability of frames whose estimate lies in the region."""
    members = [
        lp for frame, lp in dist.items() if region.contains_estimate(frame)
    ]
    return log_sum_exp(members)


def region_probability(dist: SchurWeylDistribution, region: Region) -> float:
    log_value = region_log_probability(dist, region)
    return 0.0 if log_value == NEG_INF else math.exp(log_value)


def distribution_mode(dist: SchurWeylDistribution) -> YoungFrame:
    """Most probable frame; ties go to the lexicographically larger rows."""
    best_frame = dist.frames[0]
    best = dist.log_probs[0]
    for frame, lp in dist.items():
        if lp > best:
            best, best_frame = lp, frame
    return best_frame


def expectation_of(
    dist: SchurWeylDistribution, f: Callable[[Sequence[float]], float]
) -> float:
    """Exact expectation of f(Y/N) under the outcome distribution."""
    n = dist.boxes
    if n == 0:
        raise ValueError("estimates are undefined for an empty frame")
    terms = [
        f(tuple(v / n for v in frame.rows)) * math.exp(lp) for frame, lp in dist.items()
    ]
    return math.fsum(terms)
