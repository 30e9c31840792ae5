"""Rate function, cumulant generating function, and decay diagnostics.

The error probability of the frame estimator decays exponentially with a
rate given by the relative entropy to the true spectrum. This module
evaluates that rate, its Legendre-dual cumulant generating function, the
finite-N empirical counterparts, and infima over error regions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, EmptyRegionError
from .frames import Spectrum, dim_symmetric_irrep
from .logspace import NEG_INF, log_sum_exp
from .measure import (
    BallComplement,
    FrameSet,
    HalfSpace,
    Region,
    SchurWeylDistribution,
    exact_distribution,
    region_log_probability,
)
from .schur import SchurTable


def _values(spectrum) -> tuple[float, ...]:
    if isinstance(spectrum, Spectrum):
        return spectrum.values
    return tuple(float(v) for v in spectrum)


def rate(s, r) -> float:
    """Relative entropy sum s_j (ln s_j - ln r_j); +inf off the support of r."""
    sv, rv = _values(s), _values(r)
    if len(sv) != len(rv):
        raise ValueError("points must have the same dimension")
    terms = []
    for a, b in zip(sv, rv):
        if a == 0.0:
            continue
        if b == 0.0:
            return math.inf
        terms.append(a * (math.log(a) - math.log(b)))
    return math.fsum(terms)


def cgf(eta: Sequence[float], r) -> float:
    """ln sum_j r_j exp(eta_j), the scaled cumulant generating function."""
    rv = _values(r)
    if len(eta) != len(rv):
        raise ValueError("tilt vector must match the spectrum dimension")
    terms = [math.log(v) + float(e) for v, e in zip(rv, eta) if v > 0.0]
    return log_sum_exp(terms)


def cgf_gradient(eta: Sequence[float], r) -> np.ndarray:
    """Gradient of the CGF: the tilted eigenvalue weights, summing to one."""
    rv = np.asarray(_values(r), dtype=float)
    e = np.asarray(eta, dtype=float)
    logits = np.where(rv > 0.0, np.log(np.where(rv > 0.0, rv, 1.0)) + e, NEG_INF)
    shift = logits.max()
    weights = np.exp(logits - shift)
    return weights / weights.sum()


@dataclass(frozen=True)
class LegendreResult:
    """Outcome of the concave tilt maximization."""

    value: float
    eta: tuple[float, ...]
    iterations: int
    gradient_norm: float


def legendre_of_cgf(
    s,
    r,
    *,
    max_iterations: int = 1000,
    tolerance: float = 1e-10,
) -> LegendreResult:
    """sup_eta (eta . s - c(eta)) by damped Newton ascent on the zero-mean plane.

    Coordinates where s vanishes are removed first (their optimal tilt runs
    to -inf and drops out), so boundary points of the simplex are handled by
    the same closed-form limit. The analytic optimizer ln(s_j/r_j) is used
    only in tests, as a convergence certificate.
    """
    sv, rv = _values(s), _values(r)
    if len(sv) != len(rv):
        raise ValueError("points must have the same dimension")
    support = [j for j, v in enumerate(sv) if v > 0.0]
    if any(rv[j] == 0.0 for j in support):
        return LegendreResult(value=math.inf, eta=(math.nan,) * len(sv), iterations=0, gradient_norm=0.0)
    s_red = np.array([sv[j] for j in support], dtype=float)
    r_red = np.array([rv[j] for j in support], dtype=float)
    m = len(support)
    log_r = np.log(r_red)
    eta = np.zeros(m)

    def objective(e: np.ndarray) -> float:
        return float(e @ s_red) - log_sum_exp(log_r + e)

    def weights(e: np.ndarray) -> np.ndarray:
        logits = log_r + e
        shift = logits.max()
        w = np.exp(logits - shift)
        return w / w.sum()

    value = objective(eta)
    grad = s_red - weights(eta)
    grad_norm = float(np.abs(grad).max())
    iterations = 0
    while grad_norm > tolerance:
        if iterations >= max_iterations:
            raise ConvergenceError(
                f"tilt ascent did not reach gradient norm {tolerance:g} within "
                f"{max_iterations} iterations (last norm {grad_norm:.3e})",
                last_iterate=tuple(eta),
            )
        w = weights(eta)
        hessian = np.diag(w) - np.outer(w, w)
        step = np.linalg.lstsq(hessian, grad, rcond=1e-12)[0]
        step -= step.mean()
        if not np.all(np.isfinite(step)) or float(np.abs(step).max()) == 0.0:
            step = grad - grad.mean()
        if float(grad @ step) <= 0.0:
            step = grad - grad.mean()
        # damped Newton: halve only on a genuine regression, since near the
        # optimum the true improvement drops below rounding
        scale = 1.0
        candidate = eta + step
        new_value = objective(candidate)
        while new_value < value - 1e-13 and scale > 1e-12:
            scale *= 0.5
            candidate = eta + scale * step
            new_value = objective(candidate)
        eta = candidate - candidate.mean()
        value = objective(eta)
        grad = s_red - weights(eta)
        grad_norm = float(np.abs(grad).max())
        iterations += 1
    full_eta = [NEG_INF] * len(sv)
    for j, e in zip(support, eta):
        full_eta[j] = float(e)
    return LegendreResult(
        value=value, eta=tuple(full_eta), iterations=iterations, gradient_norm=grad_norm
    )


def _tilted_log_sum(dist: SchurWeylDistribution, eta: Sequence[float]) -> float:
    e = tuple(float(x) for x in eta)
    terms = [
        lp + math.fsum(x * y for x, y in zip(e, frame.rows))
        for frame, lp in dist.items()
    ]
    return log_sum_exp(terms)


def empirical_cgf(
    d: int,
    boxes: int,
    spectrum: Spectrum,
    eta: Sequence[float],
    *,
    table: SchurTable | None = None,
    dist: SchurWeylDistribution | None = None,
) -> float:
    """(1/N) ln E[exp(eta . Y)] under the exact outcome distribution."""
    if boxes < 1:
        raise ValueError("need at least one box")
    if len(eta) != d:
        raise ValueError("tilt vector must have d entries")
    if dist is None:
        dist = exact_distribution(d, boxes, spectrum, table=table)
    return _tilted_log_sum(dist, eta) / boxes


def j_equivalence_gap(
    d: int,
    boxes: int,
    spectrum: Spectrum,
    eta: Sequence[float],
    *,
    table: SchurTable | None = None,
    dist: SchurWeylDistribution | None = None,
) -> float:
    """(1/N)(ln J - ln J') for the tilted character sum and its highest-weight proxy.

    J sums the true tilted frame probabilities; J' replaces each character
    by exp(Y . h). The highest-weight bounds force the gap into
    [0, (1/N) ln p(N)] with p the polynomial dimension bound, so it vanishes
    as N grows.
    """
    if boxes < 1:
        raise ValueError("need at least one box")
    if len(eta) != d:
        raise ValueError("tilt vector must have d entries")
    if any(a < b for a, b in zip(eta, list(eta)[1:])):
        raise ValueError(f"tilt vector must be non-increasing: {tuple(eta)}")
    if dist is None:
        dist = exact_distribution(d, boxes, spectrum, table=table)
    log_j = _tilted_log_sum(dist, eta)
    e = tuple(float(x) for x in eta)
    h = [math.log(v) if v > 0.0 else NEG_INF for v in spectrum]
    proxy_terms = []
    for frame, lp in dist.items():
        tilt = 0.0
        for y, hj, ej in zip(frame.rows, h, e):
            if y == 0:
                continue
            if hj == NEG_INF:
                tilt = NEG_INF
                break
            tilt += y * (hj + ej)
        if tilt == NEG_INF:
            proxy_terms.append(NEG_INF)
        else:
            proxy_terms.append(tilt + math.log(dim_symmetric_irrep(frame)))
    log_j_proxy = log_sum_exp(proxy_terms)
    return (log_j - log_j_proxy) / boxes


@dataclass(frozen=True)
class RegionInfimum:
    """Infimum of the rate over a region, with a feasible witness when one exists."""

    value: float
    minimizer: Spectrum | None


def _ordered_grid(d: int, resolution: int):
    """Lattice points k/resolution of the closed ordered simplex."""

    def rec(remaining: int, max_part: int, slots: int):
        if slots == 1:
            if remaining <= max_part:
                yield (remaining,)
            return
        lowest = -(-remaining // slots)
        for part in range(min(remaining, max_part), lowest - 1, -1):
            for rest in rec(remaining - part, part, slots - 1):
                yield (part,) + rest

    for ticks in rec(resolution, resolution, d):
        yield tuple(t / resolution for t in ticks)


def _minimize_rate_convex(
    reference: Sequence[float],
    d: int,
    linear_ineqs: list[tuple[np.ndarray, float]],
    x0: np.ndarray,
) -> np.ndarray | None:
    """Minimize the rate over the ordered simplex under extra linear constraints."""
    from scipy import optimize

    rv = np.asarray(reference, dtype=float)
    support = rv > 0.0
    floor = 1e-15

    def objective(x: np.ndarray):
        xs = np.clip(x, floor, 1.0)
        val = float(np.sum(np.where(support, xs * (np.log(xs) - np.log(np.where(support, rv, 1.0))), 0.0)))
        grad = np.where(support, np.log(xs) - np.log(np.where(support, rv, 1.0)) + 1.0, 0.0)
        return val, grad

    constraints = [
        {"type": "eq", "fun": lambda x: np.sum(x) - 1.0, "jac": lambda x: np.ones(d)}
    ]
    for j in range(d - 1):
        a = np.zeros(d)
        a[j], a[j + 1] = 1.0, -1.0
        constraints.append(
            {"type": "ineq", "fun": (lambda x, a=a: a @ x), "jac": (lambda x, a=a: a)}
        )
    for a, b in linear_ineqs:
        constraints.append(
            {"type": "ineq", "fun": (lambda x, a=a, b=b: a @ x - b), "jac": (lambda x, a=a: a)}
        )
    bounds = [(0.0, 1.0) if support[j] else (0.0, 0.0) for j in range(d)]
    result = optimize.minimize(
        objective,
        x0,
        jac=True,
        bounds=bounds,
        constraints=constraints,
        method="SLSQP",
        options={"maxiter": 300, "ftol": 1e-14},
    )
    x = np.asarray(result.x, dtype=float)
    if not np.all(np.isfinite(x)):
        return None
    violation = abs(float(np.sum(x)) - 1.0)
    violation = max(violation, float(np.max(np.maximum(x[1:] - x[:-1], 0.0), initial=0.0)))
    for a, b in linear_ineqs:
        violation = max(violation, max(0.0, b - float(a @ x)))
    if violation > 1e-8:
        return None
    return x


def _certify_point(raw: np.ndarray, region: Region, reference: Sequence[float]):
    """Turn an approximate minimizer into a verified region member, if possible."""
    d = len(raw)
    candidates = [raw]
    # tiny pushes past the region boundary, for minimizers that sit exactly on it
    for j in range(d):
        for sign in (+1.0, -1.0):
            shifted = raw.copy()
            shifted[j] += sign * 1e-9
            shifted = np.clip(shifted, 0.0, None)
            total = shifted.sum()
            if total > 0:
                candidates.append(shifted / total)
    for candidate in candidates:
        ordered = np.sort(candidate)[::-1]
        total = float(ordered.sum())
        if total <= 0.0:
            continue
        try:
            spectrum = Spectrum(tuple(float(v / total) for v in ordered))
        except ValueError:
            continue
        if region.contains_point(spectrum.values):
            return spectrum
    return None


def inf_rate_over_region(
    region: Region,
    reference: Spectrum,
    *,
    grid_resolution: int = 200,
) -> RegionInfimum:
    """Minimize the rate over a region by grid seeding plus convex refinement.

    The rate is convex but the region need not be; ball complements and
    half-spaces are decomposed into convex slabs that are each solved
    exactly, other regions fall back to multistart refinement from the grid.
    Raises EmptyRegionError when no feasible point is found.
    """
    d = reference.d
    rv = np.asarray(reference.values, dtype=float)

    if isinstance(region, FrameSet):
        best = None
        for rows in sorted(region.rows_set, reverse=True):
            total = sum(rows)
            if total == 0:
                continue
            point = Spectrum(tuple(v / total for v in rows))
            value = rate(point, reference)
            if best is None or value < best.value:
                best = RegionInfimum(value=value, minimizer=point)
        if best is None:
            raise EmptyRegionError("frame list region contains no usable frame")
        return best

    seeds: list[tuple[float, tuple[float, ...]]] = []
    for point in _ordered_grid(d, grid_resolution):
        if region.contains_point(point):
            seeds.append((rate(point, reference), point))
    seeds.sort(key=lambda item: item[0])

    pieces: list[list[tuple[np.ndarray, float]]] = []
    if isinstance(region, BallComplement):
        for j in range(d):
            axis = np.zeros(d)
            axis[j] = 1.0
            center_j, radius = float(region.center[j]), float(region.radius)
            pieces.append([(axis, center_j + radius)])
            pieces.append([(-axis, -(center_j - radius))])
    elif isinstance(region, HalfSpace):
        pieces.append([(np.asarray(region.normal, dtype=float), region.offset)])

    candidates: list[Spectrum] = []
    if pieces:
        for ineqs in pieces:
            x0 = None
            for value, point in seeds:
                if all(a @ np.asarray(point) - b >= 0 for a, b in ineqs):
                    x0 = np.asarray(point, dtype=float)
                    break
            if x0 is None:
                x0 = rv.copy()
            solution = _minimize_rate_convex(reference.values, d, ineqs, x0)
            if solution is not None:
                certified = _certify_point(solution, region, reference.values)
                if certified is not None:
                    candidates.append(certified)
    else:
        for value, point in seeds[:8]:
            solution = _minimize_rate_convex(
                reference.values, d, [], np.asarray(point, dtype=float)
            )
            if solution is None:
                continue
            certified = _certify_point(solution, region, reference.values)
            if certified is not None:
                candidates.append(certified)
            else:
                # walk back toward the feasible seed until membership holds
                lo, hi = 0.0, 1.0
                seed_arr = np.asarray(point, dtype=float)
                for _ in range(60):
                    mid = 0.5 * (lo + hi)
                    blend = (1 - mid) * solution + mid * seed_arr
                    blend /= blend.sum()
                    if region.contains_point(tuple(np.sort(blend)[::-1])):
                        hi = mid
                    else:
                        lo = mid
                blend = (1 - hi) * solution + hi * seed_arr
                certified = _certify_point(blend, region, reference.values)
                if certified is not None:
                    candidates.append(certified)

    for value, point in seeds[:1]:
        candidates.append(Spectrum(point))

    if not candidates:
        raise EmptyRegionError("region contains no point of the ordered simplex")

    best_point = min(candidates, key=lambda p: rate(p, reference))
    return RegionInfimum(value=rate(best_point, reference), minimizer=best_point)


@dataclass(frozen=True)
class RatePoint:
    """One scan sample: box count, log region probability, and decay rate."""

    boxes: int
    log_prob: float
    decay: float
    empty: bool


@dataclass(frozen=True)
class RateProfile:
    """Decay-rate scan against the rate-function target."""

    region: Region
    points: tuple[RatePoint, ...]
    target: RegionInfimum


def rate_scan(
    d: int,
    spectrum: Spectrum,
    region: Region,
    boxes_list: Sequence[int],
    *,
    table: SchurTable | None = None,
    grid_resolution: int = 200,
) -> RateProfile:
    """Tabulate a_N = -(1/N) ln K_N(region) against inf of the rate over the region."""
    if not boxes_list:
        raise ValueError("need at least one box count")
    if any(n < 1 for n in boxes_list):
        raise ValueError("box counts must be positive")
    try:
        target = inf_rate_over_region(region, spectrum, grid_resolution=grid_resolution)
    except EmptyRegionError:
        target = RegionInfimum(value=math.inf, minimizer=None)
    if table is None:
        table = SchurTable(spectrum, max(boxes_list))
    points = []
    for n in boxes_list:
        dist = exact_distribution(d, n, spectrum, table=table)
        log_prob = region_log_probability(dist, region)
        if log_prob == NEG_INF:
            points.append(RatePoint(boxes=n, log_prob=NEG_INF, decay=math.inf, empty=True))
        else:
            points.append(
                RatePoint(boxes=n, log_prob=log_prob, decay=-log_prob / n, empty=False)
            )
    return RateProfile(region=region, points=tuple(points), target=target)
