"""Growth analysis of the triangle-count sequence.

Everything here consumes exact CountRecord values and only moves to floating
point at the moment a logarithm is taken.  The observables:

* the normalized-log sequence f(n) = ln(ET(n)) / ln(n + 1), which appears to
  increase toward a constant a little above 5;
* a square-root-rational extrapolant g(x) = a + b / (sqrt(x) + c), pinned to
  f at three chosen sample points (the fit is an exact interpolation, solved
  in closed form);
* forward differences of ET in exact integer arithmetic, with the first
  difference modeled by a power law h(x) = C (x + 1)^k via log-log least
  squares (the conventional choice; outputs label it as such);
* CSV plot data for the three standard views, with fixed 12-decimal
  formatting so emitted files are byte-reproducible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "FitError",
    "GrowthSample",
    "MonotonicityReport",
    "PowerFit",
    "SqrtRationalFit",
    "REFERENCE_GROWTH_FIT",
    "REFERENCE_GROWTH_DEVIATION",
    "REFERENCE_DIFFERENCE_FIT",
    "emit_plot_data",
    "finite_difference",
    "fit_g_three_points",
    "fit_power",
    "growth_sequence",
    "mean_abs_deviation",
    "monotonicity_report",
]

logger = logging.getLogger(__name__)

PLOT_KINDS = ("growth", "first-difference", "third-difference")


class FitError(ValueError):
    """The requested fit is degenerate or its inputs are unusable."""


@dataclass(frozen=True)
class GrowthSample:
    """One point of the normalized-log sequence: f(n) = ln(ET(n)) / ln(n+1)."""

    n: int
    f_value: float


@dataclass(frozen=True)
class SqrtRationalFit:
    """Parameters of g(x) = a + b / (sqrt(x) + c); a is the limit at infinity."""

    a: float
    b: float
    c: float

    def predict(self, x: float) -> float:
        root = math.sqrt(x)
        if root + self.c == 0:
            raise FitError(f"g undefined at x={x}: sqrt(x) + c vanishes")
        return self.a + self.b / (root + self.c)


@dataclass(frozen=True)
class PowerFit:
    """Parameters of h(x) = coefficient * (x + 1) ** exponent."""

    coefficient: float
    exponent: float

    def predict(self, x: float) -> float:
        return self.coefficient * (x + 1) ** self.exponent


# Reference constants for A102698: the published square-root-rational
# extrapolant of f, its mean |f - g| over k = 1..1105, and the power-law
# model of the first differences.  Used as regression anchors; never
# re-derived here.
REFERENCE_GROWTH_FIT = SqrtRationalFit(5.079282921, -0.7091588389, -0.8403164433)
REFERENCE_GROWTH_DEVIATION = 0.002638971108
REFERENCE_DIFFERENCE_FIT = PowerFit(2.660972140, 4.151431798)


def _as_pairs(records: Iterable) -> list[tuple[int, int]]:
    pairs = []
    for record in records:
        if hasattr(record, "n"):
            pairs.append((record.n, record.count))
        else:
            n, count = record
            pairs.append((n, count))
    return pairs


def growth_sequence(records: Iterable) -> list[GrowthSample]:
    """Normalized-log samples for every record where the log is defined.

    n = 0 (zero log base) and zero counts (log of zero) are skipped with a
    logged notice rather than an error, so a full [0, N] count range can be
    fed in directly.
    """
    samples = []
    for n, count in _as_pairs(records):
        if n < 1 or count < 1:
            logger.info("growth_sequence: skipping (n=%d, count=%d): log undefined", n, count)
            continue
        samples.append(GrowthSample(n, math.log(count) / math.log(n + 1)))
    return samples


def _sample_map(samples: Iterable[GrowthSample]) -> dict[int, float]:
    return {s.n: s.f_value for s in samples}


def fit_g_three_points(
    samples: Iterable[GrowthSample], i1: int, i2: int, i3: int
) -> SqrtRationalFit:
    """Interpolate g(x) = a + b/(sqrt(x)+c) through f at three sample indices.

    Writing t_j = sqrt(i_j), eliminating a and then b reduces the system to
    one linear equation in c:

        (f1 - f2) / (f1 - f3) = (t2 - t1)(t3 + c) / ((t3 - t1)(t2 + c))

    after which b and a follow directly.  Degenerate geometry (equal f
    values, coincident points, a vanishing denominator, or a pole at one of
    the points) raises FitError.  The returned fit reproduces the three
    anchor values to better than 1e-9 by construction, and that residual is
    re-checked before returning.
    """
    if len({i1, i2, i3}) != 3:
        raise FitError(f"need three distinct fit points, got ({i1}, {i2}, {i3})")
    values = _sample_map(samples)
    try:
        f1, f2, f3 = values[i1], values[i2], values[i3]
    except KeyError as exc:
        raise FitError(f"no sample at n={exc.args[0]}") from exc
    t1, t2, t3 = math.sqrt(i1), math.sqrt(i2), math.sqrt(i3)
    if f1 == f3 or f1 == f2:
        raise FitError("degenerate fit: equal f values leave the system singular")
    ratio = (f1 - f2) / (f1 - f3)
    denom = ratio * (t3 - t1) - (t2 - t1)
    if denom == 0:
        raise FitError("degenerate fit: elimination denominator vanished")
    c = ((t2 - t1) * t3 - ratio * (t3 - t1) * t2) / denom
    for t in (t1, t2, t3):
        if t + c == 0:
            raise FitError("degenerate fit: pole at an anchor point")
    b = (f1 - f2) * (t1 + c) * (t2 + c) / (t2 - t1)
    a = f1 - b / (t1 + c)
    fit = SqrtRationalFit(a, b, c)
    for point, value in ((i1, f1), (i2, f2), (i3, f3)):
        if abs(fit.predict(point) - value) >= 1e-9:
            raise FitError(f"fit residual at n={point} exceeds 1e-9")
    return fit


def mean_abs_deviation(
    samples: Iterable[GrowthSample], fit: SqrtRationalFit, k_lo: int, k_hi: int
) -> float:
    """Mean of |f(k) - g(k)| over integer k in [k_lo, k_hi]."""
    if k_lo > k_hi:
        raise ValueError(f"empty range [{k_lo}, {k_hi}]")
    values = _sample_map(samples)
    total = 0.0
    for k in range(k_lo, k_hi + 1):
        if k not in values:
            raise ValueError(f"no growth sample at n={k}; range [{k_lo}, {k_hi}] not covered")
        total += abs(values[k] - fit.predict(k))
    return total / (k_hi - k_lo + 1)


def finite_difference(values: Sequence[int], order: int) -> list[int]:
    """Forward difference applied ``order`` times, in exact integer arithmetic."""
    if order < 1:
        raise ValueError(f"difference order must be >= 1, got {order}")
    if len(values) <= order:
        raise ValueError(
            f"need more than {order} values for an order-{order} difference, got {len(values)}"
        )
    out = list(values)
    for _ in range(order):
        out = [out[i + 1] - out[i] for i in range(len(out) - 1)]
    return out


def fit_power(diffs: Sequence[int], n_start: int = 0) -> PowerFit:
    """Log-log least squares of h(x) = C (x+1)^k against first differences.

    ``diffs[i]`` is treated as the difference at x = n_start + i.  All
    values must be positive (the fit lives in log space).
    """
    if len(diffs) < 2:
        raise FitError(f"need at least two differences to fit, got {len(diffs)}")
    xs = []
    ys = []
    for i, diff in enumerate(diffs):
        if diff <= 0:
            raise FitError(f"non-positive difference {diff} at x={n_start + i}")
        xs.append(math.log(n_start + i + 1))
        ys.append(math.log(diff))
    count = len(xs)
    mean_x = sum(xs) / count
    mean_y = sum(ys) / count
    var = sum((x - mean_x) ** 2 for x in xs)
    if var == 0:
        raise FitError("all differences share one x value; slope undefined")
    slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / var
    intercept = mean_y - slope * mean_x
    return PowerFit(math.exp(intercept), slope)


@dataclass(frozen=True)
class MonotonicityReport:
    """Where the growth sequence fails to increase strictly.

    ``violations`` holds every sample index n whose successor sample has
    f(next) <= f(n); empty means the checked range is strictly increasing.
    """

    checked_pairs: int
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def monotonicity_report(samples: Iterable[GrowthSample]) -> MonotonicityReport:
    """Check f for strict increase across consecutive samples."""
    ordered = sorted(samples, key=lambda s: s.n)
    violations = [
        ordered[i].n
        for i in range(len(ordered) - 1)
        if ordered[i + 1].f_value <= ordered[i].f_value
    ]
    return MonotonicityReport(max(len(ordered) - 1, 0), tuple(violations))


def _contiguous_pairs(records: Iterable) -> list[tuple[int, int]]:
    pairs = sorted(_as_pairs(records))
    for left, right in zip(pairs, pairs[1:]):
        if right[0] != left[0] + 1:
            raise ValueError(f"records must be contiguous; gap between n={left[0]} and n={right[0]}")
    return pairs


def emit_plot_data(
    kind: str,
    records: Iterable,
    growth_fit: SqrtRationalFit | None = None,
    power_fit: PowerFit | None = None,
) -> str:
    """CSV plot data for one of the three standard views.

    * ``growth``: columns n, f and, when a growth_fit is given, its g(n).
    * ``first-difference``: columns n, d1 (= ET(n+1) - ET(n)) and, with a
      power_fit, its h(n).
    * ``third-difference``: columns n, d3 — exact integers, no model.

    Floats are written with exactly 12 decimal places so the output is
    byte-for-byte reproducible; differences stay exact integers.
    """
    if kind == "growth":
        header = "n,f,g" if growth_fit is not None else "n,f"
        rows = []
        for sample in growth_sequence(records):
            row = f"{sample.n},{sample.f_value:.12f}"
            if growth_fit is not None:
                row += f",{growth_fit.predict(sample.n):.12f}"
            rows.append(row)
    elif kind == "first-difference":
        pairs = _contiguous_pairs(records)
        diffs = finite_difference([count for _, count in pairs], 1) if len(pairs) > 1 else []
        header = "n,d1,h" if power_fit is not None else "n,d1"
        rows = []
        for (n, _), diff in zip(pairs, diffs):
            row = f"{n},{diff}"
            if power_fit is not None:
                row += f",{power_fit.predict(n):.12f}"
            rows.append(row)
    elif kind == "third-difference":
        pairs = _contiguous_pairs(records)
        diffs = finite_difference([count for _, count in pairs], 3) if len(pairs) > 3 else []
        header = "n,d3"
        rows = [f"{n},{diff}" for (n, _), diff in zip(pairs, diffs)]
    else:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    return "\n".join([header, *rows]) + "\n"
