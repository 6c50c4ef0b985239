"""Empirical conformance to the first-digit law.

Digit histograms with explicit skip accounting, Pearson chi-square against
the law's cell probabilities, a Kolmogorov-Smirnov uniformity statistic on
log-mapped significands, seeded samplers, and deterministic sequence
generators that carry (significand, exponent) pairs so factorials and large
powers never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._special import chi2_sf
from .errors import DomainError, EmptyData, InsufficientData, NonPositiveInput, UnsupportedRatio
from .nb_core import NBDistribution, first_digit_prob
from .significand import Base, SignificandDecomposition, decompose, first_digit, log_map
from .wrapping import LogNormalParams

__all__ = [
    "SEQUENCE_KINDS",
    "DigitHistogram",
    "ConformanceReport",
    "digit_histogram",
    "chi_square",
    "ks_uniform",
    "tv_to_nb",
    "analyze",
    "sample_nb",
    "sample_lognormal",
    "gen_sequence",
    "gen_sequence_terms",
]

SEQUENCE_KINDS = ("pow2", "factorial", "fibonacci", "geometric")

_FACTORIAL_CAP = 10_000


@dataclass(frozen=True)
class DigitHistogram:
    """First-digit counts for one base; counts[d-1] is the count of digit d."""

    base: Base
    counts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if len(self.counts) != self.base.b - 1:
            raise DomainError(
                f"expected {self.base.b - 1} digit cells, got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts) or sum(self.counts) != self.total:
            raise DomainError("histogram counts must be nonnegative and sum to total")


@dataclass(frozen=True)
class ConformanceReport:
    """Digit histogram plus conformance statistics and skip accounting."""

    histogram: DigitHistogram
    chi_square: float
    chi_square_pvalue: float
    ks_stat: float
    tv_distance: float
    n_skipped_nonpositive: int
    n_skipped_nonfinite: int


def _split_usable(data: Iterable[float]) -> tuple[list[float], int, int]:
    """Partition raw data into usable positives and skip counters."""
    usable: list[float] = []
    n_nonpos = 0
    n_nonfinite = 0
    for v in data:
        v = float(v)
        if not math.isfinite(v):
            n_nonfinite += 1
        elif v <= 0.0:
            n_nonpos += 1
        else:
            usable.append(v)
    return usable, n_nonpos, n_nonfinite


def digit_histogram(
    data: Iterable[float], base: Base
) -> tuple[DigitHistogram, int, int]:
    """Bin data by first digit; junk entries are counted, never dropped.

    Returns (histogram, n_skipped_nonpositive, n_skipped_nonfinite).
    """
    usable, n_nonpos, n_nonfinite = _split_usable(data)
    if not usable:
        raise EmptyData("no usable entries after skipping nonpositive/nonfinite")
    counts = [0] * (base.b - 1)
    for v in usable:
        counts[first_digit(v, base) - 1] += 1
    hist = DigitHistogram(base, tuple(counts), len(usable))
    return hist, n_nonpos, n_nonfinite


def chi_square(hist: DigitHistogram) -> tuple[float, float]:
    """Pearson statistic against the first-digit law and its p-value.

    Degrees of freedom are b - 2: b - 1 cells with fully specified
    probabilities.  Requires at least 5 expected observations per cell on
    average (total >= 5 (b - 1)).
    """
    b = hist.base.b
    if hist.total < 5 * (b - 1):
        raise InsufficientData(
            f"chi-square needs total >= {5 * (b - 1)}, got {hist.total}"
        )
    dist = NBDistribution(hist.base)
    stat = 0.0
    for d, obs in enumerate(hist.counts, start=1):
        expected = hist.total * first_digit_prob(d, dist)
        diff = obs - expected
        stat += diff * diff / expected
    return stat, chi2_sf(stat, b - 2)


def ks_uniform(data: Iterable[float], base: Base) -> float:
    """Kolmogorov-Smirnov distance of log-mapped significands from uniform.

    Exact sorted-sample form: max over i of max(i/n - u_(i), u_(i) - (i-1)/n).
    Nonpositive and nonfinite entries are skipped as in digit_histogram.
    """
    usable, _, _ = _split_usable(data)
    if not usable:
        raise EmptyData("no usable entries for the KS statistic")
    u = np.sort(
        np.array([log_map(decompose(v, base).significand, base) for v in usable])
    )
    n = len(u)
    i = np.arange(1, n + 1)
    return float(max((i / n - u).max(), (u - (i - 1) / n).max()))


def tv_to_nb(hist: DigitHistogram) -> float:
    """Total-variation distance between digit frequencies and the law."""
    dist = NBDistribution(hist.base)
    return 0.5 * sum(
        abs(obs / hist.total - first_digit_prob(d, dist))
        for d, obs in enumerate(hist.counts, start=1)
    )


def analyze(data: Iterable[float], base: Base) -> ConformanceReport:
    """Full conformance pipeline: histogram, chi-square, KS, TV, skips."""
    usable, n_nonpos, n_nonfinite = _split_usable(data)
    if not usable:
        raise EmptyData("no usable entries after skipping nonpositive/nonfinite")
    hist, _, _ = digit_histogram(usable, base)
    stat, pvalue = chi_square(hist)
    return ConformanceReport(
        histogram=hist,
        chi_square=stat,
        chi_square_pvalue=pvalue,
        ks_stat=ks_uniform(usable, base),
        tv_distance=tv_to_nb(hist),
        n_skipped_nonpositive=n_nonpos,
        n_skipped_nonfinite=n_nonfinite,
    )


def sample_nb(n: int, base: Base, seed: int) -> np.ndarray:
    """n exact draws from the first-digit law via the inverse cdf b**U.

    Deterministic for a fixed seed; single stream, no parallel splitting.
    """
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n!r}")
    rng = np.random.default_rng(seed)
    return float(base.b) ** rng.random(n)


def sample_lognormal(n: int, p: LogNormalParams, seed: int) -> np.ndarray:
    """n draws of exp(M + s Z) with Z standard normal; seeded and reproducible."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n!r}")
    rng = np.random.default_rng(seed)
    return np.exp(p.M + p.s * rng.standard_normal(n))


def _check_ratio(ratio: float, base: Base) -> None:
    if not math.isfinite(ratio) or ratio <= 0.0:
        raise NonPositiveInput(f"geometric ratio must be positive, got {ratio!r}")
    if decompose(ratio, base).significand == 1.0:
        raise UnsupportedRatio(
            f"ratio {ratio!r} is an integer power of {base.b}; its sequence "
            "has a constant significand"
        )


def _mul_step(
    s: float, e: int, fs: float, fe: int, b: float
) -> tuple[float, int]:
    """Multiply a carried (significand, exponent) pair by a decomposed factor."""
    p = s * fs
    e += fe
    while p >= b:
        p /= b
        e += 1
    return p, e


def gen_sequence_terms(
    kind: str, n: int, base: Base, ratio: float | None = None
) -> list[SignificandDecomposition]:
    """First n terms of a deterministic sequence in (significand, exponent) form.

    The generator never materializes the raw magnitudes, so factorials and
    large powers cannot overflow; only the significand matters for digit
    statistics anyway.
    """
    if n < 1:
        raise DomainError(f"sequence length must be >= 1, got {n!r}")
    if kind not in SEQUENCE_KINDS:
        raise DomainError(f"unknown sequence kind {kind!r}; expected one of {SEQUENCE_KINDS}")
    b = float(base.b)
    out: list[SignificandDecomposition] = []

    if kind in ("pow2", "geometric"):
        r = 2.0 if kind == "pow2" else ratio
        if r is None:
            raise DomainError("geometric sequences need a ratio")
        _check_ratio(r, base)
        d0 = decompose(r, base)
        s, e = d0.significand, d0.exponent
        for _ in range(n):
            out.append(SignificandDecomposition(s, e, base))
            s, e = _mul_step(s, e, d0.significand, d0.exponent, b)
        return out

    if kind == "factorial":
        if n > _FACTORIAL_CAP:
            raise DomainError(f"factorial sequences are capped at n = {_FACTORIAL_CAP}")
        s, e = 1.0, 0
        out.append(SignificandDecomposition(s, e, base))  # 1!
        for i in range(2, n + 1):
            di = decompose(float(i), base)
            s, e = _mul_step(s, e, di.significand, di.exponent, b)
            out.append(SignificandDecomposition(s, e, base))
        return out

    # fibonacci: add the carried pairs after aligning exponents
    s_prev, e_prev = 1.0, 0
    s_cur, e_cur = 1.0, 0
    out.append(SignificandDecomposition(s_prev, e_prev, base))
    if n > 1:
        out.append(SignificandDecomposition(s_cur, e_cur, base))
    for _ in range(n - 2):
        shift = e_cur - e_prev  # 0 or 1: consecutive terms within one decade
        s_new = s_cur + s_prev / b**shift
        e_new = e_cur
        while s_new >= b:
            s_new /= b
            e_new += 1
        s_prev, e_prev = s_cur, e_cur
        s_cur, e_cur = s_new, e_new
        out.append(SignificandDecomposition(s_cur, e_cur, base))
    return out[:n]


def gen_sequence(
    kind: str, n: int, base: Base, ratio: float | None = None
) -> list[float]:
    """Significands of the first n sequence terms; see gen_sequence_terms."""
    return [t.significand for t in gen_sequence_terms(kind, n, base, ratio)]
