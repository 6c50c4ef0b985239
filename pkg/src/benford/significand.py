"""Base-b significand/exponent arithmetic on the half-open interval [1, b).

Every positive real factors as s * b**k with s in [1, b) and integer k.
The significands form an abelian group under multiplication modulo b, and
u = ln(s)/ln(b) maps that group isomorphically onto [0, 1) with addition
mod 1.  All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonPositiveInput

__all__ = [
    "Base",
    "SignificandDecomposition",
    "decompose",
    "first_digit",
    "log_map",
    "mul_mod_b",
]


@dataclass(frozen=True)
class Base:
    """A radix b >= 2, carried explicitly so multi-base code can coexist."""

    b: int

    def __post_init__(self) -> None:
        if not isinstance(self.b, int) or isinstance(self.b, bool) or self.b < 2:
            raise DomainError(f"base must be an integer >= 2, got {self.b!r}")

    @property
    def ln(self) -> float:
        """Natural log of the radix."""
        return math.log(self.b)


@dataclass(frozen=True)
class SignificandDecomposition:
    """A positive real split as significand in [1, b) plus integer exponent.

    ``significand * b**exponent`` reconstructs the original value to within
    a few ulps (relative error at most 4 machine epsilons).
    """

    significand: float
    exponent: int
    base: Base


def _require_positive_finite(value: float) -> None:
    if not math.isfinite(value) or value <= 0.0:
        raise NonPositiveInput(f"expected a positive finite real, got {value!r}")


def _bpow(base: Base, k: int) -> float:
    # float(b)**k mirrors how callers typically build powers of b, so exact
    # powers of the base decompose to significand exactly 1.0.
    return float(base.b) ** k


def decompose(value: float, base: Base) -> SignificandDecomposition:
    """Split ``value`` as significand in [1, b) times an integer power of b.

    The exponent starts from a base-b logarithm estimate; because logs of
    exact powers of b round unpredictably, the estimate is corrected by at
    most two recomputations that pin the significand into [1, b).
    """
    _require_positive_finite(value)
    k = math.floor(math.log(value) / base.ln)
    s = value / _bpow(base, k)
    for _ in range(2):
        if s >= base.b:
            k += 1
        elif s < 1.0:
            k -= 1
        else:
            break
        # recompute from the corrected exponent rather than rescaling s, so
        # exact powers of b land on significand 1.0 with no residual rounding
        s = value / _bpow(base, k)
    if s >= base.b:
        # reachable only when rounding pins the quotient at the right
        # endpoint; the value is then a power of b to within one ulp
        k += 1
        s = 1.0
    elif s < 1.0:
        s = 1.0
    return SignificandDecomposition(s, k, base)


def first_digit(value: float, base: Base) -> int:
    """Leading digit of ``value`` in base b; always in [1, b-1]."""
    return int(decompose(value, base).significand)


def log_map(s: float, base: Base) -> float:
    """Map a significand in [1, b) to [0, 1) via ln(s)/ln(b).

    This is the isomorphism onto the additive circle: products mod b turn
    into sums mod 1.
    """
    if not 1.0 <= s < base.b:
        raise DomainError(f"significand {s!r} outside [1, {base.b})")
    return math.log(s) / base.ln


def mul_mod_b(s1: float, s2: float, base: Base) -> float:
    """Group product of two significands: s1*s2, reduced by b if needed."""
    if not 1.0 <= s1 < base.b:
        raise DomainError(f"significand {s1!r} outside [1, {base.b})")
    if not 1.0 <= s2 < base.b:
        raise DomainError(f"significand {s2!r} outside [1, {base.b})")
    p = s1 * s2
    while p >= base.b:  # at most twice, when rounding pins p at b**2
        p /= base.b
    return p
