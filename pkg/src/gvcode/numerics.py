"""Scalar numerics: the exponential integral E1 and a bracketed root finder."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = ["Bracket", "NoSignChangeError", "exp_integral_e1", "solve_bracketed"]

EULER_GAMMA = 0.57721566490153286060651209008240243

_SERIES_LIMIT = 1.0
_MAX_TERMS = 500


class NoSignChangeError(ValueError):
    pass


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got ({self.lo}, {self.hi})")


def _e1_series(y):
    # E1(y) = -gamma - ln y - sum_{n>=1} (-y)^n / (n * n!)
    total = 0.0
    term = 1.0
    for n in range(1, _MAX_TERMS):
        term *= -y / n
        contrib = term / n
        total += contrib
        if abs(contrib) < 1e-17 * abs(total):
            break
    return -EULER_GAMMA - math.log(y) - total


def _e1_continued_fraction(y):
    # modified Lentz on e^{-y} / (y + 1 - 1/(y + 3 - 4/(y + 5 - ...)))
    tiny = 1e-300
    b = y + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ArithmeticError(f"E1 continued fraction did not converge at y={y}")
    return h * math.exp(-y)


def exp_integral_e1(y: float) -> float:
    """E1(y) = integral from y to infinity of exp(-x)/x dx, for y > 0.

    Power series below y = 1, continued fraction above.
    """
    if not y > 0:
        raise ValueError(f"E1 is only defined here for y > 0, got {y!r}")
    if math.isinf(y):
        return 0.0
    if y <= _SERIES_LIMIT:
        return _e1_series(y)
    return _e1_continued_fraction(y)


def solve_bracketed(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-15,
    max_iter: int = 200,
    polish: bool = True,
) -> float:
    """Find a root of ``f`` inside ``bracket`` by bisection.

    Stops once the bracket is narrower than ``tol`` (absolute).  With
    ``polish`` a few secant steps are taken inside the final bracket;
    a step that leaves it is discarded.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise NoSignChangeError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )

    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid

    x = lo if abs(flo) <= abs(fhi) else hi
    if polish and fhi != flo:
        guess = lo - flo * (hi - lo) / (fhi - flo)
        if lo <= guess <= hi and abs(f(guess)) < abs(f(x)):
            x = guess
    return x
