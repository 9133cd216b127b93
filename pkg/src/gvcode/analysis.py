"""
Expected codeword lengths for the geometric-source code.

Closed-form exact length, a brute-force enumeration oracle, the source
entropy, the small-p asymptotic law and the periodic fluctuation term
``f(z) = 4 * 2**(-2**(1 - {z})) - {z} - 1`` with its constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codec import CodeParams, compute_params
from .numerics import Bracket, exp_integral_e1, solve_bracketed

__all__ = [
    "AnalysisRow",
    "FluctuationConstants",
    "analyze",
    "compute_constants",
    "entropy",
    "expected_length_asymptotic",
    "expected_length_enumeration",
    "expected_length_exact",
    "fluctuation",
    "remainder_term",
]

LN2 = math.log(2.0)
LOG2E = 1.0 / LN2
LOG2_LN2 = math.log2(LN2)

# elements per enumeration chunk
_CHUNK = 1 << 21


def _check_p(p):
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p!r}")


def _pow1m(p, n):
    """(1 - p)**n, accurate for tiny p."""
    return math.exp(n * math.log1p(-p))


def remainder_term(p: float, params: CodeParams) -> float:
    """Expected length of the truncated binary remainder code.

    ``l + ((1-p)**(m-2h) - (1-p)**m) / (1 - (1-p)**m)``
    """
    m, l, h = params.m, params.l, params.h
    q = -math.expm1(m * math.log1p(-p))
    return l + (_pow1m(p, m - 2 * h) - _pow1m(p, m)) / q


def expected_length_exact(p: float) -> float:
    """Closed-form expected codeword length in bits."""
    _check_p(p)
    params = compute_params(p)
    q = -math.expm1(params.m * math.log1p(-p))
    return remainder_term(p, params) + 1.0 / q


def _enumeration_tail(p, params, k):
    # codeword length of j is at most j/m + l + 2, so
    # sum_{j>=k} p(1-p)^j len(j) <= (1-p)^k [k/m + (1-p)/(p m) + l + 2]
    m = params.m
    return _pow1m(p, k) * (k / m + (1.0 - p) / (p * m) + params.l + 2)


def expected_length_enumeration(p: float, tol: float = 1e-12) -> float:
    """Sum Pr[K=k] * len(code(k)) term by term until the tail is below ``tol``.

    Lengths come from the remainder codebook of each block of ``m``
    consecutive symbols; the returned partial sum is within ``tol`` of the
    true expectation.
    """
    _check_p(p)
    if not tol > 0:
        raise ValueError("tol must be positive")
    params = compute_params(p)
    m, l = params.m, params.l
    log_keep = math.log1p(-p)

    # smallest whole number of blocks whose tail bound is below tol
    blocks = 1
    while _enumeration_tail(p, params, blocks * m) >= tol:
        blocks *= 2
    lo, hi = blocks // 2, blocks
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _enumeration_tail(p, params, mid * m) < tol:
            hi = mid
        else:
            lo = mid
    blocks = hi

    r = np.arange(m, dtype=np.float64)
    rem_len = np.where(r < params.short_count, l, l + 1).astype(np.float64)
    decay = p * np.exp(r * log_keep)

    rows = max(1, _CHUNK // m)
    partials = []
    for start in range(0, blocks, rows):
        s = np.arange(start, min(start + rows, blocks), dtype=np.float64)
        block_weight = np.exp(s * m * log_keep)
        weights = np.outer(block_weight, decay)
        lengths = (s + 1.0)[:, None] + rem_len[None, :]
        partials.append(float(np.sum(weights * lengths)))
    return math.fsum(partials)


def entropy(p: float) -> float:
    """Entropy of the geometric distribution in bits.

    ``log2(1/p) - ((1-p)/p) * log2(1-p)``
    """
    _check_p(p)
    return -math.log2(p) - (1.0 - p) / p * math.log1p(-p) * LOG2E


def fluctuation(z: float) -> float:
    """Period-1 fluctuation term ``4 * 2**(-2**(1 - {z})) - {z} - 1``."""
    t = z - math.floor(z)
    if t >= 1.0:
        t = 0.0
    return 4.0 * 2.0 ** (-(2.0 ** (1.0 - t))) - t - 1.0


def expected_length_asymptotic(p: float) -> float:
    """Small-p approximation ``z + 2 + f(z)`` with ``z = log2(1/p) + log2(log 2)``."""
    _check_p(p)
    z = -math.log2(p) + LOG2_LN2
    return z + 2.0 + fluctuation(z)


@dataclass(frozen=True)
class FluctuationConstants:
    omega: float
    x0: float
    x1: float
    z0: float
    z1: float
    f_min: float
    f_max: float
    redundancy_const: float

    def as_dict(self):
        return {
            "omega": self.omega,
            "x0": self.x0,
            "x1": self.x1,
            "z0": self.z0,
            "z1": self.z1,
            "f_min": self.f_min,
            "f_max": self.f_max,
            "redundancy_const": self.redundancy_const,
        }


def _extremum_equation(x):
    return x * math.exp(-x) - LOG2E / 4.0


def _z_of_root(x):
    z = 1.0 + LOG2_LN2 - math.log2(x)
    return z - math.floor(z)


@lru_cache(maxsize=None)
def compute_constants() -> FluctuationConstants:
    # average of f via x = 2**(1-z) log 2
    omega = 4.0 * LOG2E * (exp_integral_e1(LN2) - exp_integral_e1(2.0 * LN2)) - 1.5

    # x e^{-x} peaks at x = 1, so there is one root on each side
    x1 = solve_bracketed(_extremum_equation, Bracket(0.01, 1.0))
    x0 = solve_bracketed(_extremum_equation, Bracket(1.0, 3.0))
    z0, z1 = _z_of_root(x0), _z_of_root(x1)
    return FluctuationConstants(
        omega=omega,
        x0=x0,
        x1=x1,
        z0=z0,
        z1=z1,
        f_min=fluctuation(z0),
        f_max=fluctuation(z1),
        redundancy_const=LOG2_LN2 + 2.0 + omega - LOG2E,
    )


@dataclass(frozen=True)
class AnalysisRow:
    p: float
    m: int
    l: int
    h: int
    q: float
    theta: float
    exact_len: float
    entropy: float
    asymptotic_len: float
    redundancy: float


def analyze(p: float) -> AnalysisRow:
    _check_p(p)
    params = compute_params(p)
    exact = expected_length_exact(p)
    ent = entropy(p)
    return AnalysisRow(
        p=p,
        m=params.m,
        l=params.l,
        h=params.h,
        q=params.q,
        theta=min(math.log2(params.m) - params.l, math.nextafter(1.0, 0.0)),
        exact_len=exact,
        entropy=ent,
        asymptotic_len=expected_length_asymptotic(p),
        redundancy=exact - ent,
    )
