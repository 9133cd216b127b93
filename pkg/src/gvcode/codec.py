"""
Optimal prefix-free codes for geometrically distributed integers.

A symbol ``k`` is split into a quotient ``s = k // m`` and a remainder
``r = k % m``.  The quotient is sent in unary (``s`` ones and a closing
zero) and the remainder with a truncated binary code whose words have
lengths ``l`` and ``l + 1``.

Bit strings are plain ``str`` objects made of ``"0"`` and ``"1"``,
most-significant bit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath

__all__ = [
    "BitString",
    "CodeParams",
    "GeometricSource",
    "ParameterOverflowError",
    "SymbolSplit",
    "TruncatedStreamError",
    "codeword_length",
    "compute_params",
    "decode",
    "decode_many",
    "encode",
    "encode_quotient",
    "encode_remainder",
    "split",
]

BitString = str

#: Smallest p accepted by :func:`compute_params`.
MIN_P = 1e-15
#: Width used for k, s and m.
INT_BITS = 64
_INT_MAX = (1 << (INT_BITS - 1)) - 1

# ratio within this distance of an integer is snapped before the ceiling
_SNAP = 1e-12


class ParameterOverflowError(ValueError):
    """The divisor for the requested p does not fit in the integer width."""

    def __init__(self, p, required_bits):
        self.p = p
        self.required_bits = required_bits
        super().__init__(
            f"p={p!r} needs a {required_bits}-bit divisor; "
            f"at most {INT_BITS - 1} bits are supported (p >= {MIN_P:g})"
        )


class TruncatedStreamError(ValueError):
    """The stream ended in the middle of a codeword.

    ``needed`` is the minimum number of further bits required to finish
    the codeword that was being read.
    """

    def __init__(self, needed, position):
        self.needed = needed
        self.position = position
        super().__init__(
            f"stream truncated at bit {position}: "
            f"at least {needed} more bit(s) needed"
        )


def _check_p(p):
    if not (isinstance(p, (int, float)) and 0.0 < p < 1.0):
        raise ValueError(f"p must lie strictly between 0 and 1, got {p!r}")


@dataclass(frozen=True)
class GeometricSource:
    """Pr[K = k] = p (1 - p)**k for k >= 0."""

    p: float

    def __post_init__(self):
        _check_p(self.p)

    def pmf(self, k: int) -> float:
        if k < 0:
            return 0.0
        return self.p * math.exp(k * math.log1p(-self.p))

    def tail(self, k: int) -> float:
        """Pr[K >= k]."""
        if k <= 0:
            return 1.0
        return math.exp(k * math.log1p(-self.p))

    def cdf(self, k: int) -> float:
        """Pr[K <= k]."""
        return 1.0 - self.tail(k + 1)

    @property
    def mean(self) -> float:
        return (1.0 - self.p) / self.p


@dataclass(frozen=True)
class CodeParams:
    """Everything needed to encode and decode: divisor ``m``, ``l = floor(log2 m)``,
    ``h = m - 2**l`` and the quotient parameter ``q = 1 - (1-p)**m``.

    ``q`` (and ``p``) are ``None`` when the code was built from ``m`` alone.
    """

    m: int
    l: int
    h: int
    q: Optional[float] = None
    p: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"divisor m must be >= 1, got {self.m}")
        if self.m > _INT_MAX:
            raise ParameterOverflowError(self.p, self.m.bit_length())
        if self.l != self.m.bit_length() - 1 or self.h != self.m - (1 << self.l):
            raise ValueError(f"inconsistent l={self.l}, h={self.h} for m={self.m}")

    @classmethod
    def from_m(cls, m: int) -> "CodeParams":
        m = int(m)
        if m < 1:
            raise ValueError(f"divisor m must be >= 1, got {m}")
        l = m.bit_length() - 1
        return cls(m=m, l=l, h=m - (1 << l))

    @property
    def short_count(self) -> int:
        """Number of remainders that get the shorter ``l``-bit codeword."""
        return (1 << self.l) - self.h


@dataclass(frozen=True)
class SymbolSplit:
    s: int
    r: int


def _divisor_ratio(p):
    with mpmath.workdps(40):
        mp = mpmath.mpf(p)
        return mpmath.log(2 - mp) / -mpmath.log1p(-mp)


def compute_params(source) -> CodeParams:
    """Build the optimal code parameters for a geometric source.

    ``source`` may be a :class:`GeometricSource` or a bare probability.
    The divisor is ``ceil(log(2 - p) / -log(1 - p))`` evaluated at 40
    significant digits.
    """
    p = source.p if isinstance(source, GeometricSource) else source
    _check_p(p)
    p = float(p)
    if p < MIN_P:
        m_est = math.log(2.0) / p
        raise ParameterOverflowError(p, int(m_est).bit_length())

    ratio = _divisor_ratio(p)
    nearest = mpmath.nint(ratio)
    if abs(ratio - nearest) <= _SNAP:
        m = int(nearest)
    else:
        m = int(mpmath.ceil(ratio))
    m = max(m, 1)
    if m > _INT_MAX:
        raise ParameterOverflowError(p, m.bit_length())

    l = m.bit_length() - 1
    q = -math.expm1(m * math.log1p(-p))
    return CodeParams(m=m, l=l, h=m - (1 << l), q=q, p=p)


def split(k: int, params: CodeParams) -> SymbolSplit:
    if k < 0:
        raise ValueError(f"symbol must be nonnegative, got {k}")
    s, r = divmod(k, params.m)
    return SymbolSplit(s, r)


def encode_quotient(s: int) -> BitString:
    """Unary code: ``s`` ones then a zero."""
    if s < 0:
        raise ValueError(f"quotient must be nonnegative, got {s}")
    return "1" * s + "0"


def encode_remainder(r: int, params: CodeParams) -> BitString:
    """Truncated binary code for ``0 <= r < m``.

    The first ``2**l - h`` remainders (the most probable ones) get ``l``
    bits; the remaining ``2h`` get ``l + 1`` bits.
    """
    m, l = params.m, params.l
    if not 0 <= r < m:
        raise ValueError(f"remainder {r} outside [0, {m - 1}]")
    short = params.short_count
    if r < short:
        return format(r, "b").zfill(l) if l else ""
    return format(r + short, "b").zfill(l + 1)


def encode(k: int, params: CodeParams) -> BitString:
    sp = split(k, params)
    return encode_quotient(sp.s) + encode_remainder(sp.r, params)


def codeword_length(k: int, params: CodeParams) -> int:
    """Length of ``encode(k, params)`` without building the string."""
    s, r = divmod(k, params.m)
    return s + 1 + params.l + (r >= params.short_count)


def decode(stream: BitString, params: CodeParams, pos: int = 0) -> tuple[int, int]:
    """Decode one codeword starting at bit ``pos``.

    Returns ``(k, consumed)``.  Raises :class:`TruncatedStreamError` if the
    stream runs out before the codeword is complete.
    """
    l = params.l
    end = stream.find("0", pos)
    if end < 0:
        raise TruncatedStreamError(1 + l, len(stream))
    s = end - pos
    cur = end + 1

    if cur + l > len(stream):
        raise TruncatedStreamError(cur + l - len(stream), len(stream))
    v = int(stream[cur:cur + l], 2) if l else 0
    cur += l

    short = params.short_count
    if v < short:
        r = v
    else:
        if cur >= len(stream):
            raise TruncatedStreamError(1, len(stream))
        r = 2 * v + (stream[cur] == "1") - short
        cur += 1
    return s * params.m + r, cur - pos


def decode_many(stream: BitString, params: CodeParams, count: int, pos: int = 0):
    """Decode ``count`` consecutive codewords; returns ``(values, end_position)``."""
    out = []
    for _ in range(count):
        k, used = decode(stream, params, pos)
        out.append(k)
        pos += used
    return out, pos
