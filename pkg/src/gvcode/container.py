"""
Binary container for encoded symbol streams.

Layout (all integers big-endian)::

    magic   4 bytes  b"GVRL"
    version 1 byte   0x01; the high bit marks an unterminated trailing run (RLE only)
    m       4 bytes  divisor
    count   8 bytes  number of encoded symbols
    payload          codewords, MSB first, zero-padded to a byte boundary
    total   8 bytes  original bit count (RLE containers only)
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable, Optional

from .analysis import entropy
from .codec import (
    INT_BITS,
    CodeParams,
    TruncatedStreamError,
    compute_params,
    decode,
    encode,
)

__all__ = [
    "ContainerError",
    "ContainerHeader",
    "RleStats",
    "bits_to_bytes",
    "bytes_to_bits",
    "decode_container",
    "encode_container",
    "extract_runs",
    "rle_decode",
    "rle_encode",
]

MAGIC = b"GVRL"
VERSION = 0x01
TRAILING_RUN_FLAG = 0x80

_HEADER = struct.Struct(">4sBIQ")
_TRAILER = struct.Struct(">Q")
_MAX_M = (1 << 32) - 1
_MAX_SYMBOL = (1 << (INT_BITS - 1)) - 1


class ContainerError(ValueError):
    pass


@dataclass(frozen=True)
class ContainerHeader:
    m: int
    count: int
    version: int = VERSION

    @property
    def trailing_run(self) -> bool:
        return bool(self.version & TRAILING_RUN_FLAG)

    def pack(self) -> bytes:
        if not 1 <= self.m <= _MAX_M:
            raise ContainerError(f"divisor m={self.m} does not fit the 32-bit header field")
        return _HEADER.pack(MAGIC, self.version, self.m, self.count)

    @classmethod
    def unpack(cls, data: bytes) -> "ContainerHeader":
        if len(data) < _HEADER.size:
            raise ContainerError(
                f"container too short: {len(data)} bytes, header needs {_HEADER.size}"
            )
        magic, version, m, count = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ContainerError(f"bad magic {magic!r}, expected {MAGIC!r}")
        if m < 1:
            raise ContainerError("header divisor m must be >= 1")
        return cls(m=m, count=count, version=version)


def bits_to_bytes(bits: str) -> bytes:
    """Pack a '0'/'1' string MSB first, zero-padding the last byte."""
    if not bits:
        return b""
    pad = -len(bits) % 8
    return int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big")


def bytes_to_bits(data: bytes) -> str:
    if not data:
        return ""
    return bin(int.from_bytes(data, "big"))[2:].zfill(8 * len(data))


def _payload(values, params):
    words = []
    for i, k in enumerate(values):
        if not 0 <= k <= _MAX_SYMBOL:
            raise ContainerError(f"symbol {i} = {k} outside [0, 2**{INT_BITS - 1} - 1]")
        words.append(encode(k, params))
    return "".join(words)


def _read_symbols(bits, params, count):
    out = []
    pos = 0
    try:
        for _ in range(count):
            k, used = decode(bits, params, pos)
            out.append(k)
            pos += used
    except TruncatedStreamError as exc:
        raise ContainerError(
            f"payload exhausted after {len(out)} of {count} symbols ({exc})"
        ) from exc
    return out


def encode_container(values: Iterable[int], params: CodeParams) -> bytes:
    values = list(values)
    header = ContainerHeader(m=params.m, count=len(values))
    return header.pack() + bits_to_bytes(_payload(values, params))


def decode_container(data: bytes) -> tuple[CodeParams, list[int]]:
    header = ContainerHeader.unpack(data)
    if header.version != VERSION:
        raise ContainerError(f"unsupported version byte 0x{header.version:02x}")
    params = CodeParams.from_m(header.m)
    bits = bytes_to_bits(data[_HEADER.size:])
    return params, _read_symbols(bits, params, header.count)


def extract_runs(data: bytes) -> tuple[list[int], Optional[int], int]:
    """Split a byte stream (read MSB first) into runs of zeros closed by a one.

    Returns ``(runs, trailing, total_bits)`` where ``trailing`` is the
    length of a final run that is not closed by a one, or ``None``.
    """
    bits = bytes_to_bits(data)
    pieces = bits.split("1")
    runs = [len(piece) for piece in pieces[:-1]]
    trailing = len(pieces[-1]) or None
    return runs, trailing, len(bits)


@dataclass(frozen=True)
class RleStats:
    p: Optional[float]
    m: int
    runs: int
    total_bits: int
    payload_bits: int
    estimated: bool

    @property
    def bits_per_run(self) -> float:
        return self.payload_bits / self.runs if self.runs else 0.0

    @property
    def entropy(self) -> Optional[float]:
        if self.p is None or not 0.0 < self.p < 1.0:
            return None
        return entropy(self.p)

    def report(self) -> str:
        ent = self.entropy
        lines = [
            f"p={self.p!r} ({'maximum-likelihood estimate #ones/#bits' if self.estimated else 'given'})",
            f"m={self.m}",
            f"input_bits={self.total_bits}",
            f"runs={self.runs}",
            f"payload_bits={self.payload_bits}",
            f"bits_per_run={self.bits_per_run!r}",
            f"entropy_per_run={'n/a' if ent is None else repr(ent)}",
        ]
        if ent is not None and self.runs:
            lines.append(f"excess_per_run={self.bits_per_run - ent!r}")
        return "\n".join(lines) + "\n"


def rle_encode(data: bytes, p="auto") -> tuple[bytes, RleStats]:
    """Run-length encode a byte stream.

    With ``p="auto"`` the zero/one probability is estimated as
    ``#ones / #bits``.  An all-ones input gives the estimate 1, for which
    the limiting divisor ``m = 1`` is used.
    """
    runs, trailing, total_bits = extract_runs(data)
    symbols = runs + ([trailing] if trailing is not None else [])

    estimated = p == "auto"
    if estimated:
        if total_bits == 0:
            p, params = None, CodeParams.from_m(1)
        else:
            ones = len(runs)
            if ones == 0:
                raise ContainerError(
                    "input contains no 1 bits, so the estimate p = #ones/#bits is 0; "
                    "pass an explicit p instead of 'auto'"
                )
            p = ones / total_bits
            params = CodeParams.from_m(1) if ones == total_bits else compute_params(p)
    else:
        p = float(p)
        params = compute_params(p)

    version = VERSION | (TRAILING_RUN_FLAG if trailing is not None else 0)
    header = ContainerHeader(m=params.m, count=len(symbols), version=version)
    payload = _payload(symbols, params)
    blob = header.pack() + bits_to_bytes(payload) + _TRAILER.pack(total_bits)
    stats = RleStats(
        p=p,
        m=params.m,
        runs=len(symbols),
        total_bits=total_bits,
        payload_bits=len(payload),
        estimated=estimated,
    )
    return blob, stats


def rle_decode(blob: bytes) -> bytes:
    header = ContainerHeader.unpack(blob)
    if header.version & ~TRAILING_RUN_FLAG != VERSION:
        raise ContainerError(f"unsupported version byte 0x{header.version:02x}")
    if len(blob) < _HEADER.size + _TRAILER.size:
        raise ContainerError("RLE container is missing its bit-count trailer")
    (total_bits,) = _TRAILER.unpack_from(blob, len(blob) - _TRAILER.size)
    if total_bits % 8:
        raise ContainerError(f"bit count {total_bits} is not a whole number of bytes")

    params = CodeParams.from_m(header.m)
    bits = bytes_to_bits(blob[_HEADER.size:len(blob) - _TRAILER.size])
    symbols = _read_symbols(bits, params, header.count)

    if header.trailing_run:
        if not symbols:
            raise ContainerError("trailing-run flag set on an empty container")
        out = "".join("0" * r + "1" for r in symbols[:-1]) + "0" * symbols[-1]
    else:
        out = "".join("0" * r + "1" for r in symbols)
    if len(out) != total_bits:
        raise ContainerError(
            f"decoded {len(out)} bits but the trailer records {total_bits}"
        )
    return bits_to_bytes(out)
