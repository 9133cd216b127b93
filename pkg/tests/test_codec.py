import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvcode.codec import (
    CodeParams,
    GeometricSource,
    ParameterOverflowError,
    TruncatedStreamError,
    codeword_length,
    compute_params,
    decode,
    decode_many,
    encode,
    encode_quotient,
    encode_remainder,
    split,
)

from conftest import WIDE_GRID, prefix_free


# ---------------------------------------------------------------- GeometricSource

@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_source_rejects_bad_p(p):
    with pytest.raises(ValueError):
        GeometricSource(p)


@pytest.mark.parametrize("p", [0.9, 0.3, 0.01])
def test_pmf_partial_sums_approach_one(p):
    src = GeometricSource(p)
    n = int(40 / p)
    total = math.fsum(src.pmf(k) for k in range(n))
    assert total == pytest.approx(1.0, abs=1e-12)
    assert src.cdf(n - 1) == pytest.approx(total, abs=1e-12)
    assert src.pmf(3) == pytest.approx(p * (1 - p) ** 3, rel=1e-14)


# ---------------------------------------------------------------- compute_params

@pytest.mark.parametrize(
    "p, m, l, h",
    [(0.5, 1, 0, 0), (0.3, 2, 1, 0), (0.01, 69, 6, 5)],
)
def test_compute_params_examples(p, m, l, h):
    params = compute_params(p)
    assert (params.m, params.l, params.h) == (m, l, h)
    assert params.q == pytest.approx(1 - (1 - p) ** m, rel=1e-14)


def test_compute_params_accepts_source():
    assert compute_params(GeometricSource(0.01)).m == 69


def test_divisor_ratio_frozen():
    # 40-digit values of log(2 - p) / -log(1 - p)
    from gvcode.codec import _divisor_ratio

    assert float(_divisor_ratio(0.5)) == pytest.approx(0.584962500721156181, abs=1e-15)
    assert float(_divisor_ratio(0.3)) == pytest.approx(1.48770823428886202, abs=1e-15)
    assert float(_divisor_ratio(0.01)) == pytest.approx(68.4688202232228369, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0, -1.0, 2.0])
def test_compute_params_rejects_out_of_range(p):
    with pytest.raises(ValueError):
        compute_params(p)


def test_compute_params_reports_overflow_width():
    with pytest.raises(ParameterOverflowError) as info:
        compute_params(1e-16)
    assert info.value.required_bits > 0
    assert "bit" in str(info.value)


def test_integer_ratio_is_not_bumped():
    # p = (3 - sqrt5)/2 makes the ratio exactly 1 in exact arithmetic
    p = (3 - math.sqrt(5)) / 2
    assert compute_params(p).m == 1


@pytest.mark.parametrize("p", WIDE_GRID[::4])
def test_params_invariants(p):
    params = compute_params(p)
    m, l, h = params.m, params.l, params.h
    assert m >= 1
    assert 2 ** l <= m < 2 ** (l + 1)
    assert 0 <= h <= 2 ** l - 1
    assert params.q >= (3 - math.sqrt(5)) / 2
    keep = math.exp((m - 1) * math.log1p(-p))
    assert keep >= 1 / (2 - p) * (1 - 1e-12)
    assert keep > 0.5
    assert abs(m - math.log(2) / p) <= 2


def test_from_m_matches_compute_params():
    for p in (0.3, 0.01, 0.001):
        a, b = compute_params(p), CodeParams.from_m(compute_params(p).m)
        assert (a.m, a.l, a.h) == (b.m, b.l, b.h)


def test_code_params_validates():
    with pytest.raises(ValueError):
        CodeParams.from_m(0)
    with pytest.raises(ValueError):
        CodeParams(m=5, l=2, h=2)


# ---------------------------------------------------------------- split / quotient / remainder

@pytest.mark.parametrize("k, m, s, r", [(0, 5, 0, 0), (7, 3, 2, 1), (4, 5, 0, 4)])
def test_split_examples(k, m, s, r):
    sp = split(k, CodeParams.from_m(m))
    assert (sp.s, sp.r) == (s, r)


@given(st.integers(0, 10**12), st.integers(1, 10**6))
def test_split_reconstructs(k, m):
    sp = split(k, CodeParams.from_m(m))
    assert sp.s * m + sp.r == k and 0 <= sp.r < m


def test_split_rejects_negative():
    with pytest.raises(ValueError):
        split(-1, CodeParams.from_m(3))


@pytest.mark.parametrize("s, word", [(0, "0"), (1, "10"), (3, "1110")])
def test_encode_quotient(s, word):
    assert encode_quotient(s) == word


def _truncated_binary_reference(m):
    """Build the codebook by enumeration: first 2^l - h symbols get l bits, rest l+1."""
    l = m.bit_length() - 1
    h = m - 2 ** l
    book = []
    for r in range(m):
        if r < 2 ** l - h:
            book.append("".join("1" if (r >> i) & 1 else "0" for i in reversed(range(l))))
        else:
            v = r + 2 ** l - h
            book.append("".join("1" if (v >> i) & 1 else "0" for i in reversed(range(l + 1))))
    return book


def test_remainder_examples():
    assert encode_remainder(0, CodeParams.from_m(1)) == ""
    five = CodeParams.from_m(5)
    assert [encode_remainder(r, five) for r in range(5)] == ["00", "01", "10", "110", "111"]
    three = CodeParams.from_m(3)
    assert [encode_remainder(r, three) for r in range(3)] == ["0", "10", "11"]


@pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 8, 13, 69, 100, 1000])
def test_remainder_matches_enumerated_codebook(m):
    params = CodeParams.from_m(m)
    assert [encode_remainder(r, params) for r in range(m)] == _truncated_binary_reference(m)


@pytest.mark.parametrize("r", [-1, 5])
def test_remainder_rejects_out_of_range(r):
    with pytest.raises(ValueError):
        encode_remainder(r, CodeParams.from_m(5))


def test_remainder_codebooks_prefix_free_and_length_multiset():
    for m in range(1, 1025):
        params = CodeParams.from_m(m)
        book = [encode_remainder(r, params) for r in range(m)]
        assert prefix_free(book), m
        l, h = params.l, params.h
        lengths = sorted(len(w) for w in book)
        assert lengths == [l] * (2 ** l - h) + [l + 1] * (2 * h), m


# ---------------------------------------------------------------- encode / decode

def test_encode_examples():
    assert encode(5, compute_params(0.3)) == "1101"
    assert encode(4, compute_params(0.5)) == "11110"
    for p in (0.3, 0.01, 0.001):
        params = compute_params(p)
        assert encode(0, params) == "0" + "0" * params.l


def test_decode_examples():
    assert decode("1101", CodeParams.from_m(2)) == (5, 4)
    assert decode("0", CodeParams.from_m(1)) == (0, 1)
    # s = 0, then v = 3 >= 3 forces the one-bit extension of the remainder
    assert decode("0111", CodeParams.from_m(5)) == (4, 4)
    assert encode(4, CodeParams.from_m(5)) == "0111"


def test_decode_with_offset():
    params = CodeParams.from_m(5)
    stream = encode(12, params) + encode(3, params)
    k, used = decode(stream, params)
    assert k == 12
    assert decode(stream, params, used) == (3, len(stream) - used)
    assert decode_many(stream, params, 2) == ([12, 3], len(stream))


@pytest.mark.parametrize(
    "stream, m, needed",
    [("", 5, 3), ("111", 5, 3), ("10", 5, 2), ("101", 5, 1), ("011", 5, 1), ("", 1, 1)],
)
def test_decode_truncated(stream, m, needed):
    with pytest.raises(TruncatedStreamError) as info:
        decode(stream, CodeParams.from_m(m))
    assert info.value.needed == needed


@settings(max_examples=300)
@given(st.floats(1e-6, 0.99), st.integers(0, 10**7))
def test_round_trip_property(p, k):
    params = compute_params(p)
    word = encode(k, params)
    assert set(word) <= {"0", "1"}
    assert decode(word + "1" * 5, params) == (k, len(word))
    assert codeword_length(k, params) == len(word)


def test_full_code_prefix_free_small_k():
    for m in (1, 2, 3, 5, 69):
        params = CodeParams.from_m(m)
        words = [encode(k, params) for k in range(4096)]
        assert prefix_free(words), m


@pytest.mark.parametrize("m", [1, 2, 3, 5, 12, 69, 693])
def test_lengths_nondecreasing(m):
    params = CodeParams.from_m(m)
    lengths = [len(encode(k, params)) for k in range(5000)]
    assert all(a <= b for a, b in zip(lengths, lengths[1:]))


def test_concatenated_stream_round_trip():
    rng = random.Random(7)
    params = compute_params(0.02)
    values = [rng.randrange(0, 400) for _ in range(2000)]
    stream = "".join(encode(k, params) for k in values)
    assert decode_many(stream, params, len(values)) == (values, len(stream))
