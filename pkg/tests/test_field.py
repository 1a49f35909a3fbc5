import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smdc.errors import (
    CorruptShare,
    DegenerateCode,
    DomainError,
    InsufficientShares,
    NoInverse,
    ShapeError,
)
from smdc.field import (
    FieldSpec,
    default_codebook,
    gf_inverse,
    is_prime,
    mat_inverse,
    mat_mul,
    mat_rank,
    mds_decode,
    mds_encode,
    row_reduce,
    smallest_field_for,
    vandermonde,
)

PRIMES = [2, 3, 5, 7, 11, 13]


def brute_rank(M, q):
    """Rank from the size of the row space: |span| = q**rank."""
    M = np.asarray(M) % q
    if M.size == 0:
        return 0
    span = {tuple((np.array(c) @ M) % q) for c in itertools.product(range(q), repeat=M.shape[0])}
    return round(np.log(len(span)) / np.log(q))


def lagrange_eval_coeffs(points, values, q):
    """Coefficients of the interpolating polynomial, low degree first."""
    n = len(points)
    coeffs = [0] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = [1]
        denom = 1
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = [(a - xj * b) % q for a, b in zip([0] + basis, basis + [0])]
            denom = denom * (xi - xj) % q
        scale = yi * pow(denom, -1, q) % q
        coeffs = [(c + scale * b) % q for c, b in zip(coeffs, basis)]
    return coeffs


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("L,q", [(1, 2), (2, 3), (3, 5), (4, 5), (5, 7), (6, 7), (10, 11), (11, 13)])
def test_smallest_field(L, q):
    assert smallest_field_for(L) == q


def test_field_spec_validation():
    with pytest.raises(DomainError):
        FieldSpec(4)
    with pytest.raises(DomainError):
        FieldSpec(65537)
    assert FieldSpec(65521).q == 65521


@pytest.mark.parametrize("q", PRIMES)
def test_inverse_table(q):
    for a in range(1, q):
        assert a * gf_inverse(a, q) % q == 1
    with pytest.raises(NoInverse):
        gf_inverse(0, q)
    with pytest.raises(ZeroDivisionError):
        gf_inverse(q, q)


def test_row_reduce_example():
    R, piv = row_reduce([[2, 4, 1], [1, 2, 4]], 5)
    assert piv == (0, 2)
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 5]), rows=st.integers(1, 3), cols=st.integers(1, 4), data=st.data())
def test_rank_matches_row_space_count(q, rows, cols, data):
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)))
    assert mat_rank(M, q) == brute_rank(M, q)


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from(PRIMES), n=st.integers(1, 5), seed=st.integers(0, 2 ** 32 - 1))
def test_inverse_roundtrip(q, n, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, q, size=(n, n))
    if mat_rank(M, q) < n:
        with pytest.raises(NoInverse):
            mat_inverse(M, q)
        return
    inv = mat_inverse(M, q)
    assert np.array_equal(mat_mul(M, inv, q), np.eye(n, dtype=np.int64))
    assert np.array_equal(mat_mul(inv, M, q), np.eye(n, dtype=np.int64))


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([5, 7]), seed=st.integers(0, 2 ** 32 - 1))
def test_row_reduce_idempotent(q, seed):
    M = np.random.default_rng(seed).integers(0, q, size=(4, 5))
    R, piv = row_reduce(M, q)
    R2, piv2 = row_reduce(R, q)
    assert piv == piv2 and np.array_equal(R, R2)


def test_vandermonde_rows_are_powers():
    cb = vandermonde(3, [1, 2, 3, 4], 5)
    assert cb.generator.tolist() == [[1, 1, 1, 1], [1, 2, 3, 4], [1, 4, 4, 1]]
    with pytest.raises(ValueError):
        cb.generator[0, 0] = 2


def test_vandermonde_degenerate():
    with pytest.raises(DegenerateCode):
        vandermonde(2, [1, 1, 2], 5)
    with pytest.raises(DegenerateCode):
        vandermonde(4, [1, 2, 3], 5)
    with pytest.raises(DegenerateCode):
        default_codebook(2, 5, 5)


def test_mds_shares_are_polynomial_evaluations():
    # share j of stripes (m_0, m_1) is m_0 + m_1 * j
    cb = default_codebook(2, 3, 5)
    Y = mds_encode(np.array([[4], [1]]), cb)
    assert Y[:, 0].tolist() == [0, 1, 2]


@settings(max_examples=50, deadline=None)
@given(L=st.integers(1, 6), data=st.data())
def test_mds_decode_matches_interpolation(L, data):
    q = smallest_field_for(L)
    alpha = data.draw(st.integers(1, L))
    U = sorted(data.draw(st.sets(st.integers(1, L), min_size=alpha, max_size=alpha)))
    msg = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=alpha, max_size=alpha)))
    cb = default_codebook(alpha, L, q)
    Y = mds_encode(msg[:, None], cb)[:, 0]
    assert lagrange_eval_coeffs(U, [int(Y[j - 1]) for j in U], q) == msg.tolist()
    got = mds_decode({j: Y[j - 1:j] for j in U}, cb)
    assert got[:, 0].tolist() == msg.tolist()


def test_mds_batch_dimensions():
    cb = default_codebook(3, 5, 7)
    msg = np.random.default_rng(0).integers(0, 7, size=(2, 4, 3, 6))
    Y = mds_encode(msg, cb)
    assert Y.shape == (2, 4, 5, 6)
    assert np.array_equal(mds_decode({1: Y[..., 0, :], 4: Y[..., 3, :], 5: Y[..., 4, :]}, cb), msg)


def test_mds_decode_errors():
    cb = default_codebook(2, 3, 5)
    Y = mds_encode(np.array([[1, 2], [3, 4]]), cb)
    with pytest.raises(InsufficientShares):
        mds_decode({1: Y[0]}, cb)
    with pytest.raises(ShapeError):
        mds_decode({1: Y[0], 4: Y[1]}, cb)
    with pytest.raises(ShapeError):
        mds_decode({1: Y[0], 2: Y[1][:1]}, cb)
    bad = Y[2].copy()
    bad[0] = (bad[0] + 1) % 5
    with pytest.raises(CorruptShare):
        mds_decode({1: Y[0], 2: Y[1], 3: bad}, cb)
    with pytest.raises(ShapeError):
        mds_encode(np.zeros((3, 2)), cb)


def test_zero_length_messages():
    cb = default_codebook(2, 3, 5)
    Y = mds_encode(np.zeros((2, 0), dtype=np.int64), cb)
    assert Y.shape == (3, 0)
    assert mds_decode({2: Y[1], 3: Y[2]}, cb).shape == (2, 0)


@pytest.mark.parametrize("alpha,L,q", [(1, 3, 5), (2, 3, 5), (2, 4, 5), (3, 4, 7)])
def test_share_symbols_uniform(alpha, L, q):
    cb = default_codebook(alpha, L, q)
    msgs = np.array(list(itertools.product(range(q), repeat=alpha))).T
    Y = mds_encode(msgs, cb)
    for j in range(L):
        assert np.bincount(Y[j], minlength=q).tolist() == [q ** (alpha - 1)] * q
