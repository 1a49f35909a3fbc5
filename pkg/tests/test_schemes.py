import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smdc import regions
from smdc.errors import (
    BadThreshold,
    CornerUnavailable,
    DegenerateProfile,
    InsufficientShares,
    KeyDeficit,
    NotLinear,
    PaddingRequired,
    ShapeError,
    WrongScheme,
)
from smdc.field import default_codebook, mds_encode
from smdc.schemes import (
    ChainScheme,
    GeneralMssScheme,
    Mss32CornerScheme,
    PseudoSupScheme,
    RampScheme,
    SourceProfile,
    Sup1Scheme,
    ThresholdScheme,
    build_scheme,
    chain_level_rates,
    mss32_corner_decode,
    mss32_corner_encode,
    mss_block,
    plan_matrix,
    ramp_share,
    threshold_share,
)
from smdc.verifier import CustomEncoder, full_audit, measured_rates
from instances import scheme_matrix


def roundtrip_all(scheme, seed=0, batch=(3,)):
    rng = np.random.default_rng(seed)
    z = scheme.random_input(rng, batch)
    X, Z = scheme.split_input(z)
    bundle = scheme.encode(X, Z)
    # a lone ramp secret sits at level k; nothing below it is decodable
    for alpha in range(getattr(scheme, "k", scheme.s), scheme.L + 1):
        for U in itertools.combinations(range(1, scheme.L + 1), alpha):
            got = scheme.decode(bundle, U)
            for a, x in X.items():
                if a <= alpha and x.shape[-1]:
                    assert np.array_equal(got[a], x), (scheme, U, a)
    return bundle


def test_threshold_example():
    b = threshold_share([1], 2, 3, 5, key=[2])
    assert [b.symbols(l).tolist() for l in (1, 2, 3)] == [[3], [0], [2]]


def test_ramp_examples():
    b = ramp_share([4], 1, 2, 3, 5, key=[1])
    assert [b.symbols(l).tolist() for l in (1, 2, 3)] == [[0], [1], [2]]
    assert ramp_share(np.arange(6) % 5, 0, 2, 3, 5).counts() == (3, 3, 3)


def test_threshold_k1_is_repetition():
    b = threshold_share([3, 1, 4], 1, 4, 5)
    assert all(b.symbols(l).tolist() == [3, 1, 4] for l in range(1, 5))


def test_ramp_matches_threshold_when_c_is_k_minus_1():
    x, key = np.array([2, 4]), np.array([1, 3])
    a, b = ramp_share(x, 1, 2, 3, 5, key=key), threshold_share(x, 2, 3, 5, key=key)
    assert all(np.array_equal(a.symbols(l), b.symbols(l)) for l in (1, 2, 3))


def test_sharing_errors():
    with pytest.raises(BadThreshold):
        ThresholdScheme(3, 4, 5, 1)
    with pytest.raises(BadThreshold):
        RampScheme(3, 2, 2, 5, 1)
    with pytest.raises(PaddingRequired):
        RampScheme(3, 0, 2, 5, 3)
    with pytest.raises(InsufficientShares):
        ThresholdScheme(3, 2, 5, 1).decode(threshold_share([1], 2, 3, 5, key=[0]), [1])


def test_sup1_shapes():
    b = Sup1Scheme(SourceProfile(2, 1, 5, (1, 1))).encode({1: np.array([3]), 2: np.array([4])}, np.array([2]))
    assert b.counts() == (2, 2)
    one = Sup1Scheme(SourceProfile(1, 1, 2, (3,))).encode({1: np.array([1, 0, 1])})
    assert one.symbols(1).tolist() == [1, 0, 1]
    with pytest.raises(BadThreshold):
        Sup1Scheme(SourceProfile(3, 2, 5, (0, 1, 1)))


def test_general_rates_and_bound():
    scheme = GeneralMssScheme(SourceProfile(3, 2, 5, (0, 36, 18)))
    assert scheme.key_length == 0
    bundle = roundtrip_all(scheme, batch=())
    assert bundle.counts() == (24, 24, 24)
    assert sum(scheme.declared_rates()) == regions.min_sum_rate(3, 2, (0, 36, 18)) == 72


def test_general_with_s_equal_L_is_plain_mds():
    scheme = GeneralMssScheme(SourceProfile(3, 3, 5, (0, 0, 9)))
    x = np.arange(9) % 5
    b = scheme.encode({3: x})
    Y = mds_encode(x.reshape(3, 3), default_codebook(3, 3, 5))
    assert all(np.array_equal(b.symbols(l), Y[l - 1]) for l in (1, 2, 3))


def test_general_padding_reports_minimum():
    with pytest.raises(PaddingRequired) as exc:
        GeneralMssScheme(SourceProfile(4, 3, 5, (0, 0, 12, 16)))
    assert exc.value.minimal == (0, 0, 96, 32)
    GeneralMssScheme(SourceProfile(4, 3, 5, exc.value.minimal))
    with pytest.raises(PaddingRequired) as exc:
        GeneralMssScheme(SourceProfile(3, 2, 5, (0, 2, 3)))
    GeneralMssScheme(SourceProfile(3, 2, 5, exc.value.minimal))


@settings(max_examples=25, deadline=None)
@given(L=st.integers(2, 5), data=st.data())
def test_general_minimal_lengths_conform(L, data):
    s = data.draw(st.integers(2, L))
    lengths = [0] * (s - 1) + data.draw(st.lists(st.integers(0, 9), min_size=L - s + 1, max_size=L - s + 1))
    profile = SourceProfile(L, s, 11, tuple(lengths))
    minimal = GeneralMssScheme.minimal_lengths(profile)
    assert all(m >= l for m, l in zip(minimal, lengths))
    GeneralMssScheme(SourceProfile(L, s, 11, minimal))


def test_general_wrong_scheme():
    with pytest.raises(WrongScheme):
        GeneralMssScheme(SourceProfile(3, 1, 5, (1, 1, 1)))
    with pytest.raises(DegenerateProfile):
        SourceProfile(3, 2, 5, (1, 2, 3))


def test_chain_examples():
    scheme = ChainScheme(SourceProfile(3, 2, 5, (0, 2, 3)))
    assert roundtrip_all(scheme).counts() == (2, 2, 2)
    ChainScheme(SourceProfile(4, 3, 5, (0, 0, 3, 4)))
    with pytest.raises(WrongScheme):
        ChainScheme(SourceProfile(4, 2, 5, (0, 2, 3, 4)))
    with pytest.raises(KeyDeficit):
        ChainScheme(SourceProfile(3, 2, 5, (0, 2, 6)))


def test_hybrid_rates():
    assert chain_level_rates(3, 2, (0, 2, 6))[3] == Fraction(5, 2)
    rates = chain_level_rates(3, 2, (0, 2, 6))
    assert 3 * sum(rates.values()) == Fraction(21, 2) > regions.min_sum_rate(3, 2, (0, 2, 6))
    with pytest.raises(PaddingRequired) as exc:
        ChainScheme(SourceProfile(3, 2, 7, (0, 2, 6)), allow_deficit=True)
    assert exc.value.minimal == (0, 2, 7)
    hybrid = ChainScheme(SourceProfile(3, 2, 7, (0, 4, 12)), allow_deficit=True)
    assert roundtrip_all(hybrid).counts() == (7, 7, 7)
    assert hybrid.key_length > 0


def test_hybrid_without_deficit_equals_chain():
    profile = SourceProfile(3, 2, 5, (0, 4, 3))
    chain, hybrid = ChainScheme(profile), ChainScheme(profile, allow_deficit=True)
    assert hybrid.key_length == 0
    z = chain.random_input(np.random.default_rng(4), (6,))
    for a, b in zip(chain.encode_flat(z), hybrid.encode_flat(z)):
        assert np.array_equal(a, b)


def test_corner_q1_example():
    b = mss32_corner_encode("Q1", [1], [0], [1])
    assert [b.symbols(l).tolist() for l in (1, 2, 3)] == [[], [1, 1], [1, 1]]
    assert mss32_corner_decode(b, [1, 2, 3])[3].tolist() == [0]
    assert mss32_corner_decode(b, [2, 3])[2].tolist() == [1]


def test_corner_s1_and_t4_rates():
    assert Mss32CornerScheme("S1", 2, 3).encode(
        {2: np.array([1, 0]), 3: np.array([0, 1, 1])}).counts() == (2, 2, 2)
    b = Mss32CornerScheme("T4", 2, 1).encode({2: np.array([1, 1]), 3: np.array([0])})
    assert b.counts()[2] == 1


def test_corner_unavailable():
    with pytest.raises(CornerUnavailable):
        Mss32CornerScheme("P1", 3, 4)
    with pytest.raises(CornerUnavailable):
        Mss32CornerScheme("T4", 2, 2)
    with pytest.raises(CornerUnavailable):
        Mss32CornerScheme("Z9", 2, 2)


@pytest.mark.parametrize("corner,l2,l3", [("Q1", 2, 2), ("P1", 4, 5), ("O", 4, 8), ("S1", 4, 5),
                                          ("T1", 2, 2), ("S4", 2, 2), ("T4", 4, 1), ("S10", 4, 1)])
def test_corner_rates_match_labels(corner, l2, l3):
    scheme = Mss32CornerScheme(corner, l2, l3)
    bundle = roundtrip_all(scheme)
    assert measured_rates(bundle) == regions.mss32_labeled_corners(l2, l3)[corner]


def test_pseudo_sup_examples():
    scheme = PseudoSupScheme(SourceProfile(3, 2, 5, (1, 2, 3), "sliding"))
    assert roundtrip_all(scheme).counts() == (3, 3, 3)
    profile = SourceProfile(3, 1, 5, (1, 1, 1), "sliding")
    sources = {a: np.array([a]) for a in (1, 2, 3)}
    key = np.array([1, 2, 3])
    a, b = PseudoSupScheme(profile).encode(sources, key), Sup1Scheme(profile).encode(sources, key)
    assert a.counts() == b.counts() == (3, 3, 3)


def test_mss_block_auto_selection():
    assert mss_block(SourceProfile(3, 2, 5, (0, 2, 3))).scheme_id == "chain"
    assert mss_block(SourceProfile(3, 2, 7, (0, 2, 7))).scheme_id == "hybrid"
    assert mss_block(SourceProfile(4, 2, 5, (0, 768, 288, 48))).scheme_id == "general"
    assert mss_block(SourceProfile(3, 1, 5, (1, 1, 1))).scheme_id == "sup1"


def test_build_scheme_ids():
    p = SourceProfile(3, 2, 5, (0, 2, 3))
    assert isinstance(build_scheme(p, "chain"), ChainScheme)
    assert build_scheme(SourceProfile(3, 2, 2, (0, 2, 2)), "corner:Q1").scheme_id == "corner:Q1"
    with pytest.raises(Exception):
        build_scheme(p, "corner:Q1")


def test_plan_matrix_threshold():
    plan = plan_matrix(ThresholdScheme(3, 2, 5, 1))
    assert [M.tolist() for M in plan.encoders] == [[[1, 1]], [[1, 2]], [[1, 3]]]


def test_plan_matrix_chain_shape():
    plan = plan_matrix(ChainScheme(SourceProfile(3, 2, 5, (0, 2, 3))))
    assert plan.n_inputs == 5
    assert [M.shape for M in plan.encoders] == [(2, 5)] * 3


def test_plan_matrix_identity_and_nonlinear():
    ident = CustomEncoder(lambda z: [z], SourceProfile(1, 1, 5, (3,), "sliding"))
    assert np.array_equal(plan_matrix(ident).encoders[0], np.eye(3, dtype=np.int64))
    square = CustomEncoder(lambda z: [z * z], SourceProfile(1, 1, 5, (2,), "sliding"))
    with pytest.raises(NotLinear):
        plan_matrix(square)


def test_shape_errors():
    scheme = ChainScheme(SourceProfile(3, 2, 5, (0, 2, 3)))
    with pytest.raises(ShapeError):
        scheme.encode({2: np.array([1]), 3: np.array([1, 2, 3])})
    with pytest.raises(ShapeError):
        scheme.encode({2: np.array([1, 2])})


NAMES = sorted(scheme_matrix())


@settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(NAMES), seed=st.integers(0, 2 ** 32 - 1))
def test_roundtrip_property(name, seed):
    scheme = scheme_matrix()[name]
    bundle = roundtrip_all(scheme, seed)
    assert measured_rates(bundle) == tuple(scheme.declared_rates())


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_same_size_sets_agree(seed):
    scheme = GeneralMssScheme(SourceProfile(3, 2, 5, (0, 36, 18)))
    X, Z = scheme.split_input(scheme.random_input(np.random.default_rng(seed)))
    b = scheme.encode(X, Z)
    assert np.array_equal(scheme.decode(b, [2, 3])[2], scheme.decode(b, [1, 3])[2])


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_plan_matrix_reproduces_encoder(seed):
    for name in ("chain (3,2) (0,2,3) q=5", "hybrid (3,2) (0,2,5) q=5", "corner O (4,8)"):
        scheme = scheme_matrix()[name]
        plan = plan_matrix(scheme, checks=0)
        z = scheme.random_input(np.random.default_rng(seed), (4,))
        for got, want in zip(scheme.encode_flat(z), plan.apply(z)):
            assert np.array_equal(np.asarray(got) % scheme.q, want)


def test_four_three_example_certified_by_rank():
    # these lengths miss the sub-partitioned scheme's chain condition but fit whole-stream chaining
    scheme = ChainScheme(SourceProfile(4, 3, 5, (0, 0, 12, 16)))
    report = full_audit(scheme, "rank")
    assert report.passed
    assert {r.subset for r in report.by_kind("secrecy")} == {(1,), (2,), (3,), (4,)}
