"""The ten acceptance criteria, each with its runtime budget.

Every test records one PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary, and running this file directly prints them as it goes.
"""
import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

from smdc import regions
from smdc.field import FieldSpec, default_codebook, mds_decode, mds_encode, smallest_field_for
from smdc.schemes import (
    ChainScheme,
    GeneralMssScheme,
    Mss32CornerScheme,
    PseudoSupScheme,
    SourceProfile,
    Sup1Scheme,
)
from smdc.verifier import CustomEncoder, exhaustive_check_secrecy, full_audit, measured_rates
from instances import CASE_PROFILES, CORNER_CASES, microstates, scheme_matrix

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def _random_input_bundle(scheme, seed=0):
    rng = np.random.default_rng(seed)
    X, Z = scheme.split_input(scheme.random_input(rng))
    return scheme.encode(X, Z)


def test_criterion_01_mds_correctness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    checked = 0
    for L in (3, 4, 5, 6):
        f = FieldSpec(smallest_field_for(L))
        for alpha in range(1, L + 1):
            cb = default_codebook(alpha, L, f)
            msg = rng.integers(0, f.q, size=(50, alpha, 4))
            shares = mds_encode(msg, cb)
            for U in itertools.combinations(range(1, L + 1), alpha):
                got = mds_decode({j: shares[:, j - 1, :] for j in U}, cb)
                assert np.array_equal(got, msg)
                checked += 1
    dt = time.perf_counter() - t0
    record(1, dt < 5, f"{checked} (L, alpha, U) triples x 50 messages exact, {dt:.2f}s < 5s")


def test_criterion_02_chain_scheme_sum_rate():
    t0 = time.perf_counter()
    scheme = ChainScheme(SourceProfile(3, 2, 5, (0, 2, 3)))
    rates = measured_rates(_random_input_bundle(scheme))
    report = full_audit(scheme, "exhaustive")
    dt = time.perf_counter() - t0
    ok = (rates == (2, 2, 2)
          and sum(rates) == Fraction(3, 2) * 2 + Fraction(3, 3) * 3 == 6
          and microstates(scheme) == 3125
          and report.passed
          and len(report.by_kind("lossless")) == 4 and len(report.by_kind("secrecy")) == 3
          and all(r.oracle == "exhaustive" for r in report.rows)
          and dt < 1)
    record(2, ok, f"rates {tuple(map(int, rates))}, sum {sum(rates)}, "
                  f"{len(report.rows)} audit rows over 5^5 inputs, {dt:.2f}s < 1s")


def test_criterion_03_general_scheme():
    t0 = time.perf_counter()
    scheme = GeneralMssScheme(SourceProfile(3, 2, 5, (0, 36, 18)))
    rates = measured_rates(_random_input_bundle(scheme))
    bound = regions.min_sum_rate(3, 2, (0, 36, 18))
    report = full_audit(scheme, "rank")
    paired = full_audit(ChainScheme(SourceProfile(3, 2, 5, (0, 2, 3))), "both")
    dt = time.perf_counter() - t0
    ok = (rates == (24, 24, 24) and sum(rates) == 72 == bound
          and report.passed and paired.passed
          and all(r.agree is True for r in paired.rows) and dt < 2)
    record(3, ok, f"rates {tuple(map(int, rates))}, sum 72 = min sum rate {bound}, rank audit "
                  f"{len(report.rows)} rows pass, paired oracles agree on {len(paired.rows)} rows, {dt:.2f}s < 2s")


def test_criterion_04_corner_schemes():
    t0 = time.perf_counter()
    done = set()
    for corner, l2, l3 in CORNER_CASES:
        scheme = Mss32CornerScheme(corner, l2, l3)
        assert microstates(scheme) <= 2 ** 13
        report = full_audit(scheme, "exhaustive", cap=2 ** 13)
        rates = measured_rates(_random_input_bundle(scheme))
        label = regions.mss32_labeled_corners(l2, l3)[corner]
        assert report.passed, (corner, report.failures())
        assert rates == label, (corner, rates, label)
        assert label in regions.corners3(regions.region_mss32(l2, l3))
        done.add(corner)
    dt = time.perf_counter() - t0
    ok = done == {"Q1", "P1", "O", "S1", "T1", "S4", "T4", "S10"} and dt < 10
    record(4, ok, f"8 corners audited exhaustively over GF(2) (<= 2^13 inputs each), "
                  f"rates equal labels, {dt:.2f}s < 10s")


def test_criterion_05_region_corners():
    counts = []
    for case, (H2, H3) in CASE_PROFILES.items():
        assert regions.mss32_case(H2, H3) == case
        found = set(regions.corners3(regions.region_mss32(H2, H3)))
        assert found == regions.mss32_expected_corners(H2, H3), case
        counts.append(len(found))
    record(5, True, f"corner sets equal labelled corners plus permutations, sizes {counts}")


def test_criterion_06_superposition_gaps():
    gaps = {}
    for L, s in [(3, 2), (4, 2), (4, 3), (5, 3)]:
        H = [0] * (s - 1) + [1] * (L - s + 1)
        gap = regions.sup_sum_rate(L, s, H) - regions.min_sum_rate(L, s, H)
        assert isinstance(gap, Fraction) and gap > 0
        gaps[(L, s)] = gap
    sup2 = regions.region_sup_mss(3, 2, (0, 1, 1))
    exact = regions.region_mss32(1, 1)
    witnesses = regions.containment_witnesses(sup2, exact)
    ok = regions.contains3(exact, sup2) and not regions.contains3(sup2, exact) and witnesses
    record(6, bool(ok), f"gaps {', '.join(f'{k}: {v}' for k, v in gaps.items())}; "
                        f"superposition region strictly inside, witness {tuple(map(str, witnesses[0]))}")


def test_criterion_07_sliding_pseudo_superposition():
    scheme = PseudoSupScheme(SourceProfile(3, 2, 5, (1, 2, 3), "sliding"))
    report = full_audit(scheme, "exhaustive")
    rates = measured_rates(_random_input_bundle(scheme))
    reg = regions.region_smdc32(1, 2, 3)
    sum_row = [b for a, b in reg.inequalities if a == (1, 1, 1)][0]
    ok = (microstates(scheme) == 5 ** 6 and report.passed
          and len(report.by_kind("lossless")) == 7 and len(report.by_kind("secrecy")) == 3
          and rates == (3, 3, 3) and sum(rates) == 9
          == regions.min_sum_rate(3, 2, (1, 2, 3), "sliding")
          and regions.member(reg, rates) and sum(rates) == sum_row)
    record(7, ok, f"5^6 inputs, {len(report.rows)} rows pass, rates (3,3,3) in the sliding region, sum 9 meets its bound")


def test_criterion_08_sup1():
    scheme = Sup1Scheme(SourceProfile(3, 1, 5, (1, 1, 1)))
    report = full_audit(scheme, "exhaustive")
    rates = measured_rates(_random_input_bundle(scheme))
    sizes = {len(r.subset) for r in report.by_kind("secrecy") if r.alpha == 3}
    ok = (report.passed and sizes == {1, 2} and rates == (3, 3, 3)
          and regions.member(regions.region_sup1(3, (1, 1, 1)), rates))
    record(8, ok, f"secrecy for every |A| <= alpha-1 ({len(report.by_kind('secrecy'))} rows), rate 3 = sum of entropies")


def _shared_pad_xor(q):
    # inputs: C (source), then A, B (key); observe A + C and A + B
    enc = CustomEncoder(lambda z: [np.stack([z[:, 1] + z[:, 0], z[:, 1] + z[:, 2]], axis=1)],
                        SourceProfile(1, 1, q, (1,), "sliding"), key_length=2)
    return exhaustive_check_secrecy(enc, (1,), 1)


def _independent_pads(q, n):
    # inputs: A_1..A_n (source), then B_1..B_n, C (key); observe C and D_i = A_i + B_i
    def fn(z):
        A, B, C = z[:, :n], z[:, n:2 * n], z[:, 2 * n:]
        return [np.hstack([C, A + B])]
    enc = CustomEncoder(fn, SourceProfile(1, 1, q, (n,), "sliding"), key_length=n + 1)
    return exhaustive_check_secrecy(enc, (1,), 1)


def test_criterion_09_pad_identities():
    runs = []
    for q in (2, 5):
        row = _shared_pad_xor(q)
        assert row.passed and row.bits == 0.0
        runs.append(f"xor q={q}")
        for n in (1, 2, 3):
            row = _independent_pads(q, n)
            assert row.passed and row.bits == 0.0
            runs.append(f"pads q={q} n={n}")
    record(9, True, f"{len(runs)} exhaustive runs, exact independence in each")


def test_criterion_10_oracle_equivalence():
    rows = 0
    names = []
    for name, inst in scheme_matrix().items():
        if microstates(inst) > 2 ** 16:
            continue
        report = full_audit(inst, "both")
        assert all(r.oracle == "both" for r in report.rows), name
        bad = [r for r in report.rows if r.agree is not True]
        assert not bad, (name, bad)
        rows += len(report.rows)
        names.append(name)
    record(10, True, f"{len(names)} linear instances, {rows} rows, zero oracle discrepancies")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
