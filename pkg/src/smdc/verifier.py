"""Certification of decodability and perfect secrecy.

Two oracles answer the same questions:

* the exhaustive oracle enumerates every input (all sources and all key
  symbols) and builds exact joint histograms, so it works for any encoder
  function;
* the rank oracle works on the matrix form of a linear encoder, where
  decodability is row-space containment and the mutual information between
  two linear images of a uniform vector is a rank deficit times log2 q.

Verdicts are decided in integers only.  Entropies and mutual information
values are reported as floats for reading, never compared against a
tolerance.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import NotLinear, ShapeError, TooLargeUseRankOracle
from .field import mat_rank
from .schemes.base import Scheme, ShareBundle, SourceProfile
from .schemes.linear import LinearEncoderMatrix, plan_matrix

DEFAULT_CAP = 1 << 20
DEFAULT_CHUNK = 1 << 14


def enumeration_cap() -> int:
    return int(os.environ.get("SMDC_ENUM_CAP", DEFAULT_CAP))


class CustomEncoder(Scheme):
    """Treat an arbitrary function of the input vector as an L-encoder scheme.

    ``fn`` maps a ``(batch, N)`` array (sources in level order, then key) to
    a list of L arrays of shape ``(batch, n_l)``.
    """

    scheme_id = "custom"

    def __init__(self, fn: Callable, profile: SourceProfile, key_length: int = 0):
        super().__init__(profile, key_length)
        self.fn = fn

    def encode_flat(self, z):
        z = np.asarray(z, dtype=np.int64)
        flat = z.reshape(-1, z.shape[-1])
        out = []
        for w in self.fn(flat):
            w = np.asarray(w, dtype=np.int64) % self.q
            out.append(w.reshape(z.shape[:-1] + (w.shape[-1],)))
        if len(out) != self.L:
            raise ShapeError(f"encoder function returned {len(out)} outputs, expected {self.L}")
        return out

    def declared_rates(self):
        z = np.zeros((1, self.input_length), dtype=np.int64)
        return tuple(Fraction(w.shape[-1]) for w in self.encode_flat(z))


# -- enumeration --------------------------------------------------------------

def _digits(start: int, stop: int, q: int, N: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(N, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def input_chunks(q: int, N: int, chunk: int = DEFAULT_CHUNK, order: Sequence[int] | None = None):
    """Yield every vector of GF(q)^N in blocks; ``order`` permutes the blocks."""
    total = q ** N
    starts = list(range(0, total, chunk))
    if order is not None:
        starts = [starts[i] for i in order]
    for st in starts:
        yield _digits(st, min(total, st + chunk), q, N)


def _group(cols: np.ndarray, q: int) -> np.ndarray:
    """Class id of every row of ``cols``; equal rows share an id."""
    n, w = cols.shape
    if q ** w < 1 << 62:
        # pack each row into one integer so a 1-d sort suffices
        keys = cols @ (q ** np.arange(w, dtype=np.int64)) if w else np.zeros(n, dtype=np.int64)
        _, inv = np.unique(keys, return_inverse=True)
    else:
        _, inv = np.unique(cols, axis=0, return_inverse=True)
    return inv.reshape(-1)


def _tally(cols: np.ndarray, counts: np.ndarray, q: int):
    inv = _group(cols, q)
    size = int(inv.max()) + 1 if inv.size else 0
    first = np.full(size, -1, dtype=np.int64)
    first[inv[::-1]] = np.arange(inv.size)[::-1]
    merged = np.zeros(size, dtype=np.int64)
    np.add.at(merged, inv, counts)
    return cols[first], merged, inv


class Histogram:
    """Exact counts of distinct rows over GF(q), mergeable in any order.

    Added blocks are buffered and folded together only when the buffer
    grows large or the counts are read.
    """

    FOLD_AT = 1 << 18

    def __init__(self, width: int, q: int):
        self.width, self.q = width, q
        self._parts: list[tuple[np.ndarray, np.ndarray]] = []
        self._pending = 0

    def add(self, cols: np.ndarray, counts: np.ndarray | None = None):
        cols = np.asarray(cols, dtype=np.int64).reshape(-1, self.width)
        if counts is None:
            counts = np.ones(cols.shape[0], dtype=np.int64)
        self._parts.append((cols, np.asarray(counts, dtype=np.int64)))
        self._pending += cols.shape[0]
        if self._pending > self.FOLD_AT:
            self._fold()

    def merge(self, other: "Histogram"):
        self.add(other.rows, other.counts)

    def _fold(self):
        if len(self._parts) == 1 and self._pending == 0:
            return
        rows = np.vstack([r for r, _ in self._parts]) if self._parts else np.zeros((0, self.width), np.int64)
        counts = np.concatenate([c for _, c in self._parts]) if self._parts else np.zeros(0, np.int64)
        rows, counts, _ = _tally(rows, counts, self.q)
        self._parts = [(rows, counts)]
        self._pending = 0

    @property
    def rows(self) -> np.ndarray:
        self._fold()
        return self._parts[0][0]

    @property
    def counts(self) -> np.ndarray:
        self._fold()
        return self._parts[0][1]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(v) for v in r): int(c) for r, c in zip(self.rows, self.counts)}

    def entropy_bits(self) -> float:
        return entropy_bits(self.counts)


def entropy_bits(counts) -> float:
    c = np.asarray(counts, dtype=np.float64)
    c = c[c > 0]
    if c.size == 0:
        raise ValueError("entropy of an empty histogram")
    p = c / c.sum()
    return float(-(p * np.log2(p)).sum()) + 0.0


def measured_rates(bundle: ShareBundle) -> tuple[Fraction, ...]:
    return tuple(Fraction(n) for n in bundle.counts())


# -- audit rows ---------------------------------------------------------------

@dataclass(frozen=True)
class AuditRow:
    kind: str                    # "lossless" or "secrecy"
    alpha: int
    subset: tuple[int, ...]
    passed: bool
    bits: float                  # H(X | W_U) for lossless, I(X_alpha; W_A) for secrecy
    oracle: str
    microstates: int | None = None
    agree: bool | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class VerificationReport:
    instance: dict
    rows: tuple[AuditRow, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r.passed and r.error is None for r in self.rows)

    @property
    def oracles_agree(self) -> bool:
        return all(r.agree is not False for r in self.rows)

    def failures(self) -> list[AuditRow]:
        return [r for r in self.rows if not r.passed or r.error]

    def by_kind(self, kind: str) -> list[AuditRow]:
        return [r for r in self.rows if r.kind == kind]

    def secrecy_monotone(self) -> bool:
        """Secrecy at A implies secrecy at every audited subset of A."""
        rows = {(r.alpha, r.subset): r.passed for r in self.by_kind("secrecy")}
        for (alpha, A), ok in rows.items():
            if not ok:
                continue
            for k in range(1, len(A)):
                for B in itertools.combinations(A, k):
                    if rows.get((alpha, B)) is False:
                        return False
        return True

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "passed": self.passed,
            "oracles_agree": self.oracles_agree,
            "rows": [r.to_dict() for r in self.rows],
        }


# -- row specifications ----------------------------------------------------------

def _levels_needed(instance, alpha: int) -> list[int]:
    p = instance.profile
    return [a for a in range(p.first_level(), alpha + 1) if p.length(a) > 0]


def audit_plan(instance) -> list[tuple[str, int, tuple[int, ...]]]:
    """Every (kind, alpha, subset) the constraint families require."""
    p = instance.profile
    L, s = p.L, p.s
    plan = []
    for alpha in range(p.first_level(), L + 1):
        if not _levels_needed(instance, alpha):
            continue
        for U in itertools.combinations(range(1, L + 1), alpha):
            plan.append(("lossless", alpha, U))
    for alpha in range(max(s, 1), L + 1):
        if p.length(alpha) == 0:
            continue
        for k in range(1, alpha - s + 1):
            for A in itertools.combinations(range(1, L + 1), k):
                plan.append(("secrecy", alpha, A))
    return plan


def _columns(kind: str, alpha: int, subset, instance, z: np.ndarray, W: list[np.ndarray]):
    """(observation columns, target columns) for one row."""
    slices = instance.source_slices()
    obs = [W[l - 1] for l in subset]
    obs = np.hstack(obs) if obs else np.zeros((z.shape[0], 0), dtype=np.int64)
    levels = _levels_needed(instance, alpha) if kind == "lossless" else [alpha]
    tgt = [z[:, slices[a]] for a in levels]
    tgt = np.hstack(tgt) if tgt else np.zeros((z.shape[0], 0), dtype=np.int64)
    return obs, tgt


def _marginal(cols: np.ndarray, counts: np.ndarray, q: int):
    """Counts of the distinct rows of ``cols`` and, per input row, the count of its class."""
    _, marg, inv = _tally(cols, counts, q)
    return marg, marg[inv]


def _verdict(kind: str, hist: Histogram, split: int) -> tuple[bool, float]:
    data, counts = hist.rows, hist.counts
    mw, cw = _marginal(data[:, :split], counts, hist.q)
    if kind == "lossless":
        # W_U determines X iff adding X never splits a W_U class
        ok = data.shape[0] == mw.size
        return ok, max(0.0, hist.entropy_bits() - entropy_bits(mw))
    mx, cx = _marginal(data[:, split:], counts, hist.q)
    T = hist.total
    wide = object if T >= 1 << 31 else np.int64
    lhs = counts.astype(wide) * T
    rhs = cw.astype(wide) * cx.astype(wide)
    ok = data.shape[0] == mw.size * mx.size and bool(np.all(lhs == rhs))
    mi = 0.0
    for c, l, r in zip(counts, lhs, rhs):
        if l != r:
            mi += (int(c) / T) * math.log2(int(l) / int(r))
    return ok, mi


def _exhaustive_rows(instance, plan, cap=None, chunk=DEFAULT_CHUNK, order=None):
    q, N = instance.q, instance.input_length
    size = q ** N
    cap = enumeration_cap() if cap is None else cap
    if size > cap:
        raise TooLargeUseRankOracle(
            f"{q}^{N} = {size} microstates exceed the enumeration cap {cap}")
    hists, splits = {}, {}
    for z in input_chunks(q, N, chunk, order):
        W = [np.asarray(w).reshape(z.shape[0], -1) for w in instance.encode_flat(z)]
        for spec in plan:
            obs, tgt = _columns(*spec, instance, z, W)
            if spec not in hists:
                hists[spec] = Histogram(obs.shape[1] + tgt.shape[1], q)
                splits[spec] = obs.shape[1]
            hists[spec].add(np.hstack([obs, tgt]))
    out = {}
    for spec in plan:
        ok, bits = _verdict(spec[0], hists[spec], splits[spec])
        out[spec] = (ok, bits, size)
    return out, hists


def exhaustive_check_lossless(instance, U, alpha, cap=None, chunk=DEFAULT_CHUNK) -> AuditRow:
    spec = ("lossless", alpha, tuple(sorted(U)))
    res, _ = _exhaustive_rows(instance, [spec], cap, chunk)
    ok, bits, size = res[spec]
    return AuditRow("lossless", alpha, spec[2], ok, bits, "exhaustive", size)


def exhaustive_check_secrecy(instance, A, alpha, cap=None, chunk=DEFAULT_CHUNK) -> AuditRow:
    spec = ("secrecy", alpha, tuple(sorted(A)))
    res, _ = _exhaustive_rows(instance, [spec], cap, chunk)
    ok, bits, size = res[spec]
    return AuditRow("secrecy", alpha, spec[2], ok, bits, "exhaustive", size)


# -- rank oracle ----------------------------------------------------------------

def _rank_lossless(mat: LinearEncoderMatrix, U, levels) -> tuple[bool, float]:
    M = mat.stacked(U)
    S = mat.selector(levels)
    r = mat_rank(M, mat.q)
    r2 = mat_rank(np.vstack([M, S]), mat.q)
    return r == r2, (r2 - r) * math.log2(mat.q)


def _rank_secrecy(mat: LinearEncoderMatrix, A, alpha) -> tuple[bool, float]:
    M = mat.stacked(A)
    S = mat.selector([alpha])
    rs, rm = mat_rank(S, mat.q), mat_rank(M, mat.q)
    r = mat_rank(np.vstack([S, M]), mat.q)
    return rs + rm == r, (rs + rm - r) * math.log2(mat.q)


def rank_check_lossless(mat: LinearEncoderMatrix, U, alpha, levels=None) -> bool:
    """Do the rows of W_U span every selector row of the required sources?

    ``levels`` defaults to every source level up to ``alpha`` that has symbols.
    """
    if levels is None:
        levels = [a for a in range(1, alpha + 1) if a in mat.selectors]
    return _rank_lossless(mat, U, levels)[0]


def rank_check_secrecy(mat: LinearEncoderMatrix, A, alpha) -> bool:
    return _rank_secrecy(mat, A, alpha)[0]


def rank_mutual_information_bits(mat: LinearEncoderMatrix, A, alpha) -> float:
    return _rank_secrecy(mat, A, alpha)[1]


def _rank_rows(instance, plan, mat=None):
    mat = plan_matrix(instance) if mat is None else mat
    out = {}
    for kind, alpha, subset in plan:
        if kind == "lossless":
            out[(kind, alpha, subset)] = _rank_lossless(mat, subset, _levels_needed(instance, alpha))
        else:
            out[(kind, alpha, subset)] = _rank_secrecy(mat, subset, alpha)
    return out


# -- full audit -----------------------------------------------------------------

def full_audit(instance, mode: str = "both", cap=None, chunk: int = DEFAULT_CHUNK) -> VerificationReport:
    """Check every decodability and secrecy constraint of ``instance``.

    ``mode`` is ``exhaustive``, ``rank`` or ``both``.  When enumeration is
    over the cap, exhaustive rows fall back to the rank oracle and say so.
    """
    if mode not in ("exhaustive", "rank", "both"):
        raise ValueError(f"unknown audit mode {mode!r}")
    plan = audit_plan(instance)
    ex = rk = None
    ex_error = rk_error = None
    size = instance.q ** instance.input_length
    if mode in ("exhaustive", "both"):
        try:
            ex, _ = _exhaustive_rows(instance, plan, cap, chunk)
        except TooLargeUseRankOracle as exc:
            ex_error = str(exc)
    if mode in ("rank", "both") or ex is None:
        try:
            rk = _rank_rows(instance, plan)
        except NotLinear as exc:
            rk_error = str(exc)
            if mode == "rank" or ex is None:
                raise
    rows = []
    for spec in plan:
        kind, alpha, subset = spec
        if ex is not None and rk is not None:
            (eo, eb, n), (ro, rb) = ex[spec], rk[spec]
            rows.append(AuditRow(kind, alpha, subset, eo and ro, eb, "both", n, agree=eo == ro))
        elif ex is not None:
            eo, eb, n = ex[spec]
            label = "exhaustive" if rk_error is None else "exhaustive (not linear)"
            rows.append(AuditRow(kind, alpha, subset, eo, eb, label, n))
        else:
            ro, rb = rk[spec]
            label = "rank" if ex_error is None else "rank (over enumeration cap)"
            rows.append(AuditRow(kind, alpha, subset, ro, rb, label, None if ex_error else size))
    desc = instance.describe() if hasattr(instance, "describe") else {}
    return VerificationReport(desc, tuple(rows))
