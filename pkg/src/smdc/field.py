"""Prime-field arithmetic with exact elimination, plus the Vandermonde MDS codec.

Symbols are stored in ``int64`` numpy arrays with values in ``[0, q)``.
Every routine that touches symbol data accepts arbitrary leading batch
dimensions, so an exhaustive audit can push thousands of inputs through an
encoder in one call.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    CorruptShare,
    DegenerateCode,
    DomainError,
    InsufficientShares,
    NoInverse,
    ShapeError,
)

# one symbol per unsigned 16-bit slot
MAX_MODULUS = 65521


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def smallest_field_for(L: int) -> int:
    """Smallest prime ``q`` with ``q >= L + 1`` (room for L distinct nonzero points)."""
    q = max(2, L + 1)
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or not is_prime(int(self.q)):
            raise DomainError(f"field order must be prime, got {self.q!r}")
        if self.q > MAX_MODULUS:
            raise DomainError(f"field order {self.q} exceeds 16-bit symbol storage")
        object.__setattr__(self, "q", int(self.q))

    def reduce(self, a) -> np.ndarray:
        return np.mod(np.asarray(a, dtype=np.int64), self.q)

    def random(self, size, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.q, size=size, dtype=np.int64)


def _as_field(f) -> FieldSpec:
    return f if isinstance(f, FieldSpec) else FieldSpec(int(f))


def gf_inverse(a: int, f: FieldSpec | int) -> int:
    f = _as_field(f)
    a = int(a) % f.q
    if a == 0:
        raise NoInverse("zero has no multiplicative inverse")
    return pow(a, -1, f.q)


def row_reduce(M, f: FieldSpec | int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form over GF(q) and the pivot columns.

    Pivots are taken column by column, left to right, using the topmost
    nonzero entry at or below the current row, so the output is fully
    determined by the input.
    """
    f = _as_field(f)
    q = f.q
    A = f.reduce(M)
    if A.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {A.shape}")
    A = A.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r, c:] = (A[r, c:] * pow(int(A[r, c]), -1, q)) % q
        # the pivot row is zero left of c, so only columns c.. change
        hit = np.flatnonzero(A[:, c])
        hit = hit[hit != r]
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(A[hit, c], A[r, c:])) % q
        pivots.append(c)
        r += 1
    return A, tuple(pivots)


def mat_rank(M, f: FieldSpec | int) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(row_reduce(A, f)[1])


def mat_inverse(M, f: FieldSpec | int) -> np.ndarray:
    f = _as_field(f)
    A = f.reduce(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError(f"cannot invert non-square matrix of shape {A.shape}")
    R, piv = row_reduce(np.hstack([A, np.eye(n, dtype=np.int64)]), f)
    if piv[:n] != tuple(range(n)):
        raise NoInverse("matrix is singular over GF(%d)" % f.q)
    return R[:, n:]


def mat_mul(A, B, f: FieldSpec | int) -> np.ndarray:
    f = _as_field(f)
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % f.q


@dataclass(frozen=True)
class MdsCodebook:
    """An (L, alpha) MDS code with Vandermonde generator ``alpha x L``."""

    alpha: int
    L: int
    points: tuple[int, ...]
    field: FieldSpec
    generator: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.field.q


def vandermonde(alpha: int, points: Sequence[int], f: FieldSpec | int) -> MdsCodebook:
    f = _as_field(f)
    pts = tuple(int(p) % f.q for p in points)
    L = len(pts)
    if not 1 <= alpha <= L:
        raise DegenerateCode(f"need 1 <= alpha <= L, got alpha={alpha}, L={L}")
    if len(set(pts)) != L:
        raise DegenerateCode(f"evaluation points must be pairwise distinct: {pts}")
    G = np.ones((alpha, L), dtype=np.int64)
    base = np.array(pts, dtype=np.int64)
    for r in range(1, alpha):
        G[r] = (G[r - 1] * base) % f.q
    G.setflags(write=False)
    return MdsCodebook(alpha, L, pts, f, G)


def default_codebook(alpha: int, L: int, f: FieldSpec | int) -> MdsCodebook:
    """Codebook on the points 1..L; these are nonzero and distinct whenever q > L."""
    f = _as_field(f)
    if f.q <= L:
        raise DegenerateCode(f"GF({f.q}) has fewer than {L} distinct nonzero points")
    return vandermonde(alpha, range(1, L + 1), f)


def mds_encode(message, cb: MdsCodebook) -> np.ndarray:
    """Encode ``alpha`` equal-length stripes into ``L`` shares.

    ``message`` has shape ``(..., alpha, m)``; the result has shape
    ``(..., L, m)`` where share ``j`` is sum_r stripe_r * b_j**r.
    """
    try:
        X = cb.field.reduce(message)
    except ValueError as exc:  # ragged input
        raise ShapeError("message stripes must all have the same length") from exc
    if X.ndim < 2 or X.shape[-2] != cb.alpha:
        raise ShapeError(f"expected {cb.alpha} stripes, got array of shape {X.shape}")
    return np.einsum("...rt,rj->...jt", X, cb.generator) % cb.q


def mds_decode(shares: Mapping[int, object], cb: MdsCodebook) -> np.ndarray:
    """Recover the ``(..., alpha, m)`` message from shares keyed by index 1..L."""
    idx = sorted({int(j) for j in shares})
    if any(not 1 <= j <= cb.L for j in idx):
        raise ShapeError(f"share indices must lie in 1..{cb.L}: {idx}")
    if len(idx) < cb.alpha:
        raise InsufficientShares(f"need {cb.alpha} distinct shares, got {len(idx)}")
    arrays = {j: cb.field.reduce(shares[j]) for j in idx}
    shapes = {a.shape for a in arrays.values()}
    if len(shapes) != 1:
        raise ShapeError(f"shares disagree in shape: {sorted(shapes)}")
    basis = idx[: cb.alpha]
    Y = np.stack([arrays[j] for j in basis], axis=-2)
    sub = cb.generator[:, [j - 1 for j in basis]]
    D = mat_inverse(sub.T, cb.field)
    X = np.einsum("ri,...it->...rt", D, Y) % cb.q
    extra = idx[cb.alpha:]
    if extra:
        cols = [j - 1 for j in extra]
        check = np.einsum("...rt,rj->...jt", X, cb.generator[:, cols]) % cb.q
        for k, j in enumerate(extra):
            if not np.array_equal(check[..., k, :], arrays[j]):
                raise CorruptShare(f"share {j} is inconsistent with the others")
    return X
