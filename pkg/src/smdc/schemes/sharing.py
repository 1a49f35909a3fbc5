"""Threshold and ramp secret sharing, and superposition coding for s = 1."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import BadThreshold, InsufficientShares, PaddingRequired, ShapeError
from ..field import FieldSpec, default_codebook, mds_decode, mds_encode
from .base import Layer, Scheme, SourceProfile, layers_of, stripes


def ramp_layers(x: np.ndarray, key: np.ndarray, c: int, k: int, L: int, f: FieldSpec) -> np.ndarray:
    """(c, k, L) ramp sharing of ``x`` (..., m) -> shares (..., L, m / (k - c)).

    The k - c secret stripes occupy the low-degree coefficients and the c key
    stripes the high-degree ones, so any c share columns restricted to the
    key rows form a scaled Vandermonde block and stay invertible.
    """
    m = x.shape[-1]
    d = k - c
    n = m // d
    if key.shape[-1] != c * n:
        raise ShapeError(f"ramp layer needs {c * n} key symbols, got {key.shape[-1]}")
    parts = [stripes(x, d)]
    if c:
        parts.append(stripes(key, c))
    msg = np.concatenate(parts, axis=-2)
    return mds_encode(msg, default_codebook(k, L, f))


def ramp_recover(shares: dict[int, np.ndarray], c: int, k: int, L: int, f: FieldSpec) -> np.ndarray:
    msg = mds_decode(shares, default_codebook(k, L, f))
    secret = msg[..., : k - c, :]
    return secret.reshape(secret.shape[:-2] + (-1,))


def _check_ramp(length: int, c: int, k: int, L: int):
    if not 1 <= k <= L:
        raise BadThreshold(f"need 1 <= k <= L, got k={k}, L={L}")
    if not 0 <= c < k:
        raise BadThreshold(f"need 0 <= c < k, got c={c}, k={k}")
    d = k - c
    if length % d:
        raise PaddingRequired(
            f"secret length {length} is not a multiple of k - c = {d}",
            minimal=-(-length // d) * d,
        )


class RampScheme(Scheme):
    """(c, k, L) ramp sharing of one source, viewed as level k with gap s = k - c."""

    scheme_id = "ramp"

    def __init__(self, L: int, c: int, k: int, q: int, length: int):
        _check_ramp(length, c, k, L)
        lengths = [0] * L
        lengths[k - 1] = length
        super().__init__(SourceProfile(L, k - c, q, tuple(lengths), "mss"),
                         key_length=c * length // (k - c))
        self.c, self.k, self.length = c, k, length

    def _encode(self, X, Z):
        Y = ramp_layers(X[self.k], Z, self.c, self.k, self.L, self.field)
        return [[Layer(self.k, "ramp", Y[..., j, :])] for j in range(self.L)]

    def _decode(self, shares, alpha):
        if alpha < self.k:
            raise InsufficientShares(f"{alpha} shares, the secret needs {self.k}")
        ys = {l: layers_of(shares, l, self.k) for l in shares}
        return {self.k: ramp_recover(ys, self.c, self.k, self.L, self.field)}

    def declared_rates(self):
        return (Fraction(self.length, self.k - self.c),) * self.L

    def describe(self):
        return super().describe() | {"c": self.c, "k": self.k}


class ThresholdScheme(RampScheme):
    """(k, L) threshold sharing: a ramp scheme with c = k - 1 (Shamir)."""

    scheme_id = "threshold"

    def __init__(self, L: int, k: int, q: int, length: int):
        if not 1 <= k <= L:
            raise BadThreshold(f"need 1 <= k <= L, got k={k}, L={L}")
        super().__init__(L, k - 1, k, q, length)


def _scalar_bundle(scheme, x, key):
    return scheme.encode({scheme.k: np.asarray(x)}, key)


def threshold_share(x, k: int, L: int, f, key=None):
    f = f if isinstance(f, FieldSpec) else FieldSpec(int(f))
    x = np.asarray(x, dtype=np.int64)
    scheme = ThresholdScheme(L, k, f.q, x.shape[-1])
    return _scalar_bundle(scheme, x, key)


def ramp_share(x, c: int, k: int, L: int, f, key=None):
    f = f if isinstance(f, FieldSpec) else FieldSpec(int(f))
    x = np.asarray(x, dtype=np.int64)
    scheme = RampScheme(L, c, k, f.q, x.shape[-1])
    return _scalar_bundle(scheme, x, key)


class Sup1Scheme(Scheme):
    """Superposition for s = 1: X_alpha goes through an (alpha, L) threshold layer."""

    scheme_id = "sup1"

    def __init__(self, profile: SourceProfile):
        if profile.s != 1:
            raise BadThreshold("superposition with threshold layers needs s = 1")
        key_length = sum((a - 1) * profile.length(a) for a in range(1, profile.L + 1))
        super().__init__(profile, key_length)

    def _key_slices(self):
        out, pos = {}, 0
        for a in range(1, self.L + 1):
            n = (a - 1) * self.profile.length(a)
            out[a] = slice(pos, pos + n)
            pos += n
        return out

    def _encode(self, X, Z):
        out = [[] for _ in range(self.L)]
        keys = self._key_slices()
        for a in self.source_levels():
            Y = ramp_layers(X[a], Z[..., keys[a]], a - 1, a, self.L, self.field)
            for j in range(self.L):
                out[j].append(Layer(a, "threshold", Y[..., j, :]))
        return out

    def _decode(self, shares, alpha):
        res = {}
        for a in self.source_levels():
            if a <= alpha:
                ys = {l: layers_of(shares, l, a) for l in shares}
                res[a] = ramp_recover(ys, a - 1, a, self.L, self.field)
        return res

    def declared_rates(self):
        return (Fraction(sum(self.profile.lengths)),) * self.L


def sup1_encode(profile: SourceProfile, sources, key=None):
    return Sup1Scheme(profile).encode(sources, key)
