"""Key-chained multilevel secret sharing.

Both encoders MDS-encode every level into L streams and use the streams of
level alpha - 1 as one-time pads for level alpha, so no external key is
spent while the chain has enough material.

``GeneralMssScheme`` works for any (L, s) with s >= 2 by splitting each
stream into L(alpha - s + 1) pieces and masking with sums of alpha - s
pieces.  ``ChainScheme`` is the lighter variant for L < 2s, masking
encoder l's level-alpha stream with the whole level-(alpha-1) stream of
encoder l+1; with ``allow_deficit`` it falls back to a ramp layer for the
part of X_alpha the previous level cannot cover.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import KeyDeficit, PaddingRequired, WrongScheme
from ..field import default_codebook, mds_decode, mds_encode
from .base import Layer, Scheme, SourceProfile, layers_of, oplus, stripes
from .sharing import ramp_layers, ramp_recover


def _ceil_to(x: int, unit: int) -> int:
    return -(-x // unit) * unit if unit else x


def _flatten(pieces: np.ndarray) -> np.ndarray:
    return pieces.reshape(pieces.shape[:-2] + (-1,))


def _require_mss(profile: SourceProfile):
    if profile.mode != "mss":
        raise WrongScheme("key chaining applies to the multilevel secret sharing block only")


class GeneralMssScheme(Scheme):
    scheme_id = "general"

    def __init__(self, profile: SourceProfile):
        _require_mss(profile)
        L, s = profile.L, profile.s
        if s == 1 and L > 1:
            raise WrongScheme("s = 1 admits no key chaining; use superposition (sup1)")
        super().__init__(profile, 0)
        problems = self._violations()
        if problems:
            raise PaddingRequired("; ".join(problems), minimal=self.minimal_lengths(profile))
        self.width = {a: profile.length(a) // a for a in range(s, L + 1)}

    def _pieces(self, a: int) -> int:
        return self.L * (a - self.s + 1)

    def _violations(self) -> list[str]:
        p, out = self.profile, []
        for a in range(self.s, self.L + 1):
            la = p.length(a)
            if la % a or (la // a) % self._pieces(a):
                out.append(f"l_{a} = {la} must be a multiple of {a * self._pieces(a)}")
        for a in range(self.s + 1, self.L + 1):
            if Fraction(p.length(a - 1), a - 1) < self.L * (a - self.s) * Fraction(p.length(a), a):
                out.append(f"chain condition fails at level {a}: "
                           f"l_{a-1}/{a-1} < {self.L * (a - self.s)} * l_{a}/{a}")
        return out

    @staticmethod
    def minimal_lengths(profile: SourceProfile) -> tuple[int, ...]:
        """Componentwise smallest lengths >= the given ones meeting every precondition."""
        L, s = profile.L, profile.s
        m = list(profile.lengths)
        for a in range(L, s - 1, -1):
            need = m[a - 1]
            if a < L:
                need = max(need, a * L * (a + 1 - s) * (m[a] // (a + 1)))
            m[a - 1] = _ceil_to(need, a * L * (a - s + 1))
        return tuple(m)

    def _mask(self, Yprev: np.ndarray, a: int, l: int) -> np.ndarray:
        # pieces of level a-1 streams: L(a-s) per stream, truncated to the level-a width
        width = self.width[a]
        pw = self.width[a - 1] // (self.L * (a - self.s))
        total = np.zeros(Yprev.shape[:-2] + (width,), dtype=np.int64)
        for i in range(1, a - self.s + 1):
            j = oplus(l, i, self.L)
            p = (l - 1) * (a - self.s) + i
            start = (p - 1) * pw
            total = total + Yprev[..., j - 1, start:start + width]
        return total % self.q

    def _streams(self, x: np.ndarray, a: int) -> np.ndarray:
        return mds_encode(stripes(x, a), default_codebook(a, self.L, self.field))

    def _encode(self, X, Z):
        s, q = self.s, self.q
        Y = {a: self._streams(X[a], a) for a in range(s, self.L + 1)}
        out = []
        for l in range(1, self.L + 1):
            layers = [Layer(s, "Y", Y[s][..., l - 1, :])]
            for a in range(s + 1, self.L + 1):
                masked = (Y[a][..., l - 1, :] + self._mask(Y[a - 1], a, l)) % q
                layers.append(Layer(a, "Y+chain", masked))
            out.append(layers)
        return out

    def _decode(self, shares, alpha):
        s, q, f = self.s, self.q, self.field
        cb = default_codebook(s, self.L, f)
        pieces = mds_decode({l: layers_of(shares, l, s) for l in shares}, cb)
        res = {s: _flatten(pieces)}
        Yfull = mds_encode(pieces, cb)
        for a in range(s + 1, alpha + 1):
            ys = {l: (layers_of(shares, l, a) - self._mask(Yfull, a, l)) % q for l in shares}
            cb = default_codebook(a, self.L, f)
            pieces = mds_decode(ys, cb)
            res[a] = _flatten(pieces)
            Yfull = mds_encode(pieces, cb)
        return res

    def declared_rates(self):
        r = sum((Fraction(self.profile.length(a), a) for a in range(self.s, self.L + 1)), Fraction(0))
        return (r,) * self.L


def chain_level_rates(L: int, s: int, lengths) -> dict[int, Fraction]:
    """Per-encoder rate of each level under whole-stream chaining with ramp fallback.

    A level whose stream width l_a / a exceeds the chained key width of the
    previous level chains only a * width symbols and ramp-shares the rest
    with gap s, costing (l_a - a * width) / s per encoder.
    """
    lengths = list(lengths)
    if len(lengths) == L - s + 1 and s > 1:
        lengths = [0] * (s - 1) + lengths
    out = {s: Fraction(lengths[s - 1], s)}
    width = out[s]
    for a in range(s + 1, L + 1):
        need = Fraction(lengths[a - 1], a)
        if need <= width:
            out[a] = need
            width = need
        else:
            out[a] = width + (lengths[a - 1] - a * width) / s
    return out


class ChainScheme(Scheme):
    scheme_id = "chain"

    def __init__(self, profile: SourceProfile, allow_deficit: bool = False):
        _require_mss(profile)
        L, s = profile.L, profile.s
        if L >= 2 * s:
            raise WrongScheme(f"whole-stream chaining needs L < 2s, got L={L}, s={s}")
        if allow_deficit:
            self.scheme_id = "hybrid"
        self.width: dict[int, int] = {}
        self.rem: dict[int, int] = {}
        problems = []
        minimal = list(profile.lengths)
        width = None
        for a in range(s, L + 1):
            la = profile.length(a)
            if width is None or la <= a * width:
                if la % a:
                    problems.append(f"l_{a} = {la} must be a multiple of {a}")
                    minimal[a - 1] = _ceil_to(la, a)
                self.width[a], self.rem[a] = la // a, 0
            else:
                if not allow_deficit:
                    raise KeyDeficit(
                        f"level {a - 1} streams ({width} symbols) cannot mask level {a} "
                        f"({Fraction(la, a)} symbols per stream); use the hybrid scheme")
                rem = la - a * width
                if rem % s:
                    problems.append(f"ramp part of X_{a} ({rem} symbols) must be a multiple of s = {s}")
                    minimal[a - 1] = a * width + _ceil_to(rem, s)
                self.width[a], self.rem[a] = width, rem
            width = self.width[a]
        if problems:
            raise PaddingRequired("; ".join(problems), minimal=tuple(minimal))
        key = sum((a - s) * self.rem[a] // s for a in range(s + 1, L + 1))
        super().__init__(profile, key)

    def _key_slices(self):
        out, pos = {}, 0
        for a in range(self.s + 1, self.L + 1):
            n = (a - self.s) * self.rem[a] // self.s
            out[a] = slice(pos, pos + n)
            pos += n
        return out

    def _encode(self, X, Z):
        s, q, L, f = self.s, self.q, self.L, self.field
        keys = self._key_slices()
        out = [[] for _ in range(L)]
        Yprev = None
        for a in range(s, L + 1):
            rem = self.rem[a]
            chained = X[a][..., rem:]
            Y = mds_encode(stripes(chained, a), default_codebook(a, L, f))
            ramp = ramp_layers(X[a][..., :rem], Z[..., keys[a]], a - s, a, L, f) if rem else None
            w = self.width[a]
            for l in range(1, L + 1):
                if a == s:
                    out[l - 1].append(Layer(a, "Y", Y[..., l - 1, :]))
                    continue
                masked = (Y[..., l - 1, :] + Yprev[..., oplus(l, 1, L) - 1, :w]) % q
                out[l - 1].append(Layer(a, "Y+chain", masked))
                if ramp is not None:
                    out[l - 1].append(Layer(a, "ramp", ramp[..., l - 1, :]))
            Yprev = Y
        return out

    def _decode(self, shares, alpha):
        s, q, L, f = self.s, self.q, self.L, self.field
        res = {}
        Yfull = None
        for a in range(s, alpha + 1):
            w = self.width[a]
            if a == s:
                ys = {l: layers_of(shares, l, a, "Y") for l in shares}
            else:
                ys = {l: (layers_of(shares, l, a, "Y+chain") - Yfull[..., oplus(l, 1, L) - 1, :w]) % q
                      for l in shares}
            cb = default_codebook(a, L, f)
            pieces = mds_decode(ys, cb)
            x = _flatten(pieces)
            if self.rem[a]:
                rs = {l: layers_of(shares, l, a, "ramp") for l in shares}
                x = np.concatenate([ramp_recover(rs, a - s, a, L, f), x], axis=-1)
            res[a] = x
            Yfull = mds_encode(pieces, cb)
        return res

    def declared_rates(self):
        rates = chain_level_rates(self.L, self.s, self.profile.lengths)
        return (sum(rates.values(), Fraction(0)),) * self.L


def mss_general_encode(profile: SourceProfile, sources):
    return GeneralMssScheme(profile).encode(sources)


def mss_general_decode(bundle, U):
    return GeneralMssScheme(bundle.profile).decode(bundle, U)


def mss_chain_encode(profile: SourceProfile, sources):
    return ChainScheme(profile).encode(sources)


def mss_chain_decode(bundle, U):
    return ChainScheme(bundle.profile).decode(bundle, U)


def mss_hybrid_encode(profile: SourceProfile, sources, key=None):
    return ChainScheme(profile, allow_deficit=True).encode(sources, key)


def mss_hybrid_decode(bundle, U):
    return ChainScheme(bundle.profile, allow_deficit=True).decode(bundle, U)
