"""Pseudo-superposition for sliding secure SMDC.

Sources below the secrecy gap need no protection, so X_1..X_{s-1} are
striped through plain (L, alpha) MDS codes.  X_s..X_L form a multilevel
secret sharing instance and go through one of the key-chained encoders.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import KeyDeficit, PaddingRequired, WrongScheme
from ..field import default_codebook, mds_decode, mds_encode
from .base import Layer, Scheme, SourceProfile, layers_of, stripes
from .mss import ChainScheme, GeneralMssScheme
from .sharing import Sup1Scheme

INNER = ("auto", "general", "chain", "hybrid", "sup1")


def mss_block(profile: SourceProfile, inner: str = "auto") -> Scheme:
    """Build the multilevel secret sharing encoder named by ``inner``.

    ``auto`` prefers the sum-rate optimal constructions: superposition for
    s = 1, whole-stream chaining when L < 2s and the levels thin out fast
    enough, then the sub-partitioned general scheme, and finally the hybrid
    ramp fallback.
    """
    if inner == "sup1":
        return Sup1Scheme(profile)
    if inner == "general":
        return GeneralMssScheme(profile)
    if inner == "chain":
        return ChainScheme(profile)
    if inner == "hybrid":
        return ChainScheme(profile, allow_deficit=True)
    if inner != "auto":
        raise WrongScheme(f"unknown inner scheme {inner!r}")
    if profile.s == 1:
        return Sup1Scheme(profile)
    if profile.L < 2 * profile.s:
        try:
            return ChainScheme(profile)
        except KeyDeficit:
            pass
    try:
        return GeneralMssScheme(profile)
    except PaddingRequired:
        if profile.L >= 2 * profile.s:
            raise
    return ChainScheme(profile, allow_deficit=True)


class PseudoSupScheme(Scheme):
    scheme_id = "pseudo-sup"

    def __init__(self, profile: SourceProfile, inner: str = "auto"):
        s = profile.s
        low = [a for a in range(1, s) if profile.length(a) % a]
        if low:
            minimal = tuple(-(-v // a) * a if a < s else v
                            for a, v in enumerate(profile.lengths, start=1))
            raise PaddingRequired(
                "unprotected levels need l_a divisible by a: " + ", ".join(f"a={a}" for a in low),
                minimal=minimal)
        upper = (0,) * (s - 1) + profile.lengths[s - 1:]
        self.inner = mss_block(SourceProfile(profile.L, s, profile.q, upper, "mss"), inner)
        super().__init__(SourceProfile(profile.L, s, profile.q, profile.lengths, "sliding"),
                         self.inner.key_length)

    def _encode(self, X, Z):
        L, f = self.L, self.field
        out = [[] for _ in range(L)]
        for a in range(1, self.s):
            Y = mds_encode(stripes(X[a], a), default_codebook(a, L, f))
            for j in range(L):
                out[j].append(Layer(a, "mds", Y[..., j, :]))
        inner = self.inner._encode({a: X[a] if a >= self.s else X[a][..., :0] for a in X}, Z)
        for j in range(L):
            out[j].extend(inner[j])
        return out

    def _decode(self, shares, alpha):
        L, f = self.L, self.field
        res = {}
        for a in range(1, min(alpha, self.s - 1) + 1):
            ys = {l: layers_of(shares, l, a, "mds") for l in shares}
            pieces = mds_decode(ys, default_codebook(a, L, f))
            res[a] = pieces.reshape(pieces.shape[:-2] + (-1,))
        if alpha >= self.s:
            res.update(self.inner._decode(shares, alpha))
        return res

    def declared_rates(self):
        low = sum((Fraction(self.profile.length(a), a) for a in range(1, self.s)), Fraction(0))
        return tuple(low + r for r in self.inner.declared_rates())

    def describe(self):
        return super().describe() | {"inner": self.inner.scheme_id}


def smdc_pseudo_sup_encode(profile: SourceProfile, sources, key=None, inner: str = "auto"):
    return PseudoSupScheme(profile, inner).encode(sources, key)


def smdc_pseudo_sup_decode(bundle, U, inner: str = "auto"):
    return PseudoSupScheme(bundle.profile, inner).decode(bundle, U)
