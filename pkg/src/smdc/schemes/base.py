"""Shared data types and the encoder/decoder base class."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ..errors import DegenerateProfile, DomainError, InsufficientShares, ShapeError
from ..field import FieldSpec


@dataclass(frozen=True)
class SourceProfile:
    """Problem instance: L encoders, secrecy gap s, field order q, lengths per level.

    ``lengths[a - 1]`` is the number of GF(q) symbols of source X_a in one
    block.  In ``mss`` mode the first s-1 lengths are zero.
    """

    L: int
    s: int
    q: int
    lengths: tuple[int, ...]
    mode: str = "mss"

    def __post_init__(self):
        lengths = tuple(int(v) for v in self.lengths)
        if self.mode == "mss" and len(lengths) == self.L - self.s + 1 and self.s > 1:
            lengths = (0,) * (self.s - 1) + lengths
        object.__setattr__(self, "lengths", lengths)
        if not 1 <= self.s <= self.L:
            raise DomainError(f"need 1 <= s <= L, got s={self.s}, L={self.L}")
        if len(lengths) != self.L:
            raise ShapeError(f"expected {self.L} source lengths, got {len(lengths)}")
        if any(v < 0 for v in lengths):
            raise DomainError("source lengths must be nonnegative")
        if self.mode not in ("mss", "sliding"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.mode == "mss" and any(lengths[: self.s - 1]):
            raise DegenerateProfile("multilevel secret sharing needs l_1..l_{s-1} = 0")
        FieldSpec(self.q)

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.q)

    def length(self, alpha: int) -> int:
        return self.lengths[alpha - 1]

    def entropies(self) -> tuple[Fraction, ...]:
        """Entropies in q-ary symbol units (uniform sources)."""
        return tuple(Fraction(v) for v in self.lengths)

    def first_level(self) -> int:
        return self.s if self.mode == "mss" else 1


@dataclass(frozen=True)
class Layer:
    """One labelled segment of an encoder output; ``alpha`` is its source level."""

    alpha: int
    name: str
    symbols: np.ndarray

    def __len__(self):
        return int(self.symbols.shape[-1])


@dataclass(frozen=True)
class KeyMaterial:
    symbols: np.ndarray
    seed: int | None = None

    @classmethod
    def generate(cls, length: int, q: int, seed: int | None = None, batch=()):
        rng = np.random.default_rng(seed)
        return cls(rng.integers(0, q, size=tuple(batch) + (length,), dtype=np.int64), seed)

    def __len__(self):
        return int(np.shape(self.symbols)[-1])


@dataclass(frozen=True)
class ShareBundle:
    shares: tuple[tuple[Layer, ...], ...]
    profile: SourceProfile
    scheme: str

    @property
    def L(self) -> int:
        return len(self.shares)

    def encoder(self, l: int) -> tuple[Layer, ...]:
        return self.shares[l - 1]

    def symbols(self, l: int) -> np.ndarray:
        layers = self.shares[l - 1]
        if not layers:
            return np.zeros((0,), dtype=np.int64)
        return np.concatenate([lay.symbols for lay in layers], axis=-1)

    def counts(self) -> tuple[int, ...]:
        return tuple(sum(len(lay) for lay in layers) for layers in self.shares)

    def restrict(self, U) -> dict[int, tuple[Layer, ...]]:
        return {l: self.shares[l - 1] for l in sorted(U)}


def stripes(x: np.ndarray, k: int) -> np.ndarray:
    """Equipartition the last axis into ``k`` contiguous pieces: (..., m) -> (..., k, m/k)."""
    m = x.shape[-1]
    if m % k:
        raise ShapeError(f"length {m} does not split into {k} equal pieces")
    return x.reshape(x.shape[:-1] + (k, m // k))


def oplus(l: int, i: int, L: int) -> int:
    """Modulo-L index addition on {1..L}."""
    return (l - 1 + i) % L + 1


class Scheme:
    """Base class of every linear scheme in the package.

    Subclasses implement ``_encode`` (per-encoder list of :class:`Layer`),
    ``_decode`` and ``declared_rates``.  Inputs may carry leading batch
    dimensions; every subclass is written against ``(..., length)`` arrays.
    """

    scheme_id = "abstract"

    def __init__(self, profile: SourceProfile, key_length: int = 0):
        self.profile = profile
        self.key_length = int(key_length)

    # -- basic attributes -------------------------------------------------
    @property
    def L(self) -> int:
        return self.profile.L

    @property
    def s(self) -> int:
        return self.profile.s

    @property
    def q(self) -> int:
        return self.profile.q

    @property
    def field(self) -> FieldSpec:
        return self.profile.field

    def source_levels(self) -> list[int]:
        return [a for a in range(1, self.L + 1) if self.profile.length(a) > 0]

    # -- input layout: all source symbols (level order) then the key ------
    @property
    def input_length(self) -> int:
        return sum(self.profile.lengths) + self.key_length

    def source_slices(self) -> dict[int, slice]:
        out, pos = {}, 0
        for a in range(1, self.L + 1):
            n = self.profile.length(a)
            out[a] = slice(pos, pos + n)
            pos += n
        return out

    def key_slice(self) -> slice:
        start = sum(self.profile.lengths)
        return slice(start, start + self.key_length)

    def split_input(self, z) -> tuple[dict[int, np.ndarray], np.ndarray]:
        z = np.asarray(z, dtype=np.int64)
        if z.shape[-1] != self.input_length:
            raise ShapeError(f"input of length {z.shape[-1]}, expected {self.input_length}")
        X = {a: z[..., sl] for a, sl in self.source_slices().items()}
        return X, z[..., self.key_slice()]

    def join_input(self, sources: Mapping[int, np.ndarray], key) -> np.ndarray:
        X, Z = self._normalize(sources, key)
        parts = [X[a] for a in range(1, self.L + 1)] + [Z]
        return np.concatenate(parts, axis=-1)

    # -- encoding ---------------------------------------------------------
    def _normalize(self, sources, key):
        f = self.field
        if not isinstance(sources, Mapping):
            sources = {a: x for a, x in zip(self.source_levels(), sources)}
        X = {}
        batch = None
        for a in range(1, self.L + 1):
            n = self.profile.length(a)
            if a in sources:
                x = f.reduce(sources[a])
            elif n == 0:
                x = None
            else:
                raise ShapeError(f"missing source X_{a}")
            if x is not None:
                if x.shape[-1] != n:
                    raise ShapeError(f"X_{a} has {x.shape[-1]} symbols, expected {n}")
                batch = x.shape[:-1] if batch is None else batch
            X[a] = x
        if isinstance(key, KeyMaterial):
            key = key.symbols
        if key is None:
            if self.key_length:
                raise ShapeError(f"scheme needs {self.key_length} key symbols")
            Z = None
        else:
            Z = f.reduce(key)
            if Z.shape[-1] != self.key_length:
                raise ShapeError(f"key has {Z.shape[-1]} symbols, expected {self.key_length}")
            batch = Z.shape[:-1] if batch is None else batch
        batch = () if batch is None else batch
        for a, x in X.items():
            X[a] = np.zeros(batch + (0,), dtype=np.int64) if x is None else np.broadcast_to(
                x, batch + x.shape[-1:])
        Z = np.zeros(batch + (0,), dtype=np.int64) if Z is None else np.broadcast_to(
            Z, batch + Z.shape[-1:])
        return X, Z

    def encode(self, sources, key=None) -> ShareBundle:
        X, Z = self._normalize(sources, key)
        layers = self._encode(X, Z)
        shares = tuple(tuple(ls) for ls in layers)
        return ShareBundle(shares, self.profile, self.scheme_id)

    def encode_flat(self, z) -> list[np.ndarray]:
        X, Z = self.split_input(z)
        bundle = self.encode(X, Z)
        batch = np.asarray(z).shape[:-1]
        out = []
        for layers in bundle.shares:
            if layers:
                out.append(np.concatenate([lay.symbols for lay in layers], axis=-1))
            else:
                out.append(np.zeros(batch + (0,), dtype=np.int64))
        return out

    def _encode(self, X: dict[int, np.ndarray], Z: np.ndarray) -> list[list[Layer]]:
        raise NotImplementedError

    # -- decoding ---------------------------------------------------------
    def required_levels(self, alpha: int) -> list[int]:
        return [a for a in range(1, alpha + 1) if self.profile.length(a) > 0]

    def decode(self, shares, U=None) -> dict[int, np.ndarray]:
        """Reconstruct every source with level <= |U| from the shares of U."""
        if isinstance(shares, ShareBundle):
            if U is None:
                U = range(1, shares.L + 1)
            shares = shares.restrict(U)
        else:
            shares = {int(l): v for l, v in shares.items() if U is None or int(l) in set(U)}
        if not shares:
            raise InsufficientShares("no shares supplied")
        if any(not 1 <= l <= self.L for l in shares):
            raise ShapeError(f"encoder indices must lie in 1..{self.L}")
        shares = {l: tuple(v) for l, v in shares.items()}
        alpha = len(shares)
        if alpha < self.profile.first_level():
            raise InsufficientShares(
                f"{alpha} shares cannot reconstruct anything (need {self.profile.first_level()})")
        out = self._decode(shares, alpha)
        some = [lay.symbols for layers in shares.values() for lay in layers]
        batch = some[0].shape[:-1] if some else ()
        for a in range(1, alpha + 1):
            if a not in out and self.profile.length(a) == 0:
                out[a] = np.zeros(batch + (0,), dtype=np.int64)
        return {a: out[a] for a in sorted(out) if a <= alpha}

    def _decode(self, shares: dict[int, tuple[Layer, ...]], alpha: int) -> dict[int, np.ndarray]:
        raise NotImplementedError

    # -- bookkeeping ------------------------------------------------------
    def declared_rates(self) -> tuple[Fraction, ...]:
        raise NotImplementedError

    def random_input(self, rng: np.random.Generator, batch=()) -> np.ndarray:
        return rng.integers(0, self.q, size=tuple(batch) + (self.input_length,), dtype=np.int64)

    def describe(self) -> dict:
        return {
            "scheme": self.scheme_id,
            "mode": self.profile.mode,
            "L": self.L,
            "s": self.s,
            "q": self.q,
            "lengths": list(self.profile.lengths),
        }

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"


def layers_of(shares: Mapping[int, Sequence[Layer]], l: int, alpha: int, name: str | None = None):
    """The layer of encoder ``l`` at level ``alpha`` (and with ``name`` when given)."""
    for lay in shares[l]:
        if lay.alpha == alpha and (name is None or lay.name == name):
            return lay.symbols
    raise ShapeError(f"encoder {l} carries no layer for level {alpha} ({name})")
