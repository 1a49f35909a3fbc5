"""Instance configs and the share file format, with octet <-> symbol conversion.

Share file layout (all integers little-endian)::

    "SMDC"                      magic, 4 octets
    version                     u8   (= 1)
    q                           u16
    L, s, encoder index         u8 each
    n_blocks                    u32
    descriptor length, JSON     u32 + UTF-8 (scheme id, mode, lengths)
    layer count                 u16
    per layer: alpha, count     u8 + u32, symbols per block
    per level: source octets    L x u64, original file sizes (padding info)
    payload                     n_blocks x sum(counts) symbols, u16 each

The descriptor lets a decoder rebuild the scheme from share files alone.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, FormatError, SMDCError, ShapeError
from .schemes import Scheme, SourceProfile, build_scheme
from .schemes.base import Layer

MAGIC = b"SMDC"
VERSION = 1


# -- octets <-> symbols --------------------------------------------------------

def digits_per_octet(q: int) -> int:
    """Symbols used per octet: 8 bits for q = 2, base-q digits below 257, else 1."""
    if q == 2:
        return 8
    if q >= 257:
        return 1
    d, cap = 1, q
    while cap < 256:
        d, cap = d + 1, cap * q
    return d


def octets_to_symbols(data: bytes, q: int) -> np.ndarray:
    raw = np.frombuffer(bytes(data), dtype=np.uint8).astype(np.int64)
    if q == 2:
        return np.unpackbits(raw.astype(np.uint8)).astype(np.int64)
    if q >= 257:
        return raw
    d = digits_per_octet(q)
    powers = q ** np.arange(d, dtype=np.int64)
    return ((raw[:, None] // powers[None, :]) % q).reshape(-1)


def symbols_to_octets(symbols, q: int, n_octets: int) -> bytes:
    sym = np.asarray(symbols, dtype=np.int64).reshape(-1)
    d = digits_per_octet(q)
    need = n_octets * d
    if sym.size < need:
        raise ShapeError(f"{sym.size} symbols cannot hold {n_octets} octets")
    sym = sym[:need]
    if q == 2:
        return np.packbits(sym.astype(np.uint8)).tobytes()
    if q >= 257:
        vals = sym
    else:
        vals = sym.reshape(-1, d) @ (q ** np.arange(d, dtype=np.int64))
    if np.any(vals > 255):
        raise FormatError("decoded symbols do not map back to octets")
    return vals.astype(np.uint8).tobytes()


def pad_to_blocks(symbols: np.ndarray, block: int, n_blocks: int) -> np.ndarray:
    """Zero-pad a symbol stream to ``n_blocks`` rows of ``block`` symbols."""
    out = np.zeros(n_blocks * block, dtype=np.int64)
    if symbols.size > out.size:
        raise ShapeError(f"{symbols.size} symbols do not fit {n_blocks} blocks of {block}")
    out[: symbols.size] = symbols
    return out.reshape(n_blocks, block)


# -- instance config -------------------------------------------------------------

SCHEME_IDS = ("general", "chain", "hybrid", "sup1", "pseudo-sup")


@dataclass(frozen=True)
class InstanceConfig:
    mode: str
    L: int
    s: int
    q: int
    lengths: tuple[int, ...]
    scheme: str
    seed: int = 0

    def __post_init__(self):
        ok = self.scheme in SCHEME_IDS or self.scheme.startswith(("corner:", "pseudo-sup:"))
        if not ok:
            raise DomainError(f"unknown scheme id {self.scheme!r}")
        if self.scheme.startswith("pseudo-sup") and self.mode != "sliding":
            raise DomainError("pseudo-superposition encodes sliding (mode: sliding) instances")
        if not self.scheme.startswith("pseudo-sup") and self.mode != "mss":
            raise DomainError(f"scheme {self.scheme} encodes mss instances, got mode {self.mode}")
        self.profile()

    def profile(self) -> SourceProfile:
        return SourceProfile(self.L, self.s, self.q, tuple(self.lengths), self.mode)

    def build(self) -> Scheme:
        return build_scheme(self.profile(), self.scheme)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "L": self.L, "s": self.s, "q": self.q,
                "lengths": list(self.lengths), "scheme": self.scheme, "seed": self.seed}


def config_from_dict(doc: dict) -> InstanceConfig:
    try:
        return InstanceConfig(
            mode=str(doc.get("mode", "mss")),
            L=int(doc["L"]),
            s=int(doc["s"]),
            q=int(doc["q"]),
            lengths=tuple(int(v) for v in doc["lengths"]),
            scheme=str(doc["scheme"]),
            seed=int(doc.get("seed", 0)),
        )
    except SMDCError:
        raise
    except KeyError as exc:
        raise FormatError(f"config is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed config: {exc}") from exc


def load_config(path) -> InstanceConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: config must be a JSON object")
    return config_from_dict(doc)


# -- share files ----------------------------------------------------------------

@dataclass(frozen=True)
class ShareFile:
    q: int
    L: int
    s: int
    index: int
    n_blocks: int
    descriptor: dict
    layers: tuple[tuple[int, int], ...]          # (alpha, symbols per block)
    octets: tuple[int, ...]                      # original source sizes per level
    payload: np.ndarray = field(repr=False)      # (n_blocks, sum of counts)

    def __eq__(self, other):
        if not isinstance(other, ShareFile):
            return NotImplemented
        return to_bytes(self) == to_bytes(other)


def to_bytes(sf: ShareFile) -> bytes:
    desc = json.dumps(sf.descriptor, sort_keys=True).encode()
    out = [MAGIC, struct.pack("<BHBBBI", VERSION, sf.q, sf.L, sf.s, sf.index, sf.n_blocks),
           struct.pack("<I", len(desc)), desc, struct.pack("<H", len(sf.layers))]
    for alpha, count in sf.layers:
        out.append(struct.pack("<BI", alpha, count))
    out.append(struct.pack(f"<{sf.L}Q", *sf.octets))
    payload = np.asarray(sf.payload, dtype="<u2")
    if payload.shape != (sf.n_blocks, sum(c for _, c in sf.layers)):
        raise ShapeError(f"payload shape {payload.shape} disagrees with the layer directory")
    out.append(payload.tobytes())
    return b"".join(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data, self.pos = data, 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError(f"share file truncated at octet {len(self.data)} (needed {self.pos + n})")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def from_bytes(data: bytes) -> ShareFile:
    r = _Reader(bytes(data))
    if r.take(4) != MAGIC:
        raise FormatError("not a share file (bad magic)")
    version, q, L, s, index, n_blocks = r.unpack("<BHBBBI")
    if version != VERSION:
        raise FormatError(f"unsupported share file version {version}")
    (n_desc,) = r.unpack("<I")
    try:
        descriptor = json.loads(r.take(n_desc).decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"corrupt scheme descriptor: {exc}") from exc
    (n_layers,) = r.unpack("<H")
    layers = tuple(r.unpack("<BI") for _ in range(n_layers))
    octets = r.unpack(f"<{L}Q")
    width = sum(c for _, c in layers)
    raw = r.take(2 * n_blocks * width)
    if r.pos != len(r.data):
        raise FormatError(f"{len(r.data) - r.pos} unexpected trailing octets")
    payload = np.frombuffer(raw, dtype="<u2").astype(np.int64).reshape(n_blocks, width)
    if np.any(payload >= q):
        raise FormatError(f"payload symbol outside GF({q})")
    return ShareFile(q, L, s, index, n_blocks, descriptor, layers, tuple(octets), payload)


def write_share(path, sf: ShareFile) -> bytes:
    data = to_bytes(sf)
    Path(path).write_bytes(data)
    return data


def read_share(path) -> ShareFile:
    return from_bytes(Path(path).read_bytes())


def descriptor_of(scheme: Scheme) -> dict:
    d = {"scheme": scheme.scheme_id, "mode": scheme.profile.mode,
         "lengths": list(scheme.profile.lengths)}
    inner = getattr(scheme, "inner", None)
    if inner is not None:
        d["scheme"] = f"pseudo-sup:{inner.scheme_id}"
    return d


def scheme_from_share(sf: ShareFile) -> Scheme:
    try:
        profile = SourceProfile(sf.L, sf.s, sf.q, tuple(sf.descriptor["lengths"]), sf.descriptor["mode"])
        return build_scheme(profile, sf.descriptor["scheme"])
    except KeyError as exc:
        raise FormatError(f"descriptor lacks {exc.args[0]!r}") from exc


def bundle_to_files(bundle, scheme: Scheme, n_blocks: int, octets) -> list[ShareFile]:
    """One share file per encoder for a bundle encoded with batch shape (n_blocks,)."""
    desc = descriptor_of(scheme)
    out = []
    for l in range(1, bundle.L + 1):
        layers = bundle.encoder(l)
        parts = [lay.symbols.reshape(n_blocks, -1) for lay in layers]
        payload = np.hstack(parts) if parts else np.zeros((n_blocks, 0), dtype=np.int64)
        out.append(ShareFile(scheme.q, scheme.L, scheme.s, l, n_blocks, desc,
                             tuple((lay.alpha, len(lay)) for lay in layers),
                             tuple(int(o) for o in octets), payload))
    return out


def layers_from_file(sf: ShareFile, scheme: Scheme) -> tuple[Layer, ...]:
    """Split a share file's payload into named layers using the scheme's own layout."""
    probe = scheme.encode(*scheme.split_input(np.zeros(scheme.input_length, dtype=np.int64)))
    names = probe.encoder(sf.index)
    expect = tuple((lay.alpha, len(lay)) for lay in names)
    if expect != tuple(tuple(x) for x in sf.layers):
        raise FormatError(f"layer directory {sf.layers} does not match scheme layout {expect}")
    out, pos = [], 0
    for lay in names:
        n = len(lay)
        out.append(Layer(lay.alpha, lay.name, sf.payload[:, pos:pos + n]))
        pos += n
    return tuple(out)
