"""Binary schemes for the corner points of the (3, 2) multilevel secret sharing region.

Every scheme is a table: each encoder emits a list of layers written as
``"Y"`` or ``"Y+M"``.  A masked layer adds the first |Y| bits of ``M`` to
``Y``, so a mask may be a prefix of a longer segment.  X2 is cut into
A2, B2 (and C2), X3 into A3, B3, ... in the order listed by ``_segments``.
Decoding follows the same table: the level-2 segments come from any two
encoders, after which every level-3 layer can be unmasked.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import CornerUnavailable, ShapeError
from .base import Layer, Scheme, SourceProfile

CORNERS = ("Q1", "P1", "O", "S1", "T1", "S4", "T4", "S10")

_TABLE = {
    "Q1": [[], [(2, "X2"), (3, "Z")], [(2, "X2"), (3, "X3+Z")]],
    "P1": [[(2, "A2+B2")],
           [(2, "A2"), (3, "A3+B2"), (3, "Z")],
           [(2, "B2"), (3, "B3+A2"), (3, "C3+Z")]],
    "O": [[(2, "A2+B2"), (3, "A3+A2"), (3, "Z")],
          [(2, "A2"), (3, "B3+B2"), (3, "D3+Z")],
          [(2, "B2"), (3, "C3+A2"), (3, "E3+Z")]],
    "S1": [[(2, "A2+B2"), (3, "C3+A2")],
           [(2, "A2"), (3, "A3+B2")],
           [(2, "B2"), (3, "B3+A2")]],
    "T1": [[(2, "A2+B2")],
           [(2, "A2"), (2, "C2"), (3, "A3+B2")],
           [(2, "B2"), (2, "C2"), (3, "B3+A2")]],
    "S4": [[(2, "A2+B2")],
           [(2, "A2"), (3, "A3+B2")],
           [(2, "B2"), (3, "B3+A2")]],
    "T4": [[(2, "A2+B2")],
           [(2, "A2"), (2, "C2"), (3, "X3+B2")],
           [(2, "B2"), (2, "C2")]],
    "S10": [[(2, "A2+B2")],
            [(2, "A2"), (3, "X3+B2")],
            [(2, "B2")]],
}


def _availability(corner: str, l2: int, l3: int) -> list[str]:
    rules = {
        "Q1": [],
        "P1": [(l2 % 2 == 0, "l2 even"), (l3 >= l2, "l3 >= l2")],
        "O": [(l2 % 2 == 0, "l2 even"), (2 * l3 > 3 * l2, "2 l3 > 3 l2"),
              ((2 * l3 - 3 * l2) % 4 == 0, "l3/2 - 3 l2/4 integral")],
        "S1": [(l2 % 2 == 0, "l2 even"), (l2 < l3, "l2 < l3"), (2 * l3 <= 3 * l2, "l3 <= 3 l2/2")],
        "T1": [(l3 % 2 == 0, "l3 even"), (l3 <= l2, "l3 <= l2")],
        "S4": [(l2 % 2 == 0, "l2 even"), (l3 <= l2, "l3 <= l2"), (2 * l3 >= l2, "l3 >= l2/2")],
        "T4": [(2 * l3 <= l2, "2 l3 <= l2")],
        "S10": [(l2 % 2 == 0, "l2 even"), (2 * l3 <= l2, "2 l3 <= l2")],
    }[corner]
    return [msg for ok, msg in rules if not ok]


def _segments(corner: str, l2: int, l3: int):
    """(X2 segments, X3 segments, key length), segments as (name, length)."""
    h = l2 // 2
    if corner == "Q1":
        return [("X2", l2)], [("X3", l3)], l3
    if corner == "P1":
        return [("A2", h), ("B2", h)], [("A3", h), ("B3", h), ("C3", l3 - l2)], l3 - l2
    if corner == "O":
        d = (2 * l3 - 3 * l2) // 4
        return ([("A2", h), ("B2", h)],
                [("A3", h), ("B3", h), ("C3", h), ("D3", d), ("E3", d)], d)
    if corner == "S1":
        return [("A2", h), ("B2", h)], [("A3", h), ("B3", h), ("C3", l3 - l2)], 0
    if corner == "T1":
        t = l3 // 2
        return [("A2", t), ("B2", t), ("C2", l2 - l3)], [("A3", t), ("B3", t)], 0
    if corner == "S4":
        return [("A2", h), ("B2", h)], [("A3", h), ("B3", l3 - h)], 0
    if corner == "T4":
        return [("A2", l3), ("B2", l3), ("C2", l2 - 2 * l3)], [("X3", l3)], 0
    return [("A2", h), ("B2", h)], [("X3", l3)], 0


def _cut(x: np.ndarray, segs) -> dict[str, np.ndarray]:
    out, pos = {}, 0
    for name, n in segs:
        out[name] = x[..., pos:pos + n]
        pos += n
    return out


def _corner_rates(corner: str, l2: int, l3: int) -> tuple[Fraction, Fraction, Fraction]:
    H2, H3 = Fraction(l2), Fraction(l3)
    return {
        "Q1": (Fraction(0), H2 + H3, H2 + H3),
        "P1": (H2 / 2, H3, H3),
        "O": (H2 / 4 + H3 / 2,) * 3,
        "S1": (H3 - H2 / 2, H2, H2),
        "T1": (H3 / 2, H2, H2),
        "S4": (H2 / 2, H2, H3),
        "T4": (H3, H2, H2 - H3),
        "S10": (H2 / 2, H2 / 2 + H3, H2 / 2),
    }[corner]


class Mss32CornerScheme(Scheme):
    """Bitwise scheme achieving one labelled corner of the (3, 2) region."""

    def __init__(self, corner: str, l2: int, l3: int):
        if corner not in _TABLE:
            raise CornerUnavailable(f"unknown corner {corner!r}; choose from {', '.join(CORNERS)}")
        problems = _availability(corner, l2, l3)
        if problems:
            raise CornerUnavailable(f"corner {corner} needs " + ", ".join(problems)
                                    + f" (got l2={l2}, l3={l3})")
        self.corner = corner
        self.scheme_id = f"corner:{corner}"
        self.x2_segments, self.x3_segments, key = _segments(corner, l2, l3)
        super().__init__(SourceProfile(3, 2, 2, (0, l2, l3)), key)

    def _encode(self, X, Z):
        parts = _cut(X[2], self.x2_segments) | _cut(X[3], self.x3_segments) | {"Z": Z}
        out = []
        for row in _TABLE[self.corner]:
            layers = []
            for alpha, expr in row:
                if "+" in expr:
                    y, m = expr.split("+")
                    n = parts[y].shape[-1]
                    sym = (parts[y] + parts[m][..., :n]) % 2
                else:
                    sym = parts[expr]
                layers.append(Layer(alpha, expr, sym))
            out.append(layers)
        return out

    def _decode(self, shares, alpha):
        named = {}
        for l, layers in shares.items():
            for lay in layers:
                named.setdefault(lay.name, lay.symbols)
        known = {k: v for k, v in named.items() if "+" not in k}
        if "A2+B2" in named:
            if "A2" not in known and "B2" in known:
                known["A2"] = (named["A2+B2"] - known["B2"]) % 2
            if "B2" not in known and "A2" in known:
                known["B2"] = (named["A2+B2"] - known["A2"]) % 2
        res = {2: self._join(known, self.x2_segments)}
        if alpha >= 3:
            for name, sym in named.items():
                y, _, m = name.partition("+")
                if m and y not in known:
                    known[y] = (sym - known[m][..., :sym.shape[-1]]) % 2
            res[3] = self._join(known, self.x3_segments)
        return res

    @staticmethod
    def _join(known, segs):
        try:
            return np.concatenate([known[name] for name, _ in segs], axis=-1)
        except KeyError as exc:
            raise ShapeError(f"segment {exc.args[0]} is not recoverable from these shares") from exc

    def declared_rates(self):
        return _corner_rates(self.corner, self.profile.length(2), self.profile.length(3))

    def describe(self):
        return super().describe() | {"corner": self.corner}


def mss32_corner_encode(corner: str, X2, X3, key=None):
    X2, X3 = np.asarray(X2, dtype=np.int64), np.asarray(X3, dtype=np.int64)
    scheme = Mss32CornerScheme(corner, X2.shape[-1], X3.shape[-1])
    return scheme.encode({2: X2, 3: X3}, key)


def mss32_corner_decode(bundle, U):
    corner = bundle.scheme.split(":", 1)[1]
    scheme = Mss32CornerScheme(corner, bundle.profile.length(2), bundle.profile.length(3))
    return scheme.decode(bundle, U)
