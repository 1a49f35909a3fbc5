"""Rate regions as rational inequality systems.

A region is a list of rows ``a . R >= b`` with every ``a`` componentwise
nonnegative, always including the nonnegativity rows ``R_i >= 0``.  All
arithmetic is done in :class:`fractions.Fraction`; floats never decide
membership.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateProfile, DomainError, ShapeError, Unsupported


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def pos_part(x) -> Fraction:
    x = _q(x)
    return x if x > 0 else Fraction(0)


def odot(x: int, y: int) -> int:
    """Cyclic addition on {1, 2, 3}."""
    if x not in (1, 2, 3) or y not in (1, 2, 3):
        raise DomainError(f"odot is defined on {{1,2,3}}, got ({x}, {y})")
    return x + y if x + y <= 3 else x + y - 3


def m_value(H2, H3) -> Fraction:
    H2, H3 = _q(H2), _q(H3)
    return max(H2, H2 / 2 + H3)


@dataclass(frozen=True)
class RegionSpec:
    L: int
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    label: str = ""

    def __len__(self):
        return len(self.inequalities)

    def rows(self):
        return iter(self.inequalities)


def _make(L: int, rows: Iterable[tuple[Sequence, object]], label: str) -> RegionSpec:
    out = []
    seen = set()
    for a, b in rows:
        a = tuple(_q(v) for v in a)
        if len(a) != L:
            raise ShapeError(f"row of length {len(a)} in a {L}-dimensional region")
        if any(v < 0 for v in a):
            raise DomainError("coefficients must be nonnegative")
        key = (a, _q(b))
        if key not in seen:
            seen.add(key)
            out.append(key)
    for i in range(L):
        key = (tuple(Fraction(int(j == i)) for j in range(L)), Fraction(0))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return RegionSpec(L, tuple(out), label)


def _indicator(L: int, members: Iterable[int], weight=None) -> tuple[int, ...]:
    coeffs = [0] * L
    for i in members:
        coeffs[i] += 1 if weight is None else weight
    return tuple(coeffs)


def region_rss(L: int, k: int, H) -> RegionSpec:
    """Every k-subset of rates sums to at least ``H``."""
    if not 1 <= k <= L:
        raise DomainError(f"need 1 <= k <= L, got k={k}, L={L}")
    rows = [(_indicator(L, B), H) for B in itertools.combinations(range(L), k)]
    return _make(L, rows, f"R({L},{k},{H})")


def region_sup1(L: int, H: Sequence) -> RegionSpec:
    """Superposition region for s = 1: each rate covers the total entropy."""
    total = sum((_q(h) for h in H), Fraction(0))
    return _make(L, [(_indicator(L, [i]), total) for i in range(L)], "R_sup^1")


def region_sup_mss(L: int, s: int, H: Sequence) -> RegionSpec:
    """Superposition of independent (alpha-s, alpha, L) ramp layers."""
    total = sum((_q(h) for h in H), Fraction(0))
    reg = region_rss(L, s, total)
    return RegionSpec(reg.L, reg.inequalities, "R_sup^2")


def _mss32_rows(H2: Fraction, H3: Fraction, H1: Fraction = Fraction(0)):
    rows = []
    for i, j in itertools.permutations(range(3), 2):
        a = [0, 0, 0]
        a[i], a[j] = 2, 1
        rows.append((tuple(a), 3 * H1 + H2 + H3))
    for i, j in itertools.combinations(range(3), 2):
        rows.append((_indicator(3, [i, j]), 2 * H1 + H2 / 2 + H3))
    for i, j in itertools.combinations(range(3), 2):
        rows.append((_indicator(3, [i, j]), 2 * H1 + H2))
    rows.append(((1, 1, 1), 3 * H1 + Fraction(3, 2) * H2 + H3))
    for i in (1, 2, 3):
        a = [0, 0, 0]
        a[i - 1] += 2
        a[odot(i, 1) - 1] += 1
        a[odot(i, 2) - 1] += 1
        rows.append((tuple(a), 4 * H1 + 2 * H2 + H3))
    return rows


def region_mss32(H2, H3) -> RegionSpec:
    H2, H3 = _q(H2), _q(H3)
    if H2 < 0 or H3 < 0:
        raise DomainError("entropies must be nonnegative")
    return _make(3, _mss32_rows(H2, H3), f"R_1*({H2},{H3})")


def region_smdc32(H1, H2, H3) -> RegionSpec:
    H1, H2, H3 = _q(H1), _q(H2), _q(H3)
    if min(H1, H2, H3) < 0:
        raise DomainError("entropies must be nonnegative")
    rows = [(_indicator(3, [i]), H1) for i in range(3)]
    rows += _mss32_rows(H2, H3, H1)
    return _make(3, rows, f"R_2*({H1},{H2},{H3})")


def mss32_case(H2, H3) -> str:
    H2, H3 = _q(H2), _q(H3)
    if H2 == 0 and H3 == 0:
        raise DegenerateProfile("H2 and H3 are both zero")
    if H2 < Fraction(2, 3) * H3:
        return "i"
    if H2 < H3:
        return "ii"
    if H2 < 2 * H3:
        return "iii"
    return "iv"


def _check_profile(L: int, s: int, H: Sequence, variant: str) -> list[Fraction]:
    if not 1 <= s <= L:
        raise DomainError(f"need 1 <= s <= L, got s={s}, L={L}")
    if len(H) != L:
        raise ShapeError(f"expected {L} entropies, got {len(H)}")
    H = [_q(h) for h in H]
    if any(h < 0 for h in H):
        raise DomainError("entropies must be nonnegative")
    if variant not in ("mss", "sliding"):
        raise DomainError(f"unknown variant {variant!r}")
    if variant == "mss" and any(H[: s - 1]):
        raise DegenerateProfile("multilevel secret sharing needs H_1..H_{s-1} = 0")
    return H


def min_sum_rate(L: int, s: int, H: Sequence, variant: str = "mss") -> Fraction:
    """sum_alpha (L/alpha) H_alpha; the lower levels vanish in mss mode."""
    H = _check_profile(L, s, H, variant)
    return sum((Fraction(L, a) * H[a - 1] for a in range(1, L + 1)), Fraction(0))


def sup_sum_rate(L: int, s: int, H: Sequence, variant: str = "mss") -> Fraction:
    H = _check_profile(L, s, H, variant)
    low = sum((Fraction(L, a) * H[a - 1] for a in range(1, s)), Fraction(0))
    high = sum((Fraction(L, s) * H[a - 1] for a in range(s, L + 1)), Fraction(0))
    return low + high


def member(reg: RegionSpec, r: Sequence) -> bool:
    if len(r) != reg.L:
        raise ShapeError(f"rate tuple of length {len(r)} for a {reg.L}-dim region")
    r = [_q(v) for v in r]
    return all(sum(a_i * r_i for a_i, r_i in zip(a, r)) >= b for a, b in reg.inequalities)


def violated_rows(reg: RegionSpec, r: Sequence):
    r = [_q(v) for v in r]
    return [(a, b) for a, b in reg.inequalities if sum(x * y for x, y in zip(a, r)) < b]


def _solve3(A: list[list[Fraction]], b: list[Fraction]):
    """Gauss-Jordan on a 3x3 rational system; None when singular."""
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for c in range(3):
        p = next((r for r in range(c, 3) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(3):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[r][3] for r in range(3))


def corners3(reg: RegionSpec) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Extreme points of a 3-dimensional region by triple-row intersection."""
    if reg.L != 3:
        raise Unsupported("corner enumeration is implemented for L = 3 only")
    found = set()
    rows = reg.inequalities
    for (a1, b1), (a2, b2), (a3, b3) in itertools.combinations(rows, 3):
        x = _solve3([list(a1), list(a2), list(a3)], [b1, b2, b3])
        if x is not None and member(reg, x):
            found.add(x)
    return sorted(found)


def containment_witnesses(outer: RegionSpec, inner: RegionSpec) -> list:
    """Corners of ``inner`` lying outside ``outer``."""
    if outer.L != 3 or inner.L != 3:
        raise Unsupported("containment test is implemented for L = 3 only")
    return [c for c in corners3(inner) if not member(outer, c)]


def contains3(outer: RegionSpec, inner: RegionSpec) -> bool:
    # both recession cones are the nonnegative orthant, so corners suffice
    return not containment_witnesses(outer, inner)


def _orbit(point):
    return {tuple(p) for p in itertools.permutations(point)}


def mss32_labeled_corners(H2, H3) -> dict[str, tuple[Fraction, Fraction, Fraction]]:
    """The printed corner points of R_1* for the case (H2, H3) falls into."""
    H2, H3 = _q(H2), _q(H3)
    case = mss32_case(H2, H3)
    Q1 = (Fraction(0), H2 + H3, H2 + H3)
    Q2 = (H2 + H3, H2 + H3, Fraction(0))
    if case == "i":
        o = H2 / 4 + H3 / 2
        return {"O": (o, o, o), "Q1": Q1, "Q2": Q2,
                "P1": (H2 / 2, H3, H3), "P2": (H3, H3, H2 / 2)}
    if case == "ii":
        return {"Q1": Q1, "Q2": Q2,
                "P1": (H2 / 2, H3, H3), "P2": (H3, H3, H2 / 2),
                "S1": (H3 - H2 / 2, H2, H2), "S2": (H2, H2, H3 - H2 / 2)}
    if case == "iii":
        return {"Q1": Q1, "Q2": Q2,
                "T1": (H3 / 2, H2, H2), "T2": (H2, H2, H3 / 2),
                "S4": (H2 / 2, H2, H3), "S5": (H3, H2, H2 / 2)}
    return {"Q1": Q1, "Q2": Q2,
            "T1": (H3 / 2, H2, H2), "T2": (H2, H2, H3 / 2),
            "T4": (H3, H2, H2 - H3), "T5": (H2 - H3, H2, H3),
            "S10": (H2 / 2, H2 / 2 + H3, H2 / 2)}


def mss32_expected_corners(H2, H3) -> set:
    """Labeled corners closed under coordinate permutation."""
    out = set()
    for p in mss32_labeled_corners(H2, H3).values():
        out |= _orbit(p)
    return out


def to_dict(reg: RegionSpec, with_corners: bool = False) -> dict:
    def frac(v):
        return [v.numerator, v.denominator]

    doc = {
        "label": reg.label,
        "L": reg.L,
        "inequalities": [{"a": [frac(v) for v in a], "b": frac(b)} for a, b in reg.inequalities],
    }
    if with_corners:
        doc["corners"] = [[frac(v) for v in c] for c in corners3(reg)]
    return doc


def from_dict(doc: dict) -> RegionSpec:
    rows = tuple(
        (tuple(Fraction(n, d) for n, d in row["a"]), Fraction(*row["b"]))
        for row in doc["inequalities"]
    )
    return RegionSpec(int(doc["L"]), rows, doc.get("label", ""))
