"""
The eight corner schemes over GF(2)
===================================

Each corner of the three-encoder, two-level region has its own bitwise
construction.  Encode random bits with each, measure the share sizes and
compare with the corner computed from the inequalities.
"""
import numpy as np

from smdc import regions
from smdc.errors import CornerUnavailable
from smdc.schemes import CORNERS, Mss32CornerScheme
from smdc.verifier import full_audit, measured_rates

profiles = {"Q1": (2, 2), "P1": (4, 5), "O": (4, 8), "S1": (4, 5),
            "T1": (2, 2), "S4": (2, 2), "T4": (4, 1), "S10": (4, 1)}

rng = np.random.default_rng(0)
for corner in CORNERS:
    l2, l3 = profiles[corner]
    scheme = Mss32CornerScheme(corner, l2, l3)
    X, Z = scheme.split_input(scheme.random_input(rng))
    rates = measured_rates(scheme.encode(X, Z))
    label = regions.mss32_labeled_corners(l2, l3)[corner]
    ok = full_audit(scheme, "exhaustive").passed
    print(f"{corner:>3} (l2={l2}, l3={l3})  bits per share {tuple(map(str, rates))}"
          f"  corner {tuple(map(str, label))}  audit {'ok' if ok else 'FAIL'}")

# a corner only exists in its own part of the (H2, H3) plane
try:
    Mss32CornerScheme("T4", 2, 2)
except CornerUnavailable as exc:
    print("T4 at (2, 2):", exc)
