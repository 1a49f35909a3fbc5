"""
How much superposition loses
============================

Coding each level separately is optimal when s = 1 or s = L and strictly
worse in between.  The exact region for three encoders and two levels
shows where the extra rate goes.
"""
from fractions import Fraction

from smdc import regions

for L, s in [(3, 2), (4, 2), (4, 3), (5, 3), (5, 4)]:
    H = [0] * (s - 1) + [1] * (L - s + 1)
    lo = regions.min_sum_rate(L, s, H)
    hi = regions.sup_sum_rate(L, s, H)
    print(f"L={L} s={s}: optimum {lo}, separate coding {hi}, gap {hi - lo}")

exact = regions.region_mss32(1, 1)
separate = regions.region_sup_mss(3, 2, (0, 1, 1))
print("\nexact region corners:")
for c in regions.corners3(exact):
    print("  ", tuple(str(v) for v in c))
print("reachable only with joint coding:",
      [tuple(map(str, w)) for w in regions.containment_witnesses(separate, exact)])

# the four shapes of the region as H3/H2 grows
for H2, H3 in [(4, 1), (1, 1), (1, Fraction(6, 5)), (1, 3)]:
    print(f"(H2, H3) = ({H2}, {H3}): case {regions.mss32_case(H2, H3)},"
          f" {len(regions.corners3(regions.region_mss32(H2, H3)))} corners")
