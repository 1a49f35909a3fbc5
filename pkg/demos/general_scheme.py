"""
Sub-partitioned key chaining
============================

With L >= 2s whole-stream chaining runs out of pad, so each level-alpha
encoder borrows alpha-s small pieces from its neighbours' level alpha-1
streams.  The scheme wants particular divisibility; ask it for the
smallest profile it accepts.
"""
import numpy as np

from smdc import regions
from smdc.errors import PaddingRequired
from smdc.schemes import GeneralMssScheme, SourceProfile
from smdc.verifier import full_audit

try:
    GeneralMssScheme(SourceProfile(4, 2, 5, (0, 4, 3, 2)))
except PaddingRequired as exc:
    print("rejected:", exc)
    print("smallest accepted lengths:", exc.minimal)
    lengths = exc.minimal

scheme = GeneralMssScheme(SourceProfile(4, 2, 5, lengths))
rng = np.random.default_rng(3)
X, Z = scheme.split_input(scheme.random_input(rng))
bundle = scheme.encode(X, Z)

print("symbols per encoder:", bundle.counts())
print("sum:", sum(bundle.counts()), " lower bound:", regions.min_sum_rate(4, 2, lengths))

back = scheme.decode(bundle, [1, 3, 4])
print("three shares give back X2, X3:", all(np.array_equal(back[a], X[a]) for a in (2, 3)))

# too many inputs to enumerate, the rank oracle does it from the matrices
report = full_audit(scheme, "rank")
print(f"{len(report.rows)} audit rows, all pass: {report.passed}")
