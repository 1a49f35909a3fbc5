"""Exact matrix form of a linear encoder.

The input vector is every source symbol in level order followed by the
key.  Feeding the N unit vectors through ``encode_flat`` in one batch
reads off the columns of each encoder matrix directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotLinear


@dataclass(frozen=True)
class LinearEncoderMatrix:
    q: int
    n_inputs: int
    encoders: tuple[np.ndarray, ...]     # M_l, shape (|W_l|, N)
    selectors: dict                      # alpha -> S_alpha, shape (l_alpha, N)

    @property
    def L(self) -> int:
        return len(self.encoders)

    def stacked(self, subset) -> np.ndarray:
        rows = [self.encoders[l - 1] for l in sorted(subset)]
        if not rows:
            return np.zeros((0, self.n_inputs), dtype=np.int64)
        return np.vstack(rows)

    def selector(self, levels) -> np.ndarray:
        rows = [self.selectors[a] for a in levels if a in self.selectors]
        if not rows:
            return np.zeros((0, self.n_inputs), dtype=np.int64)
        return np.vstack(rows)

    def apply(self, z) -> list[np.ndarray]:
        z = np.asarray(z, dtype=np.int64)
        return [(z @ M.T) % self.q for M in self.encoders]


def plan_matrix(instance, checks: int = 100, seed: int = 0) -> LinearEncoderMatrix:
    """Extract M_l and S_alpha from ``instance`` and confirm them on random inputs."""
    q, N = instance.q, instance.input_length
    eye = np.eye(N, dtype=np.int64)
    outs = instance.encode_flat(eye)
    mats = tuple(np.ascontiguousarray(np.asarray(o, dtype=np.int64).reshape(N, -1).T) % q
                 for o in outs)
    selectors = {}
    for a, sl in instance.source_slices().items():
        if sl.stop > sl.start:
            selectors[a] = eye[sl]
    plan = LinearEncoderMatrix(q, N, mats, selectors)
    if checks and N:
        rng = np.random.default_rng(seed)
        z = rng.integers(0, q, size=(checks, N), dtype=np.int64)
        for l, (got, want) in enumerate(zip(instance.encode_flat(z), plan.apply(z)), start=1):
            if not np.array_equal(np.asarray(got) % q, want):
                raise NotLinear(f"encoder {l} does not act as a fixed matrix over GF({q})")
    return plan
