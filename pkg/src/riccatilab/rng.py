"""Seedable random stream used by the instance generator.

The generator is splitmix64: a 64-bit counter advanced by the golden
ratio increment, with a two-round xor-multiply finalizer.  It is tiny,
has no numpy state behind it, and is trivially reproduced bit for bit
in any language, which is what makes sweep outputs byte-identical
across runs.  The exact recipe (constants, uniform and gaussian
derivations, unitary construction) is documented in the README.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit stream with uniform/gaussian/unitary helpers."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        # 53 high bits give a double in [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_open(self) -> float:
        # in (0, 1], safe as a log argument
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def normal_pair(self) -> tuple[float, float]:
        """One Box-Muller step: two independent standard normals."""
        u1 = self.uniform_open()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def normal(self) -> float:
        return self.normal_pair()[0]

    def complex_normal_matrix(self, rows: int, cols: int) -> np.ndarray:
        """Matrix with independent standard-normal real and imaginary parts."""
        out = np.empty((rows, cols), dtype=complex)
        for i in range(rows):
            for j in range(cols):
                re, im = self.normal_pair()
                out[i, j] = complex(re, im)
        return out

    def unitary(self, n: int) -> np.ndarray:
        """Haar-ish random unitary: QR of a complex gaussian matrix.

        The R diagonal is rephased to be real positive, which removes the
        QR sign ambiguity and pins the result for a given stream state.
        """
        g = self.complex_normal_matrix(n, n)
        q, r = np.linalg.qr(g)
        diag = np.diagonal(r).copy()
        diag[diag == 0] = 1.0
        phases = diag / np.abs(diag)
        return q * phases.conj()
