"""Fast exact sums of products for rational vectors.

Each vector is rescaled once to integer numerators over a common
denominator, so inner loops multiply plain ints and a single
:class:`~fractions.Fraction` is built per output entry.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def exact(values: Sequence) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def scaled(values: Sequence) -> tuple:
    """``(numerators, denominator)`` with ``values[i] == numerators[i] / denominator``."""
    den = math.lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (den // v.denominator) for v in values], den


def convolve(a: Sequence, b: Sequence, n: int) -> list:
    """``c_k = sum_{i<=k} a_i b_{k-i}`` for ``k < n``, exactly."""
    na, da = scaled(a[:n])
    nb, db = scaled(b[:n])
    den = da * db
    out = []
    for k in range(n):
        s = 0
        for i in range(k + 1):
            if na[i]:
                s += na[i] * nb[k - i]
        out.append(Fraction(s, den))
    return out


def matvec(rows: Sequence, x: Sequence) -> list:
    """Rows may be shorter than ``x`` (lower-triangular storage)."""
    nx, dx = scaled(x)
    out = []
    for r in rows:
        nr, dr = scaled(r)
        s = 0
        for a, v in zip(nr, nx):
            if a:
                s += a * v
        out.append(Fraction(s, dr * dx))
    return out
