"""Coefficient tables of the fractional difference operators.

The backward operator of order ``alpha`` is

    Delta^(alpha) x_k = sum_i d_i(alpha) x_{k-i},
    d_i(alpha) = (-1)^i Gamma(alpha+1) / (i! Gamma(alpha+1-i)),

and ``d_i(-alpha)`` gives the inverse operator. The gamma ratio is never
evaluated directly: ``d_0 = 1`` and ``d_i = d_{i-1} (i - 1 - alpha) / i``,
which is exact for rational orders and passes straight through the poles
of the closed form (integer orders simply produce trailing zeros).
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import _exact

Scalar = Union[Fraction, float]
#: An exact difference order. Floats are accepted as orders in float mode.
FracOrder = Fraction
OrderLike = Union[Fraction, int, float, str]

__all__ = [
    "FracOrder",
    "CoeffTable",
    "as_order",
    "is_proper_fraction",
    "frac_coeff",
    "coeff_table",
    "convolve_tables",
    "prefix_sums",
]


def as_order(alpha: OrderLike) -> Union[Fraction, float]:
    """Normalise a difference order.

    Strings ("1/2", "-3", "0.25") and integers become exact
    :class:`~fractions.Fraction` values in lowest terms. Floats are kept as
    floats, which selects float mode downstream.
    """
    if isinstance(alpha, bool):
        raise TypeError("boolean is not a difference order")
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, float):
        return alpha
    if isinstance(alpha, numbers.Rational):
        return Fraction(alpha)
    if isinstance(alpha, str):
        try:
            return Fraction(alpha.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed order {alpha!r}") from exc
    raise TypeError(f"unsupported order type {type(alpha).__name__}")


def is_proper_fraction(alpha: OrderLike) -> bool:
    """True when ``0 < alpha < 1``; other orders are allowed but flagged."""
    a = as_order(alpha)
    return 0 < a < 1


@dataclass(frozen=True)
class CoeffTable:
    """Prefix ``d_0 .. d_{N-1}`` of the coefficient sequence of an order."""

    order: Union[Fraction, float]
    entries: tuple

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def exact(self) -> bool:
        return all(isinstance(e, Fraction) for e in self.entries)


def _recurrence(alpha, n: int) -> list:
    one = 1.0 if isinstance(alpha, float) else Fraction(1)
    out = [one]
    for i in range(1, n):
        out.append(out[-1] * (i - 1 - alpha) / i)
    return out


def frac_coeff(alpha: OrderLike, i: int) -> Scalar:
    """Return ``d_i(alpha)``.

    >>> frac_coeff("1/2", 4)
    Fraction(-5, 128)
    """
    if i < 0:
        raise ValueError("coefficient index must be non-negative")
    return _recurrence(as_order(alpha), i + 1)[i]


def coeff_table(alpha: OrderLike, n: int) -> CoeffTable:
    """Return the first ``n`` coefficients of ``Delta^(alpha)``.

    The inverse operator's table is ``coeff_table(-alpha, n)``.
    """
    if n < 1:
        raise ValueError("table length must be at least 1")
    a = as_order(alpha)
    return CoeffTable(order=a, entries=tuple(_recurrence(a, n)))


def convolve_tables(a: CoeffTable, b: CoeffTable) -> CoeffTable:
    """Cauchy product of two tables; the coefficients of the composed operator."""
    if len(a) != len(b):
        raise ValueError(f"table lengths differ: {len(a)} != {len(b)}")
    n = len(a)
    if _exact.exact(a.entries) and _exact.exact(b.entries):
        entries = tuple(_exact.convolve(a.entries, b.entries, n))
    else:
        entries = tuple(sum((a[i] * b[k - i] for i in range(1, k + 1)), a[0] * b[k]) for k in range(n))
    return CoeffTable(order=a.order + b.order, entries=entries)


def prefix_sums(t: CoeffTable) -> CoeffTable:
    """Running sums of a table.

    Summing ``d(alpha)`` gives ``d(alpha - 1)``, so the order drops by one.
    """
    acc = []
    running = 0
    for e in t.entries:
        running = running + e
        acc.append(running)
    return CoeffTable(order=t.order - 1, entries=tuple(acc))


def table_from_entries(order, entries: Sequence) -> CoeffTable:
    return CoeffTable(order=as_order(order), entries=tuple(entries))
