"""Backward and forward fractional difference operators on finite prefixes.

Backward forms are lower triangular, so entry ``k`` only needs
``x_0 .. x_k`` and is exact on a prefix. Forward forms need the unseen
tail; they report how much of their output is trustworthy.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _exact
from .fraccoef import OrderLike, as_order, coeff_table, convolve_tables
from .seqcore import FLOAT, Seq, as_seq

__all__ = [
    "ForwardResult",
    "apply_table",
    "backward_diff",
    "backward_antidiff",
    "forward_diff",
    "compose_backward",
]


def _mode_for(x: Seq, alpha) -> str:
    return FLOAT if isinstance(alpha, float) else x.mode


def apply_table(x: Seq, table) -> Seq:
    """``y_k = sum_{i<=k} t_i x_{k-i}`` for every ``k`` in the prefix."""
    n = len(x)
    if len(table) < n:
        raise ValueError("coefficient table shorter than the sequence")
    xs = x.entries
    t = table.entries
    if x.mode != FLOAT and _exact.exact(t[:n]):
        return Seq(_exact.convolve(t, xs, n), x.mode)
    out = []
    for k in range(n):
        acc = x.zero
        for i in range(k + 1):
            ti = t[i]
            if ti:
                acc += ti * xs[k - i]
        out.append(acc)
    return Seq(out, _mode_for(x, table.order))


def backward_diff(x, alpha: OrderLike) -> Seq:
    """``Delta^(alpha) x``; output has the same length as ``x``."""
    x = as_seq(x)
    if not len(x):
        return x
    return apply_table(x, coeff_table(alpha, len(x)))


def backward_antidiff(x, alpha: OrderLike) -> Seq:
    """``Delta^(-alpha) x``, the two-sided inverse of :func:`backward_diff`."""
    x = as_seq(x)
    if not len(x):
        return x
    return apply_table(x, coeff_table(-as_order(alpha), len(x)))


@dataclass(frozen=True)
class ForwardResult:
    """Truncated forward difference.

    ``values[k]`` sums ``d_i x_{k+i}`` over the indices the prefix holds.
    ``tail_bounds[k]`` is ``|d_{N-k}| * max|x|``, the first omitted term's
    scale. Entries ``k >= valid_length`` have a nonzero tail estimate
    above the tolerance and are flagged in ``truncated``.
    """

    values: Seq
    valid_length: int
    tail_bounds: tuple
    truncated: tuple


def forward_diff(x, alpha: OrderLike, inverse: bool = False, tol=0) -> ForwardResult:
    """Forward operator ``Delta^alpha`` (or ``Delta^-alpha`` with ``inverse``)."""
    x = as_seq(x)
    a = as_order(alpha)
    if inverse:
        a = -a
    n = len(x)
    if n == 0:
        return ForwardResult(x, 0, (), ())
    table = coeff_table(a, n + 1)
    xs = x.entries
    d = table.entries
    values = []
    for k in range(n):
        acc = x.zero
        for i in range(n - k):
            if d[i]:
                acc += d[i] * xs[k + i]
        values.append(acc)
    mx = x.max_abs()
    bounds = tuple(abs(d[n - k]) * mx for k in range(n))
    valid = 0
    while valid < n and bounds[valid] <= tol:
        valid += 1
    truncated = tuple(k >= valid for k in range(n))
    return ForwardResult(Seq(values, _mode_for(x, a)), valid, bounds, truncated)


def compose_backward(x, alpha: OrderLike, beta: OrderLike, shortcut: bool = False) -> Seq:
    """``Delta^(alpha)(Delta^(beta) x)``.

    With ``shortcut`` the two tables are convolved first and applied once;
    the result is identical in rational mode.
    """
    x = as_seq(x)
    if shortcut:
        if not len(x):
            return x
        n = len(x)
        return apply_table(x, convolve_tables(coeff_table(alpha, n), coeff_table(beta, n)))
    return backward_diff(backward_diff(x, beta), alpha)
