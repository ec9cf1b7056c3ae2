"""The weighted summing triangle of ``Delta^(alpha)`` and its matrix domain.

``y_k = sum_{j<=k} u_j (Delta^(alpha) x)_j`` is the transform whose
preimages of ``c0`` and ``c`` are the two sequence spaces handled here.
Its matrix is the triangle

    tau_{nk} = sum_{i=0}^{n-k} d_i(alpha) u_{i+k}     (k <= n),

and its inverse is explicit:

    x_k = sum_{i<=k} d_i(-alpha) (y_{k-i} - y_{k-i-1}) / u_{k-i}.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _exact
from .fraccoef import OrderLike, as_order, coeff_table
from .fracops import backward_diff
from .probes import (
    ConditionReport,
    MembershipProbe,
    bounded_test,
    limit_test,
    null_test,
)
from .seqcore import FLOAT, RATIONAL, Seq, as_seq, as_weights, format_scalar, make_family, parse_scalar

__all__ = [
    "TriangleMatrix",
    "gamma_delta_matrix",
    "inverse_matrix",
    "transform",
    "inverse_transform",
    "bk_norm",
    "membership",
    "space_test",
    "schauder_basis",
    "limit_basis_element",
]


@dataclass(frozen=True)
class TriangleMatrix:
    """Lower-triangular ``N x N`` matrix stored row by row.

    ``rows[n]`` holds ``m_{n0} .. m_{nn}``; entries above the diagonal are
    zero by construction. A *triangle* in the strict sense also has a
    nonzero diagonal, see :attr:`is_triangle`.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        for n, r in enumerate(rows):
            if len(r) != n + 1:
                raise ValueError(f"row {n} has {len(r)} entries, expected {n + 1}")
        object.__setattr__(self, "rows", rows)
        flt = any(isinstance(e, float) for r in rows for e in r)
        object.__setattr__(self, "_mode", FLOAT if flt else RATIONAL)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def zero(self):
        return 0.0 if self._mode == FLOAT else Fraction(0)

    @property
    def is_triangle(self) -> bool:
        return all(r[-1] != 0 for r in self.rows)

    def __getitem__(self, nk):
        n, k = nk
        if k > n:
            return self.zero
        return self.rows[n][k]

    def dense(self) -> list:
        z = self.zero
        return [list(r) + [z] * (self.n - len(r)) for r in self.rows]

    def matvec(self, x) -> Seq:
        x = as_seq(x)
        if len(x) < self.n:
            raise ValueError("vector shorter than the matrix dimension")
        mode = FLOAT if FLOAT in (x.mode, self.mode) else RATIONAL
        if mode == RATIONAL:
            return Seq(_exact.matvec(self.rows, x.entries[: self.n]), mode)
        out = []
        for r in self.rows:
            acc = x.zero
            for k, m in enumerate(r):
                if m:
                    acc += m * x.entries[k]
            out.append(acc)
        return Seq(out, mode)

    def matmul(self, other: "TriangleMatrix") -> "TriangleMatrix":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        if self.mode == RATIONAL and other.mode == RATIONAL:
            cols = [_exact.scaled([other.rows[j][k] for j in range(k, self.n)]) for k in range(self.n)]
            rows = []
            for n in range(self.n):
                nr, dr = _exact.scaled(self.rows[n])
                row = []
                for k in range(n + 1):
                    nc, dc = cols[k]
                    # self.rows[n][j] * other.rows[j][k] for k <= j <= n
                    s = sum(nr[k + i] * nc[i] for i in range(n - k + 1))
                    row.append(Fraction(s, dr * dc))
                rows.append(row)
            return TriangleMatrix(rows)
        rows = []
        for n in range(self.n):
            row = []
            for k in range(n + 1):
                acc = self.zero
                for j in range(k, n + 1):
                    acc += self.rows[n][j] * other.rows[j][k]
                row.append(acc)
            rows.append(row)
        return TriangleMatrix(rows)

    def inverse(self) -> "TriangleMatrix":
        """Inverse by forward substitution; needs a nonzero diagonal."""
        if not self.is_triangle:
            raise ValueError("matrix has a zero diagonal entry and is not invertible")
        inv = []
        for n in range(self.n):
            row = []
            for k in range(n):
                acc = self.zero
                for j in range(k, n):
                    acc += self.rows[n][j] * inv[j][k]
                row.append(-acc / self.rows[n][n])
            row.append(1 / self.rows[n][n])
            inv.append(row)
        return TriangleMatrix(inv)

    def column(self, k: int) -> Seq:
        return Seq([self[n, k] for n in range(self.n)], self.mode)

    @classmethod
    def identity(cls, n: int, mode: str = RATIONAL) -> "TriangleMatrix":
        one, zero = parse_scalar(1, mode), parse_scalar(0, mode)
        return cls([[zero] * i + [one] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence) -> "TriangleMatrix":
        n = len(columns)
        return cls([[columns[k][m] for k in range(m + 1)] for m in range(n)])

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[format_scalar(e) for e in r] for r in self.rows]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "TriangleMatrix":
        rows = data["rows"]
        mode = FLOAT if any(isinstance(e, float) for r in rows for e in r) else RATIONAL
        m = cls([[parse_scalar(e, mode) for e in r] for r in rows])
        if "n" in data and data["n"] != m.n:
            raise ValueError("declared dimension does not match row count")
        return m


def _mode(*parts) -> str:
    for p in parts:
        if isinstance(p, float) or getattr(p, "mode", None) == FLOAT:
            return FLOAT
    return RATIONAL


def _weights_key(alpha, u, n) -> tuple:
    w = as_weights(u, n)
    return as_order(alpha), w.entries[:n], n


def gamma_delta_matrix(alpha: OrderLike, u, n: int) -> TriangleMatrix:
    """The triangle ``tau`` of the weighted summed difference, ``n x n``."""
    return _gamma_delta_matrix(*_weights_key(alpha, u, n))


@functools.lru_cache(maxsize=64)
def _gamma_delta_matrix(a, ue: tuple, n: int) -> TriangleMatrix:
    d = coeff_table(a, n).entries
    rows = []
    prev = None
    for m in range(n):
        if prev is None:
            row = [d[0] * ue[0]]
        else:
            # tau_{m,k} = tau_{m-1,k} + d_{m-k} u_m
            row = [prev[k] + d[m - k] * ue[m] for k in range(m)] + [d[0] * ue[m]]
        rows.append(row)
        prev = row
    return TriangleMatrix(rows)


def inverse_matrix(alpha: OrderLike, u, n: int) -> TriangleMatrix:
    """Closed-form inverse of :func:`gamma_delta_matrix`.

    ``v_{kj} = d_{k-j}(-alpha) / u_j - d_{k-j-1}(-alpha) / u_{j+1}``.
    """
    return _inverse_matrix(*_weights_key(alpha, u, n))


@functools.lru_cache(maxsize=64)
def _inverse_matrix(a, ue: tuple, n: int) -> TriangleMatrix:
    e = coeff_table(-a, n).entries
    rows = []
    for k in range(n):
        row = []
        for j in range(k + 1):
            v = e[k - j] / ue[j]
            if k - j - 1 >= 0:
                v -= e[k - j - 1] / ue[j + 1]
            row.append(v)
        rows.append(row)
    return TriangleMatrix(rows)


def transform(x, alpha: OrderLike, u) -> Seq:
    """``y_k = sum_{j<=k} u_j (Delta^(alpha) x)_j``; length is preserved."""
    x = as_seq(x)
    n = len(x)
    w = as_weights(u, n)
    dx = backward_diff(x, alpha)
    out = []
    acc = dx.zero
    for j in range(n):
        acc = acc + w.entries[j] * dx.entries[j]
        out.append(acc)
    return Seq(out, _mode(dx, w))


def inverse_transform(y, alpha: OrderLike, u) -> Seq:
    """Preimage of ``y`` under :func:`transform` (``y_{-1} = 0``)."""
    y = as_seq(y)
    n = len(y)
    if not n:
        return y
    a = as_order(alpha)
    w = as_weights(u, n)
    e = coeff_table(-a, n).entries
    ye, ue = y.entries, w.entries
    diffs = [(ye[j] - (ye[j - 1] if j else y.zero)) / ue[j] for j in range(n)]
    mode = _mode(y, w, a)
    if mode == RATIONAL:
        return Seq(_exact.convolve(e, diffs, n), mode)
    out = []
    for k in range(n):
        acc = y.zero
        for i in range(k + 1):
            if e[i]:
                acc += e[i] * diffs[k - i]
        out.append(acc)
    return Seq(out, _mode(y, w, a))


def bk_norm(x, alpha: OrderLike, u) -> tuple:
    """``sup_k |y_k|`` over the prefix.

    Returns ``(value, lower_bound)``; the flag is always true because the
    true norm is a supremum over the infinite tail.
    """
    y = transform(x, alpha, u)
    return y.max_abs(), True


def space_test(values, space: str, probe: MembershipProbe) -> tuple:
    """Probe a plain sequence for membership in ``c0``, ``c``, ``linf`` or ``l1``."""
    vals = list(values.entries if isinstance(values, Seq) else values)
    if space == "c0":
        return null_test(vals, probe)
    if space == "c":
        return limit_test(vals, probe)
    if space == "linf":
        return bounded_test(vals, probe)
    if space == "l1":
        partial = []
        acc = 0
        for v in vals:
            acc = acc + abs(v)
            partial.append(acc)
        return bounded_test(partial, probe)
    raise ValueError(f"unknown space {space!r}")


def membership(x, alpha: OrderLike, u, probe: MembershipProbe) -> ConditionReport:
    """Heuristic membership of ``x`` in the ``c0``- or ``c``-domain space."""
    x = as_seq(x)
    probe.require(len(x))
    if probe.space not in ("c0", "c"):
        raise ValueError("membership targets the c0 or c domain space")
    y = transform(x, alpha, u)
    verdict, evidence = space_test(y.entries, probe.space, probe)
    evidence["transform_tail"] = list(y.entries[-3:])
    return ConditionReport(
        condition=f"member:{probe.space}",
        verdict=verdict,
        evidence=evidence,
        params=probe.params(),
        truncation=(len(x),),
    )


def schauder_basis(j: int, alpha: OrderLike, u, n: int) -> Seq:
    """Basis vector ``b^(j)``: the preimage of the unit sequence ``e^(j)``."""
    if not 0 <= j < n:
        raise IndexError(f"basis index {j} outside 0..{n - 1}")
    w = as_weights(u, n)
    mode = _mode(w, as_order(alpha))
    return inverse_transform(make_family("unit", [j], n, mode), alpha, w)


def limit_basis_element(alpha: OrderLike, u, n: int) -> Seq:
    """Extra basis element for the ``c`` space: the preimage of ``(1, 1, ...)``."""
    w = as_weights(u, n)
    mode = _mode(w, as_order(alpha))
    return inverse_transform(make_family("constant", [1], n, mode), alpha, w)
