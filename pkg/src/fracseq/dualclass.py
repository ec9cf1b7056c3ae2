"""Beta-duals and matrix classes of the ``Delta^(alpha)`` domain spaces.

Everything works on finite truncations ``N x M`` of infinite matrices and
reports three-valued verdicts (see :mod:`fracseq.probes`).

Two constructions of the Abel-summation matrices are offered through the
``form`` argument:

``"exact"`` (default)
    Built from the inverse triangle ``V``: for a row ``a`` the matrix
    ``T_{mj} = sum_{k=j}^{m} a_k v_{kj}`` satisfies
    ``sum_{k<=m} a_k x_k = (T y)_m`` identically, where ``y`` is the
    transform of ``x``.
``"single"``
    The single-sequence shortcut ``t_k = a_k sum_{i<=k} d_i(-alpha) /
    u_{k-i}`` with ``T_{mj} = t_j - t_{j+1}`` below the diagonal and
    ``t_m`` on it. It coincides with the exact form only at ``alpha = 0``.
"""

from __future__ import annotations

import functools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _exact
from .fraccoef import OrderLike, as_order, coeff_table
from .gammadomain import (
    TriangleMatrix,
    gamma_delta_matrix,
    inverse_matrix,
    inverse_transform,
    space_test,
    transform,
)
from .probes import (
    ClassVerdict,
    ConditionReport,
    MembershipProbe,
    Verdict,
    bounded_test,
    canonical_space,
    combine,
    growth_witness,
    limit_test,
    null_test,
)
from .seqcore import FLOAT, RATIONAL, Seq, as_seq, as_weights, format_scalar, make_family, parse_scalar

log = logging.getLogger(__name__)

MATRIX_FAMILIES = ("identity", "cesaro-c1", "zero")
FORMS = ("exact", "single")

CONDITIONS = {
    "20": "lim_n a_nk exists for each k",
    "21": "sup_n sum_k |a_nk| < inf",
    "22": "lim_n sum_k a_nk exists",
    "23": "sup_n sum_k |a_nk| < inf",
    "31": "sup_n sum_k |a_nk| < inf",
    "32": "lim_n a_nk = alpha_k exists for each k",
    "33": "lim_n a_nk = 0 for each k",
    "33r": "lim_k a_nk = 0 for each n",
    "34": "lim_n sum_k a_nk exists",
    "35": "lim_n sum_k a_nk = 0",
    "36": "sup_K sum_n |sum_{k in K} a_nk| < inf",
    "37": "lim_n sum_k |a_nk| = 0",
    "38": "sup_{n,k} |a_nk| < inf",
    "39": "lim_n sum_k |a_nk| = sum_k |alpha_k|",
}

#: Conditions on the transformed matrix for maps *out of* the domain spaces.
FROM_DOMAIN = {
    ("c0", "linf"): ("cor1.i", ("31",)),
    ("c", "linf"): ("cor1.i", ("31",)),
    ("c0", "c"): ("cor1.ii", ("31", "32")),
    ("c0", "c0"): ("cor1.iii", ("31", "33")),
    ("c", "c"): ("cor1.iv", ("31", "32", "34")),
    ("c", "c0"): ("cor1.v", ("31", "33", "35")),
    ("c0", "l1"): ("cor1.vi", ("36",)),
    ("c", "l1"): ("cor1.vi", ("36",)),
}

#: Items for maps *into* the domain spaces: item -> (source, target, conditions on B).
INTO_DOMAIN_ITEMS = {
    "cor2.i": ("linf", "c0", ("37",)),
    "cor2.ii": ("c", "c0", ("31", "33", "35")),
    "cor2.iii": ("c0", "c0", ("31", "33")),
    "cor2.iv": ("l1", "c0", ("33", "38")),
    "cor2.v": ("linf", "c", ("32", "39")),
    "cor2.vi": ("c", "c", ("31", "32", "34")),
    "cor2.vii": ("c0", "c", ("31", "32")),
    "cor2.viii": ("l1", "c", ("32", "38")),
}
INTO_DOMAIN = {(s, t): item for item, (s, t, _) in INTO_DOMAIN_ITEMS.items()}

LEMMA_SETS = {"c0": ("20", "21"), "c": ("20", "21", "22")}

__all__ = [
    "InfMatrix",
    "CrosscheckReport",
    "theorem3_t_seq",
    "theorem3_T_matrix",
    "beta_dual_test",
    "cond_predicate",
    "a_tilde_matrix",
    "b_matrix",
    "c_n_matrix",
    "condition28",
    "classify_from_domain",
    "classify_into_domain",
    "sample_members",
    "oracle_crosscheck",
]


@dataclass(frozen=True)
class InfMatrix:
    """``N x M`` truncation of an infinite matrix ``(a_nk)``."""

    entries: tuple
    family: str = "custom"

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        flt = any(isinstance(e, float) for r in rows for e in r)
        object.__setattr__(self, "_mode", FLOAT if flt else RATIONAL)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def zero(self):
        return 0.0 if self._mode == FLOAT else Fraction(0)

    def row(self, n: int) -> Seq:
        return Seq(self.entries[n], self.mode)

    def column(self, k: int) -> list:
        return [r[k] for r in self.entries]

    def matvec(self, x) -> Seq:
        x = as_seq(x)
        if len(x) < self.cols:
            raise ValueError(f"vector has {len(x)} entries, matrix needs {self.cols}")
        xs = x.entries
        mode = FLOAT if FLOAT in (self.mode, x.mode) else RATIONAL
        if mode == RATIONAL:
            return Seq(_exact.matvec(self.entries, xs[: self.cols]), mode)
        out = []
        for r in self.entries:
            acc = x.zero
            for a, v in zip(r, xs):
                if a:
                    acc += a * v
            out.append(acc)
        return Seq(out, mode)

    @classmethod
    def from_family(cls, name: str, n: int, m: Optional[int] = None, mode: str = RATIONAL) -> "InfMatrix":
        m = n if m is None else m
        one, zero = parse_scalar(1, mode), parse_scalar(0, mode)
        if name == "identity":
            rows = [[one if k == i else zero for k in range(m)] for i in range(n)]
        elif name in ("cesaro-c1", "cesaro"):
            name = "cesaro-c1"
            rows = [[one / (i + 1) if k <= i else zero for k in range(m)] for i in range(n)]
        elif name == "zero":
            rows = [[zero] * m for _ in range(n)]
        else:
            raise ValueError(f"unknown matrix family {name!r}; expected one of {', '.join(MATRIX_FAMILIES)}")
        return cls(rows, name)

    @classmethod
    def from_triangle(cls, t: TriangleMatrix, family: str = "custom") -> "InfMatrix":
        return cls(t.dense(), family)

    def to_json(self) -> dict:
        out = {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_scalar(e) for e in r] for r in self.entries],
        }
        if self.family != "custom":
            out["family"] = self.family
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "InfMatrix":
        entries = data["entries"]
        mode = FLOAT if any(isinstance(e, float) for r in entries for e in r) else RATIONAL
        m = cls([[parse_scalar(e, mode) for e in r] for r in entries], data.get("family", "custom"))
        if data.get("rows", m.rows) != m.rows or data.get("cols", m.cols) != m.cols:
            raise ValueError("declared shape does not match entries")
        return m


# -- Abel summation matrices ----------------------------------------------------


def _inverse_weight_sums(alpha, u, n: int) -> list:
    """``s_k = sum_{i<=k} d_i(-alpha) / u_{k-i}``."""
    e = coeff_table(-as_order(alpha), n).entries
    ue = as_weights(u, n).entries
    return [sum((e[i] / ue[k - i] for i in range(1, k + 1)), e[0] / ue[k]) for k in range(n)]


def theorem3_t_seq(a, alpha: OrderLike, u, n: Optional[int] = None) -> Seq:
    """``t_k = a_k sum_{i<=k} d_i(-alpha) / u_{k-i}`` for ``k < n``."""
    a = as_seq(a)
    n = len(a) if n is None else n
    if len(a) < n:
        raise ValueError("sequence shorter than requested length")
    s = _inverse_weight_sums(alpha, u, n)
    out = [a.entries[k] * s[k] for k in range(n)]
    mode = FLOAT if isinstance(as_order(alpha), float) or a.mode == FLOAT else None
    return Seq(out, mode)


def _abel_rows_exact(coeffs: Sequence, v: TriangleMatrix) -> list:
    """Rows of ``T_{mj} = sum_{k=j}^{m} c_k v_{kj}``."""
    flat = [e for r in v.rows for e in r]
    if _exact.exact(coeffs[: v.n]) and _exact.exact(flat):
        nc, dc = _exact.scaled(list(coeffs[: v.n]))
        _, dv = _exact.scaled(flat)
        den = dc * dv
        rows = []
        acc: list = []
        for m in range(v.n):
            cm = nc[m]
            vm = [e.numerator * (dv // e.denominator) for e in v.rows[m]]
            acc = [acc[j] + cm * vm[j] for j in range(m)] + [cm * vm[m]]
            rows.append([Fraction(s, den) for s in acc])
        return rows
    rows = []
    prev: list = []
    for m in range(v.n):
        cm = coeffs[m]
        vm = v.rows[m]
        row = [prev[j] + cm * vm[j] for j in range(m)] + [cm * vm[m]]
        rows.append(row)
        prev = row
    return rows


def _abel_rows_single(t: Sequence) -> list:
    rows = []
    for m in range(len(t)):
        rows.append([t[j] - t[j + 1] for j in range(m)] + [t[m]])
    return rows


def theorem3_T_matrix(a, alpha: OrderLike, u, n: Optional[int] = None, form: str = "exact") -> TriangleMatrix:
    """Matrix ``T`` with ``sum_{k<=m} a_k x_k = (T y)_m`` for ``y = transform(x)``."""
    a = as_seq(a)
    n = len(a) if n is None else n
    if form == "exact":
        v = inverse_matrix(alpha, u, n)
        return TriangleMatrix(_abel_rows_exact(a.entries[:n], v))
    if form == "single":
        return TriangleMatrix(_abel_rows_single(theorem3_t_seq(a, alpha, u, n).entries))
    raise ValueError(f"unknown form {form!r}")


def beta_dual_test(
    a,
    alpha: OrderLike,
    u,
    space: str,
    probe: Optional[MembershipProbe] = None,
    form: str = "exact",
) -> ClassVerdict:
    """Is ``a`` in the beta-dual of the ``c0``- or ``c``-domain space?

    ``a`` lies in the dual iff ``T`` maps ``c0`` (resp. ``c``) into ``c``,
    checked through conditions 20 and 21 (plus 22 for ``c``).
    """
    probe = probe or MembershipProbe()
    space = canonical_space(space)
    if space not in LEMMA_SETS:
        raise ValueError("beta-dual is implemented for the c0 and c domain spaces")
    a = as_seq(a)
    probe.require(len(a), "truncation")
    t = theorem3_T_matrix(a, alpha, u, len(a), form)
    tm = InfMatrix.from_triangle(t)
    reports = tuple(cond_predicate(tm, cid, probe) for cid in LEMMA_SETS[space])
    return ClassVerdict(
        source=f"{space}(G,D^a,u)",
        target="cs",
        verdict=combine(r.verdict for r in reports),
        reports=reports,
        item="beta-dual",
        params={"alpha": as_order(alpha), "form": form, **probe.params()},
    )


# -- condition predicates -----------------------------------------------------


def _fixed_span(length: int, other: int, w: int) -> tuple:
    """Windows to inspect along an axis of ``length`` and how many fixed indices to test.

    One window of head room is kept in front of the inspected windows, so a
    fixed column of a triangle has its diagonal before the tail being judged.
    """
    nwin = min(3, max(1, length // w - 1))
    return nwin, max(0, min(other, length - nwin * w))


def _per_index(lines: list, test, probe, count: int, axis: str):
    """Apply ``test`` to each line; all satisfied -> satisfied, any witness -> violated."""
    verdicts = []
    estimates = []
    witness = None
    for idx, line in enumerate(lines):
        v, ev = test(line, probe, count)
        verdicts.append(v)
        estimates.append(ev.get("limit_estimate", line[-1] if line else 0))
        if v is Verdict.VIOLATED and witness is None:
            witness = {axis: idx, **ev["witness"]}
    evidence = {"checked": len(lines), "estimates": estimates}
    if witness is not None:
        evidence["witness"] = witness
    return combine(verdicts) if lines else Verdict.INCONCLUSIVE, evidence


def _row_witness(ev: dict) -> dict:
    if "witness" in ev:
        w = dict(ev["witness"])
        w["row"] = w.pop("index")
        ev["witness"] = w
    return ev


def _report(cid: str, verdict: Verdict, evidence: dict, probe: MembershipProbe, shape) -> ConditionReport:
    return ConditionReport(
        condition=cid,
        verdict=verdict,
        evidence=evidence,
        params=probe.params(),
        truncation=tuple(shape),
    )


def _subset_trajectory(A: InfMatrix, subset: Sequence[int]) -> list:
    acc = 0
    out = []
    for r in A.entries:
        s = sum((r[k] for k in subset), A.zero)
        acc = acc + abs(s)
        out.append(acc)
    return out


def _best_subset_exhaustive(A: InfMatrix) -> tuple:
    n, m = A.shape
    arr = np.array([[float(e) for e in r] for r in A.entries]).reshape(n, m)
    best_by_row = np.zeros(n)
    best_final, best_id = -1.0, 0
    bits_idx = np.arange(m)
    total = 1 << m
    chunk = 1 << 12
    for start in range(0, total, chunk):
        ids = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = ((ids[:, None] >> bits_idx) & 1).astype(float)
        cum = np.cumsum(np.abs(bits @ arr.T), axis=1)
        best_by_row = np.maximum(best_by_row, cum.max(axis=0))
        j = int(cum[:, -1].argmax())
        if cum[j, -1] > best_final:
            best_final, best_id = float(cum[j, -1]), int(ids[j])
    subset = [k for k in range(m) if best_id >> k & 1]
    return subset, list(best_by_row)


def _best_subset_greedy(A: InfMatrix) -> list:
    """Local search over column subsets by single toggles (float scoring)."""
    arr = np.array([[float(e) for e in r] for r in A.entries]).reshape(A.shape)
    chosen = np.zeros(A.cols, dtype=bool)
    best = 0.0
    while True:
        current = arr[:, chosen].sum(axis=1)
        # objective after toggling each column k
        toggled = current[:, None] + np.where(chosen, -arr, arr)
        scores = np.abs(toggled).sum(axis=0)
        k = int(scores.argmax())
        if scores[k] <= best + 1e-12:
            break
        best = float(scores[k])
        chosen[k] = not chosen[k]
    return [int(k) for k in np.flatnonzero(chosen)]


def _condition36(A: InfMatrix, probe: MembershipProbe) -> ConditionReport:
    n, m = A.shape
    upper = []
    acc = 0
    for r in A.entries:
        acc = acc + sum((abs(e) for e in r), A.zero)
        upper.append(acc)
    exhaustive = m <= probe.subset_cap
    if exhaustive:
        subset, lower_traj = _best_subset_exhaustive(A)
    else:
        subset = _best_subset_greedy(A)
        lower_traj = _subset_trajectory(A, subset)
    exact = _subset_trajectory(A, subset)
    sup = exact[-1] if exact else 0
    evidence = {
        "sup": sup,
        "lower_bound": True,
        "subset": subset,
        "exhaustive": exhaustive,
        "upper_bound": upper[-1] if upper else 0,
    }
    if probe.bound is not None:
        if sup > probe.bound:
            evidence["witness"] = {"subset": subset, "value": sup, "bound": probe.bound}
            verdict = Verdict.VIOLATED
        elif exhaustive or (upper and upper[-1] <= probe.bound):
            verdict = Verdict.SATISFIED
        else:
            verdict = Verdict.INCONCLUSIVE
        return _report("36", verdict, evidence, probe, A.shape)
    witness = growth_witness(lower_traj, probe.window, probe.tol)
    if witness is not None:
        evidence["witness"] = {"subset": subset, "row": witness["index"], "value": exact[witness["index"]]}
        return _report("36", Verdict.VIOLATED, evidence, probe, A.shape)
    # the all-columns absolute sum bounds every subset from above
    for traj in (upper, lower_traj if exhaustive else None):
        if traj is None:
            continue
        v, _ = bounded_test(traj, MembershipProbe(probe.window, probe.tol, "linf", None, probe.subset_cap))
        if v is Verdict.SATISFIED:
            return _report("36", Verdict.SATISFIED, evidence, probe, A.shape)
    return _report("36", Verdict.INCONCLUSIVE, evidence, probe, A.shape)


def cond_predicate(A: InfMatrix, cid: str, probe: Optional[MembershipProbe] = None) -> ConditionReport:
    """Evaluate one summability condition on a truncation.

    Limits are judged on trailing windows; suprema are reported as lower
    bounds and only violated against ``probe.bound`` or a growth witness.
    Condition ``33`` is the column-null condition ``lim_n a_nk = 0``;
    ``33r`` is the row-wise variant ``lim_k a_nk = 0``.
    """
    probe = probe or MembershipProbe()
    cid = str(cid)
    if cid not in CONDITIONS:
        raise ValueError(f"unknown condition {cid!r}")
    n, m = A.shape
    if n < 2 * probe.window or (cid == "33r" and m < 2 * probe.window):
        raise ValueError(f"truncation {n}x{m} too small for window {probe.window}")
    if cid == "36":
        return _condition36(A, probe)

    entries = A.entries
    zero = A.zero
    w = probe.window
    row_abs = [sum((abs(e) for e in r), zero) for r in entries]
    row_sum = [sum(r, zero) for r in entries]

    if cid in ("20", "32", "33", "39"):
        nwin, kfix = _fixed_span(n, m, w)
        cols = [A.column(k) for k in range(kfix)]
        test = null_test if cid == "33" else limit_test
        verdict, evidence = _per_index(cols, test, probe, nwin, "col")
        evidence["limits"] = evidence.pop("estimates")
        if cid == "39":
            if verdict is not Verdict.SATISFIED:
                evidence.pop("witness", None)
                return _report(cid, Verdict.INCONCLUSIVE, {"column_limits": verdict.value, **evidence}, probe, A.shape)
            target = sum((abs(x) for x in evidence["limits"]), zero)
            gap = [r - target for r in row_abs]
            # the gap only covers fixed columns, so a floor is no witness here
            v, ev = null_test(gap, probe, floor=False)
            ev = _row_witness(ev)
            ev["sum_abs_limits"] = target
            ev["row_abs_sum_last"] = row_abs[-1]
            return _report(cid, v, ev, probe, A.shape)
        return _report(cid, verdict, evidence, probe, A.shape)
    if cid == "33r":
        nwin, nfix = _fixed_span(m, n, w)
        lines = [list(entries[i]) for i in range(nfix)]
        verdict, evidence = _per_index(lines, null_test, probe, nwin, "row")
        evidence.pop("estimates")
        return _report(cid, verdict, evidence, probe, A.shape)
    if cid in ("21", "23", "31"):
        v, ev = bounded_test(row_abs, probe)
        ev["argmax_row"] = ev.pop("argmax")
        return _report(cid, v, _row_witness(ev), probe, A.shape)
    if cid in ("22", "34"):
        v, ev = limit_test(row_sum, probe)
        return _report(cid, v, _row_witness(ev), probe, A.shape)
    if cid == "35":
        v, ev = null_test(row_sum, probe)
        return _report(cid, v, _row_witness(ev), probe, A.shape)
    if cid == "37":
        v, ev = null_test(row_abs, probe)
        return _report(cid, v, _row_witness(ev), probe, A.shape)
    if cid == "38":
        row_max = [max((abs(e) for e in r), default=zero) for r in entries]
        v, ev = bounded_test(row_max, probe)
        ev = _row_witness(ev)
        for key in ("argmax", "witness"):
            if key in ev:
                r = ev[key]["row"] if key == "witness" else ev.pop("argmax")
                cell = {"row": r, "col": [abs(e) for e in entries[r]].index(row_max[r])}
                ev[key] = {**ev[key], **cell} if key == "witness" else cell
        return _report(cid, v, ev, probe, A.shape)
    raise AssertionError(cid)


# -- transformed matrices -----------------------------------------------------


def _memo(fn):
    """Cache results for hashable arguments; classifiers reuse the same
    transformed matrix for every class pair."""
    cached = functools.lru_cache(maxsize=32)(fn)

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            hash((args, tuple(sorted(kwargs.items()))))
        except TypeError:
            return fn(*args, **kwargs)
        return cached(*args, **kwargs)

    wrapper.cache_clear = cached.cache_clear
    return wrapper


@_memo
def a_tilde_matrix(A: InfMatrix, alpha: OrderLike, u, form: str = "exact") -> InfMatrix:
    """Matrix acting on the transform: ``A x = A~ y`` row by row.

    Exact form: ``a~_nj = sum_{k=j}^{M-1} a_nk v_kj`` (``A V`` on the
    truncation). The last column would absorb the boundary term ``a_{n,M-1}
    y_{M-1}`` of a full row, so it is dropped, and with it the rows
    ``n >= M-1`` of a triangular ``A`` that need it: ``min(N, M-1) x (M-1)``.
    Single form: ``z_nj - z_{n,j+1}`` with ``z_nj = a_nj sum_{i<=j} d_i(-alpha)
    / u_{j-i}``, ``N x (M-1)`` since the last difference needs ``z_{n,M}``.
    """
    n, m = A.shape
    if m < 2:
        raise ValueError("need at least two columns")
    if form == "exact":
        v = inverse_matrix(alpha, u, m)
        rows = []
        for r in A.entries[: m - 1]:
            out = [A.zero] * m
            for k, a in enumerate(r):
                if a:
                    vk = v.rows[k]
                    for j in range(k + 1):
                        out[j] += a * vk[j]
            rows.append(out[: m - 1])
        return InfMatrix(rows)
    if form == "single":
        s = _inverse_weight_sums(alpha, u, m)
        rows = []
        for r in A.entries:
            z = [r[k] * s[k] for k in range(m)]
            rows.append([z[j] - z[j + 1] for j in range(m - 1)])
        return InfMatrix(rows)
    raise ValueError(f"unknown form {form!r}")


@_memo
def b_matrix(A: InfMatrix, alpha: OrderLike, u) -> InfMatrix:
    """``B = tau A``: the matrix whose image is the transform of ``A``'s image."""
    n, m = A.shape
    tau = gamma_delta_matrix(alpha, u, n)
    rows = []
    for i in range(n):
        out = [A.zero] * m
        for j, t in enumerate(tau.rows[i]):
            if t:
                for k, a in enumerate(A.entries[j]):
                    if a:
                        out[k] += t * a
        rows.append(out)
    return InfMatrix(rows)


def c_n_matrix(A: InfMatrix, alpha: OrderLike, u, n: int, form: str = "exact") -> TriangleMatrix:
    """The ``M x M`` Abel matrix of row ``n`` of ``A``."""
    if not 0 <= n < A.rows:
        raise IndexError(f"row {n} outside 0..{A.rows - 1}")
    return theorem3_T_matrix(A.row(n), alpha, u, A.cols, form)


@_memo
def condition28(
    A: InfMatrix, alpha: OrderLike, u, mu: str, probe: Optional[MembershipProbe] = None, form: str = "exact"
) -> ConditionReport:
    """Every row matrix ``C^(n)`` maps ``mu`` into ``c``.

    Only rows with head room in the column truncation are "fixed": for a
    row-finite ``A`` the matrix ``C^(n)`` settles once ``m >= n``, so rows
    near ``M`` cannot be judged.
    """
    probe = probe or MembershipProbe()
    mu = canonical_space(mu)
    n, m = A.shape
    if m < 2 * probe.window:
        raise ValueError(f"need at least {2 * probe.window} columns")
    if form == "exact":
        v = inverse_matrix(alpha, u, m)
    verdicts = []
    witness = None
    counts = {"satisfied": 0, "violated": 0, "inconclusive": 0}
    _, nfix = _fixed_span(m, n, probe.window)
    for i in range(nfix):
        if form == "exact":
            t = TriangleMatrix(_abel_rows_exact(A.entries[i], v))
        else:
            t = c_n_matrix(A, alpha, u, i, form)
        cm = InfMatrix.from_triangle(t)
        reports = [cond_predicate(cm, cid, probe) for cid in LEMMA_SETS[mu]]
        vi = combine(r.verdict for r in reports)
        verdicts.append(vi)
        counts[vi.value] += 1
        if vi is Verdict.VIOLATED and witness is None:
            bad = next(r for r in reports if r.verdict is Verdict.VIOLATED)
            witness = {"row": i, "condition": bad.condition, "detail": bad.evidence["witness"]}
    evidence = {"rows_checked": nfix, "row_verdicts": counts}
    if witness is not None:
        evidence["witness"] = witness
    return _report("28", combine(verdicts), evidence, probe, A.shape)


def _class_verdict(source, target, item, reports, probe, extra) -> ClassVerdict:
    return ClassVerdict(
        source=source,
        target=target,
        verdict=combine(r.verdict for r in reports),
        reports=tuple(reports),
        item=item,
        params={**extra, **probe.params()},
    )


def classify_from_domain(
    A: InfMatrix,
    alpha: OrderLike,
    u,
    source: str,
    target: str,
    probe: Optional[MembershipProbe] = None,
    form: str = "exact",
) -> ClassVerdict:
    """Does ``A`` map the ``source``-domain space into ``target``?"""
    probe = probe or MembershipProbe()
    source, target = canonical_space(source), canonical_space(target)
    try:
        item, conds = FROM_DOMAIN[(source, target)]
    except KeyError:
        raise ValueError(f"no characterization for ({source}(G,D^a,u) : {target})") from None
    at = a_tilde_matrix(A, alpha, u, form)
    reports = [cond_predicate(at, cid, probe) for cid in conds]
    reports.append(condition28(A, alpha, u, source, probe, form))
    return _class_verdict(
        f"{source}(G,D^a,u)", target, item, reports, probe, {"alpha": as_order(alpha), "form": form}
    )


def classify_into_domain(
    A: InfMatrix,
    alpha: OrderLike,
    u,
    source: Optional[str] = None,
    target: Optional[str] = None,
    probe: Optional[MembershipProbe] = None,
    item: Optional[str] = None,
) -> ClassVerdict:
    """Does ``A`` map ``source`` into the ``target``-domain space?

    Pass ``item`` (e.g. ``"cor2.iv"``) to pick a condition set directly.
    """
    probe = probe or MembershipProbe()
    if item is None:
        if source is None or target is None:
            raise ValueError("give source and target, or an item")
        key = (canonical_space(source), canonical_space(target))
        if key not in INTO_DOMAIN:
            raise ValueError(f"no characterization for ({key[0]} : {key[1]}(G,D^a,u))")
        item = INTO_DOMAIN[key]
    if item not in INTO_DOMAIN_ITEMS:
        raise ValueError(f"unknown item {item!r}")
    src, tgt, conds = INTO_DOMAIN_ITEMS[item]
    b = b_matrix(A, alpha, u)
    reports = [cond_predicate(b, cid, probe) for cid in conds]
    return _class_verdict(src, f"{tgt}(G,D^a,u)", item, reports, probe, {"alpha": as_order(alpha)})


# -- empirical cross-check ----------------------------------------------------


def _mul(x: Seq, y: Seq) -> Seq:
    return Seq([a * b for a, b in zip(x, y)], x.mode)


def _plus(x: Seq, y: Seq) -> Seq:
    return Seq([a + b for a, b in zip(x, y)], x.mode)


def sample_members(space: str, n: int, count: int, mode: str = RATIONAL, seed: int = 0) -> list:
    """Deterministic members of ``c0``, ``c``, ``linf`` or ``l1`` as ``(label, Seq)``."""
    space = canonical_space(space)

    def fam(name, *params):
        return make_family(name, params, n, mode)

    alt = fam("geometric", -1)
    decaying = [
        ("zero", fam("constant", 0)),
        ("unit(0)", fam("unit", 0)),
        ("geometric(1/2)", fam("geometric", "1/2")),
        ("geometric(-2/3)", fam("geometric", "-2/3")),
        ("unit(3)", fam("unit", 3)),
        ("geometric(-1/3)", fam("geometric", "-1/3")),
    ]
    for j in range(count):
        decaying.append(
            (f"random*geometric(3/4)#{j}", _mul(fam("random", -1, 1, seed + j), fam("geometric", "3/4")))
        )
    null = [
        ("harmonic", fam("harmonic")),
        ("alternating harmonic", _mul(fam("harmonic"), alt)),
    ] + decaying
    conv = [
        ("constant(1)", fam("constant", 1)),
        ("constant(-3/2)", fam("constant", "-3/2")),
        ("1+harmonic", _plus(fam("constant", 1), fam("harmonic"))),
        ("2+geometric(-1/2)", _plus(fam("constant", 2), fam("geometric", "-1/2"))),
    ] + null
    bounded = [
        ("alternating", alt),
        ("random(-1,1)", fam("random", -1, 1, seed)),
        ("alternating+1/2", _plus(alt, fam("constant", "1/2"))),
    ] + conv
    pool = {"c0": null, "c": conv, "linf": bounded, "l1": decaying}[space]
    return pool[:count]


@dataclass(frozen=True)
class CrosscheckReport:
    verdict: Verdict
    samples: int
    violations: tuple
    inconclusive: int
    agreeing: int
    details: tuple = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        """False only when a satisfied verdict meets an image with a growth witness."""
        return not (self.verdict is Verdict.SATISFIED and self.violations)

    def to_json(self) -> dict:
        from .probes import _jsonable

        return {
            "verdict": self.verdict.value,
            "samples": self.samples,
            "violations": _jsonable(list(self.violations)),
            "inconclusive": self.inconclusive,
            "agreeing": self.agreeing,
            "consistent": self.consistent,
        }


def oracle_crosscheck(
    A: InfMatrix,
    alpha: OrderLike,
    u,
    direction: str,
    source: str,
    target: str,
    samples: int = 20,
    probe: Optional[MembershipProbe] = None,
    verdict: Optional[ClassVerdict] = None,
    seed: int = 0,
) -> CrosscheckReport:
    """Apply ``A`` to sampled members of the source space and probe the images.

    ``direction="from"``: source is a domain space (``c0``/``c``), samples are
    preimages of plain members. ``direction="into"``: source is a plain space
    and images are tested in the ``target`` domain space.
    """
    probe = probe or MembershipProbe()
    source, target = canonical_space(source), canonical_space(target)
    n, m = A.shape
    w = as_weights(u, max(n, m))
    mode = A.mode
    if verdict is None:
        if direction == "from":
            verdict = classify_from_domain(A, alpha, w, source, target, probe)
        elif direction == "into":
            verdict = classify_into_domain(A, alpha, w, source, target, probe)
        else:
            raise ValueError("direction must be 'from' or 'into'")
    violations = []
    inconclusive = agreeing = 0
    for label, y in sample_members(source, m, samples, mode, seed):
        if direction == "from":
            x = inverse_transform(y, alpha, Seq(w.entries[:m], w.mode))
            image = A.matvec(x)
            v, ev = space_test(image.entries, target, probe)
        else:
            image = A.matvec(y)
            ty = transform(image, alpha, Seq(w.entries[:n], w.mode))
            v, ev = space_test(ty.entries, target, probe)
        if v is Verdict.VIOLATED:
            violations.append({"sample": label, "witness": ev["witness"]})
        elif v is Verdict.INCONCLUSIVE:
            inconclusive += 1
        else:
            agreeing += 1
    report = CrosscheckReport(verdict.verdict, samples, tuple(violations), inconclusive, agreeing)
    if violations and verdict.verdict is not Verdict.SATISFIED:
        log.info("crosscheck: %d violating images under a %s verdict", len(violations), verdict.verdict.value)
    elif violations:
        log.error("crosscheck: satisfied verdict contradicted by %d samples", len(violations))
    return report
