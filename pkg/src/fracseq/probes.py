"""Three-valued tail heuristics for conditions that quantify over infinity.

A finite prefix can never prove that a limit exists or that a supremum is
finite. The tests here look at trailing windows of width ``W``:

* ``satisfied``: the tail is consistent with the condition at tolerance
  ``tol`` (small final window, no worsening trend);
* ``violated``: a witness exists, either an explicit caller bound is
  exceeded or the window maxima grow at least linearly across every
  window of the prefix;
* ``inconclusive``: anything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .seqcore import format_scalar

SPACES = ("c0", "c", "linf", "l1")
SPACE_ALIASES = {
    "c0": "c0",
    "c_0": "c0",
    "c": "c",
    "linf": "linf",
    "l_inf": "linf",
    "ell_inf": "linf",
    "l_infty": "linf",
    "l1": "l1",
    "l_1": "l1",
    "ell1": "l1",
    "l": "l1",
}
MAX_SUBSET_CAP = 20

__all__ = [
    "Verdict",
    "MembershipProbe",
    "ConditionReport",
    "ClassVerdict",
    "canonical_space",
    "combine",
    "null_test",
    "limit_test",
    "bounded_test",
    "growth_witness",
]


class Verdict(str, Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {"satisfied": 0, "violated": 1, "inconclusive": 2}[self.value]

    def __str__(self) -> str:
        return self.value


def canonical_space(name: str) -> str:
    try:
        return SPACE_ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown sequence space {name!r}") from None


@dataclass(frozen=True)
class MembershipProbe:
    """Window/tolerance parameters shared by every tail test.

    ``bound`` is an optional explicit bound for supremum conditions and
    ``subset_cap`` limits exhaustive column-subset enumeration.
    """

    window: int = 8
    tol: object = Fraction(1, 10**6)
    space: str = "c0"
    bound: object = None
    subset_cap: int = 16

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("probe window must be at least 2")
        if not self.tol > 0:
            raise ValueError("probe tolerance must be positive")
        if not 0 <= self.subset_cap <= MAX_SUBSET_CAP:
            raise ValueError(f"subset cap must lie in [0, {MAX_SUBSET_CAP}]")
        object.__setattr__(self, "space", canonical_space(self.space))

    def params(self) -> dict:
        out = {"window": self.window, "tol": _jsonable(self.tol), "subset_cap": self.subset_cap}
        if self.bound is not None:
            out["bound"] = _jsonable(self.bound)
        return out

    def require(self, n: int, what: str = "prefix"):
        if n < 2 * self.window:
            raise ValueError(f"{what} length {n} is shorter than twice the window ({self.window})")


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, float)):
        return format_scalar(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    verdict: Verdict
    evidence: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    truncation: tuple = ()

    def __post_init__(self):
        if self.verdict is Verdict.VIOLATED and "witness" not in self.evidence:
            raise ValueError(f"violated verdict for {self.condition} has no witness")

    @property
    def satisfied(self) -> bool:
        return self.verdict is Verdict.SATISFIED

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict.value,
            "evidence": _jsonable(self.evidence),
            "params": _jsonable(self.params),
            "truncation": list(self.truncation),
        }


def combine(verdicts: Sequence[Verdict]) -> Verdict:
    """Conjunction: violated wins, then inconclusive, else satisfied."""
    verdicts = list(verdicts)
    if any(v is Verdict.VIOLATED for v in verdicts):
        return Verdict.VIOLATED
    if any(v is Verdict.INCONCLUSIVE for v in verdicts):
        return Verdict.INCONCLUSIVE
    return Verdict.SATISFIED


@dataclass(frozen=True)
class ClassVerdict:
    source: str
    target: str
    verdict: Verdict
    reports: tuple
    item: str = ""
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "item": self.item,
            "verdict": self.verdict.value,
            "conditions": [r.to_json() for r in self.reports],
            "params": _jsonable(self.params),
        }

    def report(self, condition: str) -> ConditionReport:
        for r in self.reports:
            if r.condition == condition:
                return r
        raise KeyError(condition)


# -- window machinery ---------------------------------------------------------


def _windows(values: Sequence, w: int, count: Optional[int] = None) -> list:
    """Full windows of width ``w`` ending at the last value, oldest first."""
    nfull = len(values) // w
    if count is not None:
        nfull = min(nfull, count)
    n = len(values)
    return [list(values[n - (j + 1) * w : n - j * w]) for j in reversed(range(nfull))]


def _non_increasing(seq: Sequence) -> bool:
    return all(b <= a for a, b in zip(seq, seq[1:]))


def growth_witness(values: Sequence, w: int, tol=0) -> Optional[dict]:
    """Witness of unbounded growth of ``|values|``, or ``None``.

    Needs at least three full windows; the window maxima must rise strictly
    and the rises must not shrink (slack ``tol``), i.e. roughly linear or
    faster growth across the whole prefix. Bounded monotone sequences have
    shrinking rises and never produce a witness.
    """
    mags = [abs(v) for v in values]
    wins = _windows(mags, w)
    if len(wins) < 3:
        return None
    maxima = [max(win) for win in wins]
    rises = [b - a for a, b in zip(maxima, maxima[1:])]
    if not all(r > 0 for r in rises):
        return None
    if not all(b >= a - tol for a, b in zip(rises, rises[1:])):
        return None
    start = len(values) - len(wins) * w
    last = wins[-1]
    idx = len(values) - w + last.index(maxima[-1])
    return {
        "index": idx,
        "value": values[idx],
        "window_maxima": maxima,
        "first_window_start": start,
    }


def _floor_witness(values: Sequence, w: int, tol, oscillation: bool) -> Optional[dict]:
    """Witness that ``values`` stays away from zero (or keeps oscillating).

    Every full window of the prefix (at least two) is inspected: the
    per-window minimum of ``|v|`` (or the oscillation ``max - min``) must be
    non-decreasing and the last one above ``tol``.
    """
    vals = list(values)
    src = vals if oscillation else [abs(v) for v in vals]
    wins = _windows(src, w)
    if len(wins) < 2:
        return None
    if oscillation:
        floors = [max(win) - min(win) for win in wins]
    else:
        floors = [min(win) for win in wins]
    if not floors[-1] > tol:
        return None
    if not all(b >= a for a, b in zip(floors, floors[1:])):
        return None
    last = wins[-1]
    pos = last.index(max(last) if oscillation else floors[-1])
    idx = len(vals) - w + pos
    key = "window_oscillation" if oscillation else "window_minima"
    return {"index": idx, "value": vals[idx], key: floors}


def tail_extrapolation(values: Sequence, w: int, count: int = 3, min_exponent: float = 1.2) -> Optional[dict]:
    """Limit estimate for a monotone tail whose steps decay like ``k^-p``.

    The last ``count`` windows must be strictly monotone. The decay
    exponent ``p`` is estimated between consecutive window ends and must
    exceed ``min_exponent`` at every scale; the remaining change is then
    bounded by ``|step| k / (p - 1)``. Returns ``None`` when any check fails.
    """
    vals = list(values)
    count = min(count, len(vals) // w)
    if count < 2:
        return None
    start = len(vals) - count * w
    tail = vals[start:]
    steps = [b - a for a, b in zip(tail, tail[1:])]
    if not steps or not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        return None
    ends = [j * w - 2 for j in range(1, count + 1)]
    mags = [abs(float(steps[e])) for e in ends]
    pos = [start + e + 2 for e in ends]
    exponents = []
    for (m0, k0), (m1, k1) in zip(zip(mags, pos), zip(mags[1:], pos[1:])):
        if m1 <= 0 or m0 <= 0:
            return None
        exponents.append(math.log(m0 / m1) / math.log(k1 / k0))
    if not exponents or min(exponents) <= min_exponent:
        return None
    p = exponents[-1]
    remainder = mags[-1] * pos[-1] / (p - 1)
    sign = 1 if steps[-1] > 0 else -1
    out = {
        "decay_exponents": exponents,
        "remainder": remainder,
        "limit_estimate": float(vals[-1]) + sign * remainder,
    }
    if all(isinstance(v, (int, Fraction)) for v in vals):
        # exact inputs get rational estimates so exact-mode output stays float free
        out = {k: _as_rational(v) for k, v in out.items()}
    return out


def _as_rational(value):
    if isinstance(value, list):
        return [_as_rational(v) for v in value]
    return Fraction(value).limit_denominator(10**9)


def null_test(values: Sequence, probe: MembershipProbe, count: int = 3, floor: bool = True) -> tuple:
    """Does ``values`` tend to zero? Judged on the last ``count`` windows.

    ``floor=False`` drops the bounded-away-from-zero witness, leaving only
    growth as evidence of violation.
    """
    mags = [abs(v) for v in values]
    maxima = [max(win) for win in _windows(mags, probe.window, count)]
    evidence = {"window_maxima": maxima, "last": values[-1] if values else 0}
    if maxima and maxima[-1] < probe.tol and _non_increasing(maxima):
        return Verdict.SATISFIED, evidence
    witness = growth_witness(values, probe.window, probe.tol)
    if witness is None and floor:
        witness = _floor_witness(values, probe.window, probe.tol, oscillation=False)
    if witness is not None:
        evidence["witness"] = witness
        return Verdict.VIOLATED, evidence
    return Verdict.INCONCLUSIVE, evidence


def limit_test(values: Sequence, probe: MembershipProbe, count: int = 3) -> tuple:
    """Does ``values`` converge?

    Satisfied by a small, non-growing oscillation in the last windows or by
    a monotone tail with summable steps (:func:`tail_extrapolation`).
    """
    wins = _windows(list(values), probe.window, count)
    osc = [max(win) - min(win) for win in wins]
    evidence = {"window_oscillation": osc, "limit_estimate": values[-1] if values else 0}
    if osc and osc[-1] < probe.tol and _non_increasing(osc):
        evidence["route"] = "oscillation"
        return Verdict.SATISFIED, evidence
    extra = tail_extrapolation(values, probe.window, count)
    if extra is not None:
        evidence.update(extra)
        evidence["route"] = "extrapolation"
        return Verdict.SATISFIED, evidence
    witness = growth_witness(values, probe.window, probe.tol)
    if witness is None:
        witness = _floor_witness(values, probe.window, probe.tol, oscillation=True)
    if witness is not None:
        evidence["witness"] = witness
        return Verdict.VIOLATED, evidence
    return Verdict.INCONCLUSIVE, evidence


def bounded_test(values: Sequence, probe: MembershipProbe) -> tuple:
    """Is ``sup |values|`` finite? The reported ``sup`` is a lower bound.

    Without an explicit bound, satisfied means no new highs in the final
    window, or a monotone tail whose steps decay fast enough to be summed.
    """
    mags = [abs(v) for v in values]
    if not mags:
        return Verdict.SATISFIED, {"sup": 0, "lower_bound": True}
    sup = max(mags)
    arg = mags.index(sup)
    evidence = {"sup": sup, "argmax": arg, "lower_bound": True}
    if probe.bound is not None:
        if sup > probe.bound:
            evidence["witness"] = {"index": arg, "value": values[arg], "bound": probe.bound}
            return Verdict.VIOLATED, evidence
        return Verdict.SATISFIED, evidence
    witness = growth_witness(values, probe.window, probe.tol)
    if witness is not None:
        evidence["witness"] = witness
        return Verdict.VIOLATED, evidence
    w = probe.window
    head = mags[:-w]
    if head and max(mags[-w:]) <= max(head) + probe.tol:
        return Verdict.SATISFIED, evidence
    # a monotone tail with summable steps converges, hence is bounded
    extra = tail_extrapolation(mags, w)
    if extra is not None:
        evidence["sup_estimate"] = max(sup, extra["limit_estimate"])
        evidence["decay_exponents"] = extra["decay_exponents"]
        return Verdict.SATISFIED, evidence
    return Verdict.INCONCLUSIVE, evidence
