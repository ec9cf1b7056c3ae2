"""Finite sequence prefixes, weight sequences and built-in families."""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

FAMILIES = ("constant", "unit", "harmonic", "geometric", "arithmetic", "random")

__all__ = [
    "RATIONAL",
    "FLOAT",
    "Seq",
    "WeightSeq",
    "as_seq",
    "as_weights",
    "make_family",
    "seq_arith",
    "add",
    "sub",
    "scale",
    "format_scalar",
    "parse_scalar",
    "default_seed",
]


def parse_scalar(value, mode: str = RATIONAL) -> Scalar:
    """Convert ``value`` to a scalar of the given mode.

    Strings like ``"-3/8"`` or ``"0.125"`` parse exactly in rational mode.
    Floats are converted exactly (no decimal rounding) when forced into
    rational mode.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(value, bool):
        raise TypeError("boolean is not a scalar")
    if mode == FLOAT:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    return Fraction(value)


def format_scalar(value: Scalar):
    """JSON form of a scalar: ``"p/q"`` strings for rationals, numbers for floats."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return float(value)


def _infer_mode(entries: Sequence) -> str:
    # strings such as "1/3" are exact; only genuine floats select float mode
    return FLOAT if any(isinstance(e, float) for e in entries) else RATIONAL


@dataclass(frozen=True)
class Seq:
    """Prefix ``x_0 .. x_{N-1}`` of a scalar sequence.

    Reads at negative indices return zero, so backward sums like
    ``sum_i d_i x_{k-i}`` need no special casing. Reads at or beyond ``N``
    are outside the known prefix and raise ``IndexError``.
    """

    entries: tuple
    mode: str = RATIONAL

    def __init__(self, entries: Iterable, mode: str | None = None):
        entries = list(entries)
        if mode is None:
            mode = _infer_mode(entries)
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        object.__setattr__(self, "entries", tuple(parse_scalar(e, mode) for e in entries))
        object.__setattr__(self, "mode", mode)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Seq(self.entries[k], self.mode)
        if k < 0:
            return self.zero
        return self.entries[k]

    @property
    def zero(self) -> Scalar:
        return 0.0 if self.mode == FLOAT else Fraction(0)

    def to_float(self) -> "Seq":
        return Seq(self.entries, FLOAT)

    def max_abs(self) -> Scalar:
        return max((abs(e) for e in self.entries), default=self.zero)

    def to_json(self) -> dict:
        return {"mode": self.mode, "entries": [format_scalar(e) for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "Seq":
        mode = data.get("mode", RATIONAL)
        entries = data["entries"]
        if mode == RATIONAL and any(isinstance(e, float) for e in entries):
            raise ValueError("rational-mode entries must be 'p/q' strings or integers")
        return cls(entries, mode)

    def __repr__(self) -> str:
        shown = ", ".join(str(format_scalar(e)) for e in self.entries[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"Seq([{shown}{more}], mode={self.mode!r}, n={len(self)})"


class WeightSeq(Seq):
    """A sequence with no zero entries (the weights ``u``)."""

    def __init__(self, entries: Iterable, mode: str | None = None):
        super().__init__(entries, mode)
        for k, e in enumerate(self.entries):
            if e == 0:
                raise ValueError(f"weight u_{k} is zero")


def as_seq(x, mode: str | None = None) -> Seq:
    if isinstance(x, Seq) and (mode is None or x.mode == mode):
        return x
    return Seq(x.entries if isinstance(x, Seq) else x, mode)


def as_weights(u, n: int | None = None, mode: str | None = None) -> WeightSeq:
    """Coerce ``u`` to a :class:`WeightSeq`; a scalar means a constant weight."""
    if isinstance(u, (int, Fraction, float, str)) and not isinstance(u, bool):
        if n is None:
            raise ValueError("a constant weight needs a length")
        u = [u] * n
    if isinstance(u, WeightSeq) and (mode is None or u.mode == mode):
        w = u
    else:
        w = WeightSeq(u.entries if isinstance(u, Seq) else u, mode)
    if n is not None and len(w) < n:
        raise ValueError(f"weight sequence has {len(w)} entries, need {n}")
    return w


def default_seed() -> int:
    """Seed for random families, overridable through ``FRACSEQ_SEED``."""
    return int(os.environ.get("FRACSEQ_SEED", "20140101"))


def make_family(name: str, params: Sequence = (), n: int = 16, mode: str = RATIONAL) -> Seq:
    """First ``n`` terms of a named family.

    ``constant(c)``, ``unit(j)``, ``harmonic``, ``geometric(r)``,
    ``arithmetic(a, d)`` and ``random(lo, hi[, seed])``.
    """
    p = [parse_scalar(v, mode) for v in params]

    def need(count: int):
        if len(p) < count:
            raise ValueError(f"family {name!r} needs {count} parameter(s), got {len(p)}")

    one = parse_scalar(1, mode)
    zero = parse_scalar(0, mode)
    if name == "constant":
        need(1)
        values = [p[0]] * n
    elif name == "unit":
        need(1)
        j = int(p[0])
        if j != p[0] or j < 0:
            raise ValueError("unit index must be a non-negative integer")
        values = [one if k == j else zero for k in range(n)]
    elif name == "harmonic":
        values = [one / (k + 1) for k in range(n)]
    elif name == "geometric":
        need(1)
        values = [p[0] ** k for k in range(n)]
    elif name == "arithmetic":
        need(2)
        values = [p[0] + k * p[1] for k in range(n)]
    elif name == "random":
        need(2)
        lo, hi = p[0], p[1]
        if hi < lo:
            raise ValueError("random family needs lo <= hi")
        seed = int(p[2]) if len(p) > 2 else default_seed()
        rng = random.Random(seed)
        if mode == FLOAT:
            values = [rng.uniform(float(lo), float(hi)) for _ in range(n)]
        else:
            values = [lo + (hi - lo) * Fraction(rng.randint(0, 64), 64) for _ in range(n)]
    else:
        raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return Seq(values, mode)


def _check_pair(x: Seq, y: Seq):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if x.mode != y.mode:
        raise ValueError(f"mode mismatch: {x.mode} vs {y.mode}")


def add(x: Seq, y: Seq) -> Seq:
    _check_pair(x, y)
    return Seq([a + b for a, b in zip(x, y)], x.mode)


def sub(x: Seq, y: Seq) -> Seq:
    _check_pair(x, y)
    return Seq([a - b for a, b in zip(x, y)], x.mode)


def scale(c, x: Seq) -> Seq:
    c = parse_scalar(c, x.mode)
    return Seq([c * a for a in x], x.mode)


def seq_arith(x: Seq, y: Seq | None = None, op: str = "add", c=None) -> Seq:
    """Pointwise ``add``/``sub`` of two sequences or ``scale`` by ``c``."""
    if op == "add":
        return add(x, y)
    if op == "sub":
        return sub(x, y)
    if op == "scale":
        return scale(c, x)
    raise ValueError(f"unknown op {op!r}")
