"""
Command-line front end.

Usage:
    fracseq coeffs --alpha 1/2 --n 6
    fracseq transform --x unit:0 --alpha 1/2 --n 8
    fracseq invert --x @y.json --alpha 1/2
    fracseq member --x constant:1 --alpha 0 --space c0
    fracseq betadual --a constant:1 --alpha 0 --space c0
    fracseq classify --family cesaro-c1 --direction into --source c --target c --alpha 1
    fracseq selfcheck

Sequences are given inline (``1,-1/2,3/8``), as a family (``geometric:1/2``,
``random:-1,1,7``, ``harmonic``) or as a JSON file (``@path.json``, ``@-``
for stdin). A single scalar for ``--u`` means a constant weight.

Exit codes: 0 satisfied/ok, 1 violated/error, 2 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dualclass import (
    FORMS,
    INTO_DOMAIN_ITEMS,
    MATRIX_FAMILIES,
    InfMatrix,
    beta_dual_test,
    classify_from_domain,
    classify_into_domain,
    oracle_crosscheck,
)
from .fraccoef import as_order, coeff_table
from .gammadomain import TriangleMatrix, bk_norm, inverse_transform, limit_basis_element, membership, schauder_basis, transform
from .probes import MAX_SUBSET_CAP, ClassVerdict, ConditionReport, MembershipProbe, _jsonable, canonical_space
from .selfcheck import run_selfcheck
from .seqcore import FAMILIES, FLOAT, RATIONAL, Seq, as_weights, format_scalar, make_family, parse_scalar

__all__ = ["main", "build_parser", "RunConfig", "parse_seq_source", "parse_matrix_source"]

FORMATS = ("json", "csv", "table")


class CliError(Exception):
    """Bad input; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (1); exit code 2 is reserved for inconclusive verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    n: int = 64
    window: int = 8
    tol: object = Fraction(1, 10**6)
    mode: str = RATIONAL
    fmt: str = "json"
    cap: int = 16
    bound: object = None

    def __post_init__(self):
        if self.n < 1:
            raise CliError("--n must be positive")
        if not self.tol > 0:
            raise CliError("--tol must be positive")
        if not 0 <= self.cap <= MAX_SUBSET_CAP:
            raise CliError(f"--cap must lie in [0, {MAX_SUBSET_CAP}]")

    def probe(self, space: str = "c0", length: Optional[int] = None) -> MembershipProbe:
        length = self.n if length is None else length
        if length < 2 * self.window:
            raise CliError(f"truncation {length} is shorter than twice the window {self.window}")
        return MembershipProbe(self.window, self.tol, space, self.bound, self.cap)


# -- input parsing -------------------------------------------------------------


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc


def parse_seq_source(text: str, n: int, mode: str) -> Seq:
    """Inline list, ``family[:params]`` or ``@file.json``."""
    text = text.strip()
    if text.startswith("@"):
        data = _read_json(text[1:])
        if isinstance(data, list):
            return Seq([parse_scalar(e, mode) for e in data], mode)
        if isinstance(data, dict) and "entries" in data:
            seq = Seq.from_json(data)
            return seq if seq.mode == mode else Seq(seq.entries, mode)
        raise CliError(f"{text[1:]}: expected a sequence object with 'entries'")
    name, _, params = text.partition(":")
    if name in FAMILIES:
        args = [p for p in params.split(",") if p.strip()] if params else []
        return make_family(name, args, n, mode)
    try:
        return Seq([parse_scalar(p, mode) for p in text.split(",")], mode)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse sequence {text!r}; expected 'a,b,c', a family or @file") from exc


def parse_weights(text: str, n: int, mode: str):
    text = text.strip()
    if not text.startswith("@") and "," not in text and ":" not in text and text not in FAMILIES:
        return as_weights(parse_scalar(text, mode), n)
    w = parse_seq_source(text, n, mode)
    if len(w) < n:
        raise CliError(f"weight sequence has {len(w)} entries, need {n}")
    return as_weights(w, n)


def parse_matrix_source(family: Optional[str], matrix: Optional[str], n: int, m: int, mode: str) -> InfMatrix:
    if family and matrix:
        raise CliError("give either --family or --matrix, not both")
    if family:
        return InfMatrix.from_family(family, n, m, mode)
    if not matrix:
        raise CliError("a matrix is required (--family or --matrix)")
    if matrix.startswith("@"):
        data = _read_json(matrix[1:])
        if not isinstance(data, dict) or "entries" not in data:
            raise CliError(f"{matrix[1:]}: expected a matrix object with 'entries'")
        if mode == RATIONAL and any(isinstance(e, float) for r in data["entries"] for e in r):
            raise CliError("rational-mode matrix entries must be 'p/q' strings or integers")
        return InfMatrix.from_json(data)
    rows = [r for r in matrix.split(";") if r.strip()]
    return InfMatrix([[parse_scalar(e, mode) for e in r.split(",")] for r in rows])


def _order(text: str, mode: str):
    try:
        a = as_order(text)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from exc
    return float(a) if mode == FLOAT else a


def _tol(text: str):
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"malformed tolerance {text!r}") from exc
    return t


# -- rendering -------------------------------------------------------------------


def _table(header: list, rows: list) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _render_rows(fmt: str, payload: dict, header: list, rows: list) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(payload), indent=2)
    if fmt == "csv":
        return _csv(header, rows)
    return _table(header, rows)


def render_seq(seq: Seq, fmt: str, extra: Optional[dict] = None) -> str:
    payload = seq.to_json()
    if extra:
        payload.update(extra)
    rows = [[k, format_scalar(v)] for k, v in enumerate(seq.entries)]
    return _render_rows(fmt, payload, ["k", "value"], rows)


def render_verdict(v: ClassVerdict, fmt: str, extra: Optional[dict] = None) -> str:
    payload = v.to_json()
    if extra:
        payload.update(extra)
    rows = [[r.condition, r.verdict.value, _summary(r)] for r in v.reports]
    if fmt == "table":
        head = f"{v.source} -> {v.target}  [{v.item}]  {v.verdict.value}"
        return head + "\n" + _table(["condition", "verdict", "evidence"], rows)
    return _render_rows(fmt, payload, ["condition", "verdict", "evidence"], rows)


def _summary(r: ConditionReport) -> str:
    ev = _jsonable(r.evidence)
    for key in ("witness", "sup", "window_maxima", "window_oscillation", "row_verdicts"):
        if key in ev:
            return f"{key}={json.dumps(ev[key])}"
    return ""


def render_report(r: ConditionReport, fmt: str) -> str:
    payload = r.to_json()
    rows = [[r.condition, r.verdict.value, _summary(r)]]
    return _render_rows(fmt, payload, ["condition", "verdict", "evidence"], rows)


# -- commands ----------------------------------------------------------------------


def _config(args) -> RunConfig:
    mode = args.mode
    bound = None
    if getattr(args, "bound", None) is not None:
        bound = parse_scalar(args.bound, mode)
    return RunConfig(args.n, args.window, _tol(args.tol), mode, args.format, args.cap, bound)


def cmd_coeffs(args, cfg: RunConfig):
    alpha = _order(args.alpha, cfg.mode)
    t = coeff_table(alpha, cfg.n)
    payload = {"order": format_scalar(t.order), "mode": cfg.mode, "entries": [format_scalar(e) for e in t.entries]}
    rows = [[i, format_scalar(e)] for i, e in enumerate(t.entries)]
    return _render_rows(cfg.fmt, payload, ["i", "d_i"], rows), 0


def _x_and_u(args, cfg: RunConfig):
    x = parse_seq_source(args.x, cfg.n, cfg.mode)
    u = parse_weights(args.u, len(x), cfg.mode)
    return x, Seq(u.entries[: len(x)], u.mode)


def cmd_transform(args, cfg: RunConfig):
    x, u = _x_and_u(args, cfg)
    y = transform(x, _order(args.alpha, cfg.mode), u)
    return render_seq(y, cfg.fmt), 0


def cmd_invert(args, cfg: RunConfig):
    y, u = _x_and_u(args, cfg)
    x = inverse_transform(y, _order(args.alpha, cfg.mode), u)
    return render_seq(x, cfg.fmt), 0


def cmd_norm(args, cfg: RunConfig):
    x, u = _x_and_u(args, cfg)
    value, lower = bk_norm(x, _order(args.alpha, cfg.mode), u)
    payload = {"norm": format_scalar(value), "lower_bound": lower, "length": len(x)}
    return _render_rows(cfg.fmt, payload, ["norm", "lower_bound"], [[format_scalar(value), lower]]), 0


def cmd_member(args, cfg: RunConfig):
    x, u = _x_and_u(args, cfg)
    probe = cfg.probe(args.space, len(x))
    if probe.space not in ("c0", "c"):
        raise CliError("--space must be c0 or c for membership")
    r = membership(x, _order(args.alpha, cfg.mode), u, probe)
    return render_report(r, cfg.fmt), r.verdict.exit_code


def cmd_basis(args, cfg: RunConfig):
    alpha = _order(args.alpha, cfg.mode)
    u = parse_weights(args.u, cfg.n, cfg.mode)
    if args.limit:
        return render_seq(limit_basis_element(alpha, u, cfg.n), cfg.fmt, {"element": "limit"}), 0
    if args.j is not None:
        return render_seq(schauder_basis(args.j, alpha, u, cfg.n), cfg.fmt, {"element": args.j}), 0
    cols = [schauder_basis(j, alpha, u, cfg.n) for j in range(cfg.n)]
    m = TriangleMatrix.from_columns(cols)
    rows = [[n, k, format_scalar(m[n, k])] for n in range(m.n) for k in range(n + 1)]
    return _render_rows(cfg.fmt, m.to_json(), ["n", "k", "value"], rows), 0


def cmd_betadual(args, cfg: RunConfig):
    a = parse_seq_source(args.a, cfg.n, cfg.mode)
    u = parse_weights(args.u, len(a), cfg.mode)
    probe = cfg.probe(length=len(a))
    v = beta_dual_test(a, _order(args.alpha, cfg.mode), u, args.space, probe, args.form)
    return render_verdict(v, cfg.fmt), v.verdict.exit_code


def cmd_classify(args, cfg: RunConfig):
    m = args.m if args.m is not None else cfg.n
    A = parse_matrix_source(args.family, args.matrix, cfg.n, m, cfg.mode)
    n, m = A.shape
    u = parse_weights(args.u, max(n, m), cfg.mode)
    alpha = _order(args.alpha, cfg.mode)
    probe = cfg.probe(length=min(n, m))
    if args.direction == "from":
        if not (args.source and args.target):
            raise CliError("--source and --target are required")
        v = classify_from_domain(A, alpha, u, args.source, args.target, probe, args.form)
        src, tgt = canonical_space(args.source), canonical_space(args.target)
    else:
        v = classify_into_domain(A, alpha, u, args.source, args.target, probe, item=args.item)
        src, tgt, _ = INTO_DOMAIN_ITEMS[v.item]
    extra = None
    code = v.verdict.exit_code
    if args.crosscheck:
        cc = oracle_crosscheck(A, alpha, u, args.direction, src, tgt, args.crosscheck, probe, verdict=v)
        extra = {"crosscheck": cc.to_json()}
        if not cc.consistent:
            print("crosscheck contradicts the satisfied verdict", file=sys.stderr)
            code = 1
    return render_verdict(v, cfg.fmt, extra), code


def cmd_selfcheck(args, cfg: RunConfig):
    results = run_selfcheck(args.seed)
    ok = all(r.passed for r in results)
    payload = {"passed": ok, "checks": [r.to_json() for r in results]}
    rows = [[r.name, "pass" if r.passed else "FAIL", r.cases, f"{r.seconds:.3f}", r.detail] for r in results]
    return _render_rows(cfg.fmt, payload, ["check", "result", "cases", "seconds", "detail"], rows), 0 if ok else 1


COMMANDS = {
    "coeffs": cmd_coeffs,
    "transform": cmd_transform,
    "invert": cmd_invert,
    "norm": cmd_norm,
    "member": cmd_member,
    "basis": cmd_basis,
    "betadual": cmd_betadual,
    "classify": cmd_classify,
    "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=64, help="truncation length (default 64)")
    common.add_argument("--window", type=int, default=8, help="probe window W (default 8)")
    common.add_argument("--tol", default="1e-6", help="probe tolerance, parsed exactly (default 1e-6)")
    common.add_argument("--mode", choices=(RATIONAL, FLOAT), default=RATIONAL)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--cap", type=int, default=16, help="column-subset enumeration cap (<= 20)")
    common.add_argument("--bound", default=None, help="explicit bound for supremum conditions")

    parser = _Parser(prog="fracseq", description="Fractional difference sequence spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, alpha=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if alpha:
            p.add_argument("--alpha", required=True, help="difference order, e.g. 1/2")
        return p

    add("coeffs", "coefficient table d_0..d_{n-1}")
    for name, text in [
        ("transform", "weighted summed difference y of x"),
        ("invert", "preimage x of y (given with --x)"),
        ("norm", "sup |y_k| over the prefix"),
        ("member", "membership probe in the c0/c domain space"),
    ]:
        p = add(name, text)
        p.add_argument("--x", required=True, help="sequence source")
        p.add_argument("--u", default="1", help="weight source (default constant 1)")
        if name == "member":
            p.add_argument("--space", default="c0")

    p = add("basis", "basis vectors of the domain space")
    p.add_argument("--u", default="1")
    p.add_argument("--j", type=int, default=None, help="single basis index")
    p.add_argument("--limit", action="store_true", help="the extra element for the c space")

    p = add("betadual", "beta-dual membership of a sequence a")
    p.add_argument("--a", required=True)
    p.add_argument("--u", default="1")
    p.add_argument("--space", default="c0")
    p.add_argument("--form", choices=FORMS, default="exact")

    p = add("classify", "matrix class verdict")
    p.add_argument("--family", choices=MATRIX_FAMILIES + ("cesaro",), default=None)
    p.add_argument("--matrix", default=None, help="@file.json or inline rows 'a,b;c,d'")
    p.add_argument("--m", type=int, default=None, help="column truncation (default --n)")
    p.add_argument("--u", default="1")
    p.add_argument("--direction", choices=("from", "into"), required=True)
    p.add_argument("--source", default=None)
    p.add_argument("--target", default=None)
    p.add_argument("--item", default=None, choices=tuple(INTO_DOMAIN_ITEMS), help="into-direction item id")
    p.add_argument("--form", choices=FORMS, default="exact")
    p.add_argument("--crosscheck", type=int, default=0, metavar="K", help="sample K members and probe images")

    p = add("selfcheck", "run the exact identity suite", alpha=False)
    p.add_argument("--seed", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        out, code = COMMANDS[args.command](args, cfg)
    except (CliError, ValueError, TypeError, IndexError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
