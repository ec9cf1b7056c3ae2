"""Exact identity suite run by ``fracseq selfcheck``.

Every check draws seeded random rational instances and compares both sides
of an identity with ``==``; there is no tolerance anywhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .dualclass import InfMatrix, b_matrix, c_n_matrix, classify_into_domain, cond_predicate, theorem3_T_matrix
from .fraccoef import coeff_table, convolve_tables, prefix_sums
from .fracops import backward_antidiff, backward_diff, compose_backward
from .gammadomain import (
    TriangleMatrix,
    bk_norm,
    gamma_delta_matrix,
    inverse_transform,
    schauder_basis,
    transform,
)
from .probes import MembershipProbe, Verdict
from ._exact import scaled
from .seqcore import Seq, WeightSeq, default_seed

GOLDEN_HALF = tuple(Fraction(p, q) for p, q in [(1, 1), (-1, 2), (-1, 8), (-1, 16), (-5, 128), (-7, 256)])
GOLDEN_MINUS_HALF = tuple(Fraction(p, q) for p, q in [(1, 1), (1, 2), (3, 8), (5, 16), (35, 128), (63, 256)])
WEIGHT_CHOICES = tuple(Fraction(v) for v in (1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "seconds": round(self.seconds, 4),
            "detail": self.detail,
        }


def random_order(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_seq(rng: random.Random, n: int, bound: int = 9) -> Seq:
    return Seq([Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)])


def random_weights(rng: random.Random, n: int) -> WeightSeq:
    return WeightSeq([rng.choice(WEIGHT_CHOICES) for _ in range(n)])


# -- individual identities ----------------------------------------------------


def check_golden() -> tuple:
    ok = coeff_table(Fraction(1, 2), 6).entries == GOLDEN_HALF
    ok = ok and coeff_table(Fraction(-1, 2), 6).entries == GOLDEN_MINUS_HALF
    return ok, 2, ""


def check_semigroup(rng, cases=200, n=32) -> tuple:
    for _ in range(cases):
        a, b = random_order(rng), random_order(rng)
        if convolve_tables(coeff_table(a, n), coeff_table(b, n)) != coeff_table(a + b, n):
            return False, cases, f"alpha={a}, beta={b}"
    return True, cases, ""


def check_inverse(rng, cases=100, n=64) -> tuple:
    for _ in range(cases):
        a = random_order(rng)
        x = random_seq(rng, n)
        if backward_antidiff(backward_diff(x, a), a) != x or backward_diff(backward_antidiff(x, a), a) != x:
            return False, cases, f"alpha={a}"
    return True, cases, ""


def check_composition(rng, cases=20, n=32) -> tuple:
    for _ in range(cases):
        a, b = random_order(rng), random_order(rng)
        x = random_seq(rng, n)
        direct = backward_diff(x, a + b)
        if compose_backward(x, a, b) != direct or compose_backward(x, a, b, shortcut=True) != direct:
            return False, cases, f"alpha={a}, beta={b}"
    return True, cases, ""


def check_bijection(rng, cases=100, n=64) -> tuple:
    for _ in range(cases):
        a = random_order(rng)
        u = random_weights(rng, n)
        x = random_seq(rng, n)
        y = random_seq(rng, n)
        if inverse_transform(transform(x, a, u), a, u) != x:
            return False, cases, f"roundtrip, alpha={a}"
        if transform(inverse_transform(y, a, u), a, u) != y:
            return False, cases, f"reverse roundtrip, alpha={a}"
        if bk_norm(inverse_transform(y, a, u), a, u)[0] != y.max_abs():
            return False, cases, f"norm, alpha={a}"
    return True, cases, ""


def check_hockey_stick(rng, cases=20, n=32) -> tuple:
    for _ in range(cases):
        a = random_order(rng)
        d = coeff_table(a - 1, n).entries
        tau = gamma_delta_matrix(a, 1, n)
        if any(tau[i, k] != d[i - k] for i in range(n) for k in range(i + 1)):
            return False, cases, f"alpha={a}"
        if prefix_sums(coeff_table(a, n)) != coeff_table(a - 1, n):
            return False, cases, f"prefix sums, alpha={a}"
    return True, cases, ""


def check_schauder(rng, cases=10, n=32) -> tuple:
    for _ in range(cases):
        a = random_order(rng)
        u = random_weights(rng, n)
        cols = [schauder_basis(j, a, u, n) for j in range(n)]
        inv = TriangleMatrix.from_columns(cols)
        tau = gamma_delta_matrix(a, u, n)
        if inv.matmul(tau) != TriangleMatrix.identity(n) or tau.matmul(inv) != TriangleMatrix.identity(n):
            return False, cases, f"alpha={a}"
    return True, cases, ""


def check_abel(rng, cases=50, n=48) -> tuple:
    for _ in range(cases):
        a_ord = random_order(rng)
        u = random_weights(rng, n)
        a = random_seq(rng, n)
        x = random_seq(rng, n)
        y = transform(x, a_ord, u)
        ty = theorem3_T_matrix(a, a_ord, u, n).matvec(y)
        acc = Fraction(0)
        for k in range(n):
            acc += a[k] * x[k]
            if ty[k] != acc:
                return False, cases, f"alpha={a_ord}, n={k}"
    return True, cases, ""


def check_row_identities(rng, cases=20, n=24) -> tuple:
    """Row-matrix identity for ``A x`` and the ``c``-against-``x`` identity.

    The double sum ``sum_k [sum_{j=k}^m tau_jk c_j] x_k`` is accumulated in
    ``m`` with integer numerators, so every ``m`` is checked.
    """
    for _ in range(cases):
        a_ord = random_order(rng)
        u = random_weights(rng, n)
        A = InfMatrix([random_seq(rng, n).entries for _ in range(n)])
        c = InfMatrix([random_seq(rng, n).entries for _ in range(n)])
        x = random_seq(rng, n)
        y = transform(x, a_ord, u)
        tau = gamma_delta_matrix(a_ord, u, n)
        tnum, tden = scaled([e for r in tau.rows for e in r])
        tn = [[e.numerator * (tden // e.denominator) for e in r] for r in tau.rows]
        xn, xden = scaled(list(x.entries))
        yn, yden = scaled(list(y.entries))
        for r in range(n):
            cn = c_n_matrix(A, a_ord, u, r).matvec(y)
            lhs = Fraction(0)
            for m in range(n):
                lhs += A.entries[r][m] * x[m]
                if cn[m] != lhs:
                    return False, cases, f"row identity: alpha={a_ord}, n={r}, m={m}"
            cr, cden = scaled(list(c.entries[r]))
            w = []
            left = 0
            for m in range(n):
                w = [w[k] + tn[m][k] * cr[m] for k in range(m)] + [tn[m][m] * cr[m]]
                left += cr[m] * yn[m]
                right = sum(wk * xk for wk, xk in zip(w, xn))
                if Fraction(left, cden * yden) != Fraction(right, tden * cden * xden):
                    return False, cases, f"c identity: alpha={a_ord}, n={r}, m={m}"
    return True, cases, ""


def check_b_composition(rng, cases=10, n=24) -> tuple:
    for _ in range(cases):
        a_ord = random_order(rng)
        u = random_weights(rng, n)
        A = InfMatrix([random_seq(rng, n).entries for _ in range(n)])
        z = random_seq(rng, n)
        if b_matrix(A, a_ord, u).matvec(z) != gamma_delta_matrix(a_ord, u, n).matvec(A.matvec(z)):
            return False, cases, f"alpha={a_ord}"
    return True, cases, ""


def check_classifier_sanity(n=32) -> tuple:
    probe = MembershipProbe()
    ces = InfMatrix.from_family("cesaro-c1", n)
    reports = [cond_predicate(ces, cid, probe) for cid in ("31", "32", "34")]
    if not all(r.verdict is Verdict.SATISFIED for r in reports):
        return False, 4, "cesaro (c : c) conditions"
    if any(sum(row) != 1 for row in ces.entries):
        return False, 4, "cesaro row sums"
    ident = InfMatrix.from_family("identity", n)
    r38 = cond_predicate(ident, "38", probe)
    if r38.verdict is not Verdict.SATISFIED or r38.evidence["sup"] != 1:
        return False, 4, "identity sup condition"
    r37 = cond_predicate(ident, "37", probe)
    if r37.verdict is not Verdict.VIOLATED or "witness" not in r37.evidence:
        return False, 4, "identity null row sums"
    zero = InfMatrix.from_family("zero", n)
    if classify_into_domain(zero, Fraction(1, 2), 1, "c", "c", probe).verdict is not Verdict.SATISFIED:
        return False, 4, "zero matrix"
    return True, 4, ""


CHECKS = (
    ("golden coefficients", lambda rng: check_golden()),
    ("semigroup", check_semigroup),
    ("inverse operator", check_inverse),
    ("composition shortcut", check_composition),
    ("transform bijection and norm", check_bijection),
    ("summing triangle entries", check_hockey_stick),
    ("basis columns invert the triangle", check_schauder),
    ("abel summation", check_abel),
    ("row matrix identities", check_row_identities),
    ("transformed matrix composition", check_b_composition),
    ("classifier sanity", lambda rng: check_classifier_sanity()),
)


def run_selfcheck(seed: int | None = None, names=None) -> list:
    """Run the suite (or the named subset) and return :class:`CheckResult` items."""
    seed = default_seed() if seed is None else seed
    results = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            ok, cases, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, cases, detail = False, 0, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, cases, time.perf_counter() - t0, detail))
    return results
