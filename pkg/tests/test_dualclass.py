import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fracseq import (
    InfMatrix,
    MembershipProbe,
    Seq,
    TriangleMatrix,
    Verdict,
    WeightSeq,
    a_tilde_matrix,
    b_matrix,
    beta_dual_test,
    c_n_matrix,
    classify_from_domain,
    classify_into_domain,
    cond_predicate,
    gamma_delta_matrix,
    oracle_crosscheck,
    schauder_basis,
    theorem3_T_matrix,
    theorem3_t_seq,
    transform,
)
from fracseq.dualclass import FROM_DOMAIN, INTO_DOMAIN_ITEMS, condition28, sample_members
from fracseq.seqcore import make_family

from conftest import orders, seqs, small_fractions, weights

N = 32


def rand_matrix(rows):
    return InfMatrix([list(r) for r in rows])


# -- Abel summation matrix -----------------------------------------------------


def test_t_sequence_examples():
    assert theorem3_t_seq(make_family("constant", [1], 5), 0, 1).entries == (1,) * 5
    t = theorem3_t_seq(make_family("constant", [1], 3), "1/2", 1)
    assert t.entries == (1, Fraction(3, 2), Fraction(15, 8))
    t = theorem3_t_seq(Seq([3, 0, 0, 0]), "1/2", WeightSeq([2, 1, 1, 1]))
    assert t.entries == (Fraction(3, 2), 0, 0, 0)


@pytest.mark.parametrize("form", ["exact", "single"])
def test_T_examples(form):
    assert theorem3_T_matrix(make_family("constant", [1], 6), 0, 1, form=form) == TriangleMatrix.identity(6)
    zero = theorem3_T_matrix(make_family("constant", [0], 6), "1/2", 1, form=form)
    assert all(e == 0 for r in zero.rows for e in r)


@given(seqs(12, 12), seqs(12, 12), st.lists(weights, min_size=12, max_size=12), orders)
def test_abel_identity(a, x, u, alpha):
    x, u = Seq(x), WeightSeq(u)
    ty = theorem3_T_matrix(Seq(a), alpha, u).matvec(transform(x, alpha, u))
    partial = list(itertools.accumulate(ak * xk for ak, xk in zip(a, x)))
    assert list(ty.entries) == partial


@given(seqs(10, 10), st.lists(weights, min_size=10, max_size=10))
def test_single_sequence_form_matches_at_order_zero(a, u):
    a, u = Seq(a), WeightSeq(u)
    assert theorem3_T_matrix(a, 0, u, form="single") == theorem3_T_matrix(a, 0, u, form="exact")


def test_single_sequence_form_fails_abel_identity_off_zero():
    # a = x = e_0 + e_1, alpha = 1/2: t = (1, 3/2), y = (1, 3/2), so row 1 gives
    # (1 - 3/2) * 1 + 3/2 * 3/2 = 7/4 instead of the partial sum 2
    a = x = Seq([1, 1, 0, 0])
    y = transform(x, "1/2", 1)
    single = theorem3_T_matrix(a, "1/2", 1, form="single").matvec(y)
    exact = theorem3_T_matrix(a, "1/2", 1, form="exact").matvec(y)
    assert exact.entries[:2] == (1, 2)
    assert single.entries[:2] == (1, Fraction(7, 4))


def test_T_rejects_unknown_form():
    with pytest.raises(ValueError):
        theorem3_T_matrix(Seq([1, 2]), 0, 1, form="other")


# -- beta duals -----------------------------------------------------------------


@pytest.mark.parametrize("space", ["c0", "c"])
def test_finitely_supported_in_both_duals(space):
    v = beta_dual_test(make_family("unit", [0], N), "1/2", 1, space)
    assert v.verdict is Verdict.SATISFIED
    assert v.target == "cs"


def test_constant_sequence_dual_at_order_zero():
    assert beta_dual_test(make_family("constant", [1], N), 0, 1, "c0").verdict is Verdict.SATISFIED


def test_linear_sequence_not_in_dual():
    v = beta_dual_test(make_family("arithmetic", [0, 1], N), 0, 1, "c0")
    assert v.verdict is Verdict.VIOLATED
    w = v.report("21").evidence["witness"]
    assert w["row"] == N - 1 and w["value"] == 2 * (N - 1)


def test_beta_dual_checks():
    with pytest.raises(ValueError):
        beta_dual_test(make_family("unit", [0], 8), 0, 1, "c0")
    with pytest.raises(ValueError):
        beta_dual_test(make_family("unit", [0], N), 0, 1, "linf")
    assert [r.condition for r in beta_dual_test(make_family("unit", [0], N), 0, 1, "c").reports] == [
        "20",
        "21",
        "22",
    ]


# -- condition predicates -------------------------------------------------------


def test_cesaro_is_regular():
    ces = InfMatrix.from_family("cesaro-c1", N)
    r31, r32, r34 = (cond_predicate(ces, c) for c in ("31", "32", "34"))
    assert r31.verdict is Verdict.SATISFIED and r31.evidence["sup"] == 1
    assert r32.verdict is Verdict.SATISFIED
    assert all(abs(float(e)) < 1e-3 for e in r32.evidence["limits"])
    assert r34.verdict is Verdict.SATISFIED and r34.evidence["limit_estimate"] == 1


def test_zero_matrix_satisfies_everything():
    zero = InfMatrix.from_family("zero", N)
    for cid in ("31", "32", "33", "34", "35", "36", "37", "38", "39"):
        assert cond_predicate(zero, cid).verdict is Verdict.SATISFIED, cid


def test_identity_sup_and_null_rows():
    ident = InfMatrix.from_family("identity", N)
    r38 = cond_predicate(ident, "38")
    assert r38.verdict is Verdict.SATISFIED and r38.evidence["sup"] == 1
    r37 = cond_predicate(ident, "37")
    assert r37.verdict is Verdict.VIOLATED
    assert N - 8 <= r37.evidence["witness"]["row"] < N


def test_column_null_versus_row_null():
    # a_nk = 1 for k <= n: columns never vanish, rows do (finitely supported)
    lower = InfMatrix([[1 if k <= n else 0 for k in range(N)] for n in range(N)])
    assert cond_predicate(lower, "33").verdict is Verdict.VIOLATED
    assert cond_predicate(lower, "33r").verdict is Verdict.SATISFIED


def test_predicate_errors():
    with pytest.raises(ValueError):
        cond_predicate(InfMatrix.from_family("zero", N), "40")
    with pytest.raises(ValueError):
        cond_predicate(InfMatrix.from_family("zero", 8), "31")


def brute_force_36(A):
    best = Fraction(0)
    for size in range(A.cols + 1):
        for K in itertools.combinations(range(A.cols), size):
            best = max(best, sum(abs(sum((r[k] for k in K), Fraction(0))) for r in A.entries))
    return best


@given(st.lists(st.lists(small_fractions(), min_size=6, max_size=6), min_size=6, max_size=6))
def test_subset_search_is_exhaustive_below_cap(rows):
    A = rand_matrix(rows)
    r = cond_predicate(A, "36", MembershipProbe(window=2))
    assert r.evidence["exhaustive"] is True
    assert r.evidence["sup"] == brute_force_36(A)


def test_subset_search_above_cap_degrades():
    A = InfMatrix.from_family("identity", 18)
    probe = MembershipProbe(window=4, subset_cap=16)
    r = cond_predicate(A, "36", probe)
    assert r.evidence["exhaustive"] is False
    assert r.evidence["sup"] == 18  # greedy finds all columns
    with pytest.raises(ValueError):
        MembershipProbe(subset_cap=21)


def test_subset_search_above_cap_without_decision_is_inconclusive():
    # diag(1/sqrt(n+1)): subset sums grow like sqrt(n), too slowly for a growth
    # witness and too slowly for the bounded-tail extrapolation
    n = 24
    A = InfMatrix([[1 / (i + 1) ** 0.5 if k == i else 0.0 for k in range(n)] for i in range(n)])
    r = cond_predicate(A, "36", MembershipProbe(window=4, subset_cap=8))
    assert r.evidence["exhaustive"] is False
    assert r.verdict is Verdict.INCONCLUSIVE


def test_violated_sup_needs_growth_or_bound():
    ces = InfMatrix.from_family("cesaro-c1", N)
    assert cond_predicate(ces, "31", MembershipProbe(bound=Fraction(1, 2))).verdict is Verdict.VIOLATED
    assert cond_predicate(ces, "31", MembershipProbe(bound=Fraction(1))).verdict is Verdict.SATISFIED


def test_fixed_bound_verdicts_are_monotone_in_truncation():
    # row abs-sums of this triangle are the harmonic numbers H_{n+1}; H_31 > 4
    def verdict(n):
        A = InfMatrix([[Fraction(1, k + 1) if k <= i else 0 for k in range(n)] for i in range(n)])
        return cond_predicate(A, "31", MembershipProbe(window=4, bound=Fraction(4))).verdict

    seen = [verdict(n) for n in (8, 16, 24, 32, 40, 48)]
    assert seen[:3] == [Verdict.SATISFIED] * 3
    # the observed sup only grows, so a violation never reverts
    first = seen.index(Verdict.VIOLATED)
    assert all(v is Verdict.VIOLATED for v in seen[first:])


# -- transformed matrices ---------------------------------------------------------


def test_a_tilde_single_form_at_order_zero():
    A = rand_matrix([[Fraction(i * k + 1, k + 2) for k in range(6)] for i in range(6)])
    at = a_tilde_matrix(A, 0, 1, form="single")
    assert at.shape == (6, 5)
    assert all(at.entries[n][k] == A.entries[n][k] - A.entries[n][k + 1] for n in range(6) for k in range(5))
    assert all(e == 0 for r in a_tilde_matrix(InfMatrix.from_family("zero", 6), "1/2", 1).entries for e in r)


@given(st.lists(st.lists(small_fractions(), min_size=8, max_size=8), min_size=8, max_size=8), orders)
def test_a_tilde_rows_are_last_abel_rows(rows, alpha):
    A = rand_matrix(rows)
    at = a_tilde_matrix(A, alpha, 1)
    assert at.shape == (7, 7)
    for n in range(7):
        T = theorem3_T_matrix(A.row(n), alpha, 1)
        assert at.entries[n] == T.rows[-1][:7]


@given(seqs(10, 10), orders)
def test_a_tilde_acts_on_transform(x, alpha):
    # lower-triangular A: A x = a~ y on every kept row
    A = InfMatrix([[Fraction(k + 1, n + 1) if k <= n else 0 for k in range(10)] for n in range(10)])
    x = Seq(x)
    y = transform(x, alpha, 1)
    assert A.matvec(x).entries[:9] == a_tilde_matrix(A, alpha, 1).matvec(y[:9]).entries


def test_b_matrix_examples():
    A = rand_matrix([[Fraction(n - k, k + 1) for k in range(5)] for n in range(5)])
    assert b_matrix(A, 1, 1) == InfMatrix(A.entries)
    b0 = b_matrix(A, 0, 1)
    assert all(b0.entries[n][k] == sum(A.entries[j][k] for j in range(n + 1)) for n in range(5) for k in range(5))


@given(
    st.lists(st.lists(small_fractions(), min_size=8, max_size=8), min_size=8, max_size=8),
    seqs(8, 8),
    st.lists(weights, min_size=8, max_size=8),
    orders,
)
def test_b_composition(rows, z, u, alpha):
    A, z, u = rand_matrix(rows), Seq(z), WeightSeq(u)
    assert b_matrix(A, alpha, u).matvec(z) == gamma_delta_matrix(alpha, u, 8).matvec(A.matvec(z))


@pytest.mark.parametrize("form", ["exact", "single"])
def test_row_matrix_hand_expansion(form):
    # alpha = 0, A = identity, row 1: z = e_1, rows reproduce its differences
    c = c_n_matrix(InfMatrix.from_family("identity", 4), 0, 1, 1, form)
    assert c.rows == ((0,), (-1, 1), (-1, 1, 0), (-1, 1, 0, 0))
    with pytest.raises(IndexError):
        c_n_matrix(InfMatrix.from_family("identity", 4), 0, 1, 4)


@given(st.lists(st.lists(small_fractions(), min_size=8, max_size=8), min_size=8, max_size=8), seqs(8, 8), orders)
def test_row_matrix_identity(rows, x, alpha):
    A, x = rand_matrix(rows), Seq(x)
    y = transform(x, alpha, 1)
    for n in range(8):
        partial = list(itertools.accumulate(a * v for a, v in zip(A.entries[n], x)))
        assert list(c_n_matrix(A, alpha, 1, n).matvec(y).entries) == partial


# -- class verdicts ------------------------------------------------------------------


def test_triangle_maps_domain_onto_null_sequences():
    tau = InfMatrix.from_triangle(gamma_delta_matrix("1/2", 1, N))
    v = classify_from_domain(tau, "1/2", 1, "c0", "c0")
    assert v.verdict is Verdict.SATISFIED
    cc = oracle_crosscheck(tau, "1/2", 1, "from", "c0", "c0", 20, verdict=v)
    assert cc.consistent and not cc.violations


@pytest.mark.parametrize("source, target", list(FROM_DOMAIN))
def test_zero_matrix_from_domain(source, target):
    assert classify_from_domain(InfMatrix.from_family("zero", N), "1/2", 1, source, target).verdict is Verdict.SATISFIED


@pytest.mark.parametrize("item", list(INTO_DOMAIN_ITEMS))
def test_zero_matrix_into_domain(item):
    assert classify_into_domain(InfMatrix.from_family("zero", N), "1/2", 1, item=item).verdict is Verdict.SATISFIED


def test_growing_constant_rows_unbounded_off_zero_order():
    A = InfMatrix([[n] * N for n in range(N)])
    v = classify_from_domain(A, "1/2", 1, "c0", "linf")
    assert v.verdict is Verdict.VIOLATED
    assert "witness" in v.report("31").evidence
    # at order zero the rows annihilate differences, and the image is zero
    assert classify_from_domain(A, 0, 1, "c0", "linf").verdict is Verdict.SATISFIED


def test_identity_half_order_bounded():
    v = classify_from_domain(InfMatrix.from_family("identity", N), "1/2", 1, "c0", "linf")
    assert v.verdict is Verdict.SATISFIED
    assert v.report("31").evidence["sup_estimate"] <= 2.001


def test_inverse_triangle_into_domain_gives_identity_b():
    cols = [schauder_basis(j, "1/2", 1, N) for j in range(N)]
    A = InfMatrix.from_triangle(TriangleMatrix.from_columns(cols))
    assert b_matrix(A, "1/2", 1).entries == InfMatrix.from_family("identity", N).entries
    assert classify_into_domain(A, "1/2", 1, "c0", "c0").verdict is Verdict.SATISFIED


def test_identity_not_into_null_domain_from_bounded():
    v = classify_into_domain(InfMatrix.from_family("identity", N), 0, 1, "linf", "c0")
    assert v.item == "cor2.i"
    assert v.verdict is Verdict.VIOLATED and "witness" in v.report("37").evidence


def test_cesaro_regular_when_triangle_is_identity():
    ces = InfMatrix.from_family("cesaro-c1", N)
    assert classify_into_domain(ces, 1, 1, "c", "c").verdict is Verdict.SATISFIED
    # at order zero the c-domain is the space of convergent series, and C1 misses it
    v = classify_into_domain(ces, 0, 1, "c", "c")
    assert v.verdict is Verdict.VIOLATED
    assert v.report("34").evidence["witness"]["row"] == N - 1


def test_both_convergent_source_item_sets_exposed():
    ces = InfMatrix.from_family("cesaro-c1", N)
    ii = classify_into_domain(ces, "1/2", 1, item="cor2.ii")
    iv = classify_into_domain(ces, "1/2", 1, item="cor2.iv")
    assert [r.condition for r in ii.reports] == ["31", "33", "35"]
    assert [r.condition for r in iv.reports] == ["33", "38"]
    assert iv.source == "l1"


def test_classification_errors():
    A = InfMatrix.from_family("zero", N)
    with pytest.raises(ValueError):
        classify_from_domain(A, 0, 1, "linf", "c")
    with pytest.raises(ValueError):
        classify_into_domain(A, 0, 1, "c0", "linf")
    with pytest.raises(ValueError):
        classify_into_domain(A, 0, 1, item="cor3.i")
    with pytest.raises(ValueError):
        classify_into_domain(A, 0, 1)


def test_condition28_uses_fixed_rows():
    r = condition28(InfMatrix.from_family("cesaro-c1", N), 1, 1, "c0")
    assert r.verdict is Verdict.SATISFIED
    assert r.evidence["rows_checked"] < N


def test_verdict_json():
    v = classify_from_domain(InfMatrix.from_family("identity", N), 1, 1, "c0", "c0")
    data = json.loads(json.dumps(v.to_json()))
    assert data["item"] == "cor1.iii" and data["verdict"] == "satisfied"
    assert {c["condition"] for c in data["conditions"]} == {"31", "33", "28"}
    assert data["params"]["window"] == 8


def test_matrix_json_roundtrip():
    A = InfMatrix.from_family("cesaro-c1", 4, 5)
    data = json.loads(A.dumps())
    assert data["rows"] == 4 and data["cols"] == 5 and data["family"] == "cesaro-c1"
    assert InfMatrix.from_json(data) == A
    with pytest.raises(ValueError):
        InfMatrix.from_json({"rows": 3, "cols": 5, "entries": data["entries"]})
    with pytest.raises(ValueError):
        InfMatrix([[1, 2], [3]])


# -- cross-check ------------------------------------------------------------------------


def test_cesaro_maps_convergent_to_same_limit():
    v = classify_into_domain(InfMatrix.from_family("cesaro-c1", N), 1, 1, "c", "c")
    cc = oracle_crosscheck(InfMatrix.from_family("cesaro-c1", N), 1, 1, "into", "c", "c", 10, verdict=v)
    assert cc.consistent and cc.samples == 10 and not cc.violations


def test_zero_and_identity_images():
    cc = oracle_crosscheck(InfMatrix.from_family("zero", N), "1/2", 1, "from", "c0", "c0", 12)
    assert cc.agreeing == 12
    cc = oracle_crosscheck(InfMatrix.from_family("identity", N), 1, 1, "into", "c0", "c0", 12)
    assert cc.consistent and not cc.violations


def test_sample_members_are_deterministic():
    a = sample_members("c0", 16, 20)
    b = sample_members("c0", 16, 20)
    assert [s for _, s in a] == [s for _, s in b]
    assert len(a) == 20
    assert all(len(s) == 16 for _, s in sample_members("linf", 16, 5))
