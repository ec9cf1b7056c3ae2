"""Classify a few matrices and check the verdicts against sampled members.

Run with ``python3 demos/classifier_tour.py``. Runs in under a second.
"""

from fractions import Fraction

from fracseq import InfMatrix, beta_dual_test, classify_from_domain, classify_into_domain, make_family, oracle_crosscheck

N = 32

# membership in the beta-dual of the null domain
for name, params, alpha in (("unit", [0], "1/2"), ("constant", [1], "0"), ("arithmetic", [0, 1], "0")):
    a = make_family(name, params, N)
    v = beta_dual_test(a, alpha, 1, "c0")
    print(f"{name}{params} at order {alpha}: {v.verdict}")
    for r in v.reports:
        note = f"  witness row {r.evidence['witness'].get('row')}" if "witness" in r.evidence else ""
        print(f"    ({r.condition}) {r.verdict}{note}")

print()
ces = InfMatrix.from_family("cesaro-c1", N)
for alpha in (Fraction(0), Fraction(1)):
    v = classify_into_domain(ces, alpha, 1, "c", "c")
    print(f"Cesaro mean into the c-domain at order {alpha}: {v.verdict}")

ident = InfMatrix.from_family("identity", N)
v = classify_from_domain(ident, "1/2", 1, "c0", "linf")
cc = oracle_crosscheck(ident, "1/2", 1, "from", "c0", "linf", 20, verdict=v)
print(f"\nidentity on the null domain into bounded sequences: {v.verdict}")
print(f"  {cc.samples} sampled members, {len(cc.violations)} images outside the target")
