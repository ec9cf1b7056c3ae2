"""Walk through the weighted fractional difference transform on small inputs.

Run with ``python3 demos/transform_walkthrough.py``.
"""

from fractions import Fraction

from fracseq import (
    MembershipProbe,
    WeightSeq,
    bk_norm,
    coeff_table,
    convolve_tables,
    inverse_transform,
    make_family,
    membership,
    transform,
)

half = Fraction(1, 2)

print("coefficients of order 1/2:", [str(d) for d in coeff_table(half, 6)])
print("coefficients of order -1/2:", [str(d) for d in coeff_table(-half, 6)])

# orders add under convolution, so 1/2 and -1/2 cancel
print("1/2 convolved with -1/2:", [str(d) for d in convolve_tables(coeff_table(half, 6), coeff_table(-half, 6))])

u = WeightSeq([1, -2, half, 2, -1, 1, -half, 2])
x = make_family("harmonic", [], 8)
y = transform(x, half, u)
print("\nx =", [str(v) for v in x])
print("y =", [str(v) for v in y])
back = inverse_transform(y, half, u)
print("inverse recovers x exactly:", back == x)

norm, lower = bk_norm(x, half, u)
print(f"norm of the prefix: {norm} ({'lower bound' if lower else 'exact'})")

# membership verdicts sharpen with longer prefixes and never flip to wrong
loose = MembershipProbe(tol=Fraction(1, 20))
for n in (16, 64, 512):
    r = membership(make_family("unit", [0], n), half, 1, loose)
    print(f"unit sequence at N={n}: {r.verdict}")
