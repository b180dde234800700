"""Membership over Q_p and the reals for the squares pair and its shift."""

from fractions import Fraction

from etaleopen import PadicField, affine_image, member_padic, parse_pair, power_pair, real_intervals
from etaleopen.experiments import clopen_witness_padic, hensel_neighborhood_demo, openness_audit

ctx = PadicField(5, 12)
sq = power_pair(2)
shifted = affine_image(sq, 1, 1)

print("a   square?  1 + square?")
for a in range(-4, 12):
    print(f"{a:<3} {member_padic(sq, a, ctx).verdict.value:<8} {member_padic(shifted, a, ctx).verdict.value}")

w = clopen_witness_padic(5)
print("\nsmallest a >= 2 outside both sets over Q_5:", w.alpha)

audit = openness_audit(sq, ctx, members=[1, 4, 6, Fraction(1, 4)])
for row in audit.rows:
    print(f"ball of radius 5^-{row.M} around {row.alpha[0]} stays inside the image")

cubic = parse_pair("pair{n=1; f=y^3 - 3*y - x1; g=y - 1}")
print("\nreal image of y -> y^3 - 3y away from y = 1:", real_intervals(cubic))

for n in (2, 3):
    rep = hensel_neighborhood_demo(n, ctx)
    print(f"hensel family n={n}: {rep.members}/{rep.points} grid points have a root, tangent {rep.tangent}")
