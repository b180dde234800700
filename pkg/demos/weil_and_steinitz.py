"""Restriction of scalars along Q(i)/Q and F_9/F_3, then squares in infinite
algebraic extensions of F_3."""

from etaleopen import enumerate_finite, make_ext_field, power_pair
from etaleopen.algebra.fields import QQ, FqElement
from etaleopen.poly import PolyRing
from etaleopen.steinitz import is_square_in, k0_of, parse_steinitz_field
from etaleopen.weil import expand_polynomial, lift_to_extension, load_basis, point_down, restrict_pair

Qi = load_basis("Qi")
R = PolyRing(QQ, ("e1", "e2", "x1"))
for text in ("x1^2 + 1", "x1^3 - e2*x1 + 2"):
    comps = expand_polynomial(lift_to_extension(R.parse(text), Qi), Qi)
    print(text, "->", ", ".join(map(str, comps)))

# F_9 points of the squares image, computed two ways
F9, B = make_ext_field(3, 2), load_basis("F9overF3")
pair = power_pair(2, F9)
direct = set(enumerate_finite(pair, F9).values())
system = restrict_pair(pair, B)
flat = {a for a in range(9) if system.solvable_at(point_down((a,), B, F9))}
print("\nsquares in F_9:", sorted(direct), "restricted system agrees:", direct == flat)

print()
F3 = make_ext_field(3, 1)
for spec in ("Fs:3^{5^inf}", "Fs:3^{2*5^inf}", "Fs:3^{4*7}"):
    K = parse_steinitz_field(spec)
    print(f"{spec:<16} k0={k0_of(K)}  2 is a square: {is_square_in(K, FqElement(F3, 2))}")
