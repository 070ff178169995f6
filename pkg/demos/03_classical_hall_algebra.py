"""The Hall algebra of constructible functions (Hall numbers at q = 1).

Products, the Lie bracket, Serre relations, PBW bases and the coproduct.
"""

from ringelhall.hallalg import (cf_bracket, cf_comult, cf_mult, cf_pbw_check, cf_serre_check,
                                delta)
from ringelhall.hallnum import build_hall_table
from ringelhall.quiver import Quiver

A2 = Quiver(2, ((0, 1),))
T = build_hall_table(A2, (2, 2))
v1, v2 = delta(((1, 0),)), delta(((0, 1),))

print("d[V2] * d[V1] =", cf_mult(v2, v1, T))
print("d[V1] * d[V2] =", cf_mult(v1, v2, T))
print("[d[V2], d[V1]] =", cf_bracket(v2, v1, T))

# The bracket of the simples is the indecomposable P; one more bracket vanishes.
print("\nSerre relations:")
for c in cf_serre_check(T)["checks"]:
    print(f"  (ad V{c['i']})^2 V{c['j']}: {c['status']}")

# Ordered products of indecomposables form a basis in each weight.
rep = cf_pbw_check(T)
print("\nPBW order", rep["order"])
for w in rep["weights"]:
    print(f"  weight {w['weight']}: {w['monomials']} monomials, invertible = {w['invertible']}")

print("\ncoproduct of d[V1 + V2]:")
for (x, y), c in cf_comult(delta(((1, 0), (0, 1)))).items():
    print(f"  {c} * d{list(x)} (x) d{list(y)}")
