"""The generic Hall algebra over Q(P), with L = P^2 standing for q.

Structure constants come from the extension polynomials.  The rescaled
basis dbar[X] = s[X] / #Aut(X) satisfies the quantum Serre relations once
the product is twisted by P^chi.
"""

from ringelhall.coeffring import L
from ringelhall.quantumhall import (composition_span, dbar, integral, phi_lambda, qserre_check,
                                   s, sf_mult)
from ringelhall.hallnum import build_hall_table
from ringelhall.quiver import Quiver

A2 = Quiver(2, ((0, 1),))
T = build_hall_table(A2, (2, 2))
v1, v2 = ((1, 0),), ((0, 1),)

print("s[V2] * s[V1] =", sf_mult(s(v2), s(v1), T))
print("s[V1] * s[V1] =", sf_mult(s(v1), s(v1), T))
print("dbar[V1]^2    =", sf_mult(dbar(v1), dbar(v1), T).to_dbar(T))

rep = qserre_check(T)
for c in rep["checks"]:
    print(f"\nquantum Serre ({c['i']},{c['j']}):")
    print("  twisted residue  :", c["twisted_residue"])
    print("  untwisted residue:", c["untwisted_residue"])
    print("  limit at P = 1 matches the classical residue:", c["limit_matches_classical"])

print("\ncomposition algebra spans each weight:", composition_span(T)["ok"])

# The integral sends s[X] to 1 and is multiplicative up to a power of L.
x = sf_mult(s(v2), s(v1), T)
e = -A2.euler()((1, 0), (0, 1))
print("\nintegral of s[V2]*s[V1] =", integral(x, T), "; L^-chi(V1,V2) =", L ** e)
print("its image in the quantum torus:", phi_lambda(x, T))
