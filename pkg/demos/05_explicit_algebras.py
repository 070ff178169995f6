"""The algebras A, B and C attached to a biadditive form chi on Z^n.

A is a quantum torus.  B has basis b{...} indexed by multisets of vectors
with coefficients in Q(P); its products have no pole at L = 1, and sending L
to 1 gives the rational algebra C.  Brackets of singletons close on
singletons.
"""

from ringelhall.quiver import EulerForm
from ringelhall.twistedalg import (a_basis, a_mult, b_basis, b_bracket, b_mult, c_basis, c_mult,
                                   ind_bracket, pi_morphism)

chi = EulerForm.from_matrix([[1, -1], [0, 1]])
e1, e2 = (1, 0), (0, 1)

print("a[e1] * a[e2] =", a_mult(a_basis(e1), a_basis(e2), chi))
print("a[e2] * a[e1] =", a_mult(a_basis(e2), a_basis(e1), chi))

x = b_mult(b_basis(e2, e2), b_basis(e1), chi)
print("\nb{e2,e2} * b{e1} =", x)
print("same product by the graph formula:", b_mult(b_basis(e2, e2), b_basis(e1), chi, "graph") == x)
print("coefficients finite at L = 1:", x.in_lambda_circ())
print("image in C:", pi_morphism(x))
print("product in C:", c_mult(c_basis(e2, e2), c_basis(e1), chi))

print("\n[b{e2}, b{e1}] =", b_bracket(b_basis(e2), b_basis(e1), chi))
print("C bracket  :", ind_bracket("C", e2, e1, chi))
print("CY bracket :", ind_bracket("CY", e2, e1, chi))
