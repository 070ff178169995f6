"""Representations of the A2 and A3 quivers over small prime fields.

Run with ``python3 demos/01_representations.py``.

We enumerate isomorphism classes of representations, find the
indecomposables, and compare Hom and Ext dimensions with the Euler form.
"""

from ringelhall.quiver import Quiver
from ringelhall.repfield import RepCategory, aut_order, ext1_dim, hom_dim

A2 = Quiver(2, ((0, 1),))
A3 = Quiver(3, ((0, 1), (1, 2)))

# The indecomposables are independent of the field: one per positive root.
for name, q, box in (("A2", A2, (2, 2)), ("A3", A3, (1, 1, 1))):
    for p in (2, 3):
        cat = RepCategory(q, p, box)
        print(f"{name} over F_{p}: indecomposable dimension vectors {cat.indec_dims}")

# Every class is a direct sum of indecomposables; its label lists them.
cat = RepCategory(A2, 3, (2, 2))
print("\nclasses of A2 with dimension vector (2, 2):")
for label in cat.labels_of_dims((2, 2)):
    X = cat.representative(label)
    print(f"  {label}: #Aut = {aut_order(X)}")

# hom - ext is the Euler form, whatever the classes.
F = A2.euler()
P, S1, S2 = (cat.representative(((1, 1),)), cat.representative(((1, 0),)),
             cat.representative(((0, 1),)))
for a, X in (("V1", S1), ("V2", S2), ("P", P)):
    for b, Y in (("V1", S1), ("V2", S2), ("P", P)):
        h, e = hom_dim(X, Y), ext1_dim(X, Y)
        print(f"  hom({a},{b}) - ext({a},{b}) = {h} - {e} = {F(X.dims, Y.dims)}")
