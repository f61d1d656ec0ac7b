"""
Two ways to make a law odd
==========================

``epsilon2`` keeps the odd part of the logarithm, ``e2`` conjugates by the
square-root series theta.  Both land on odd laws and each fixes the other's
image.
"""

from fglkit.fgl import is_odd, multiplicative, universal
from fglkit.idempotents import e2, epsilon2, epsilon2_hom, kozma_table, theta_series
from fglkit.rings import universal_table

M = multiplicative(9)

E = epsilon2(M)
print("odd log      =", E.law.log)       # artanh(uX)/u
print("F'(X, Y)     =", E.law.F)         # (X + Y)/(1 + u^2 XY)
print("phi          =", E.phi)

theta = theta_series(M)
print("theta        =", theta)
G = e2(M).law
print("e2 log       =", G.log)
print("both odd:", is_odd(E.law), is_odd(G))
print("epsilon2 fixes e2(M):", epsilon2(G).law == G)

# On the universal ring epsilon2 kills the odd generators.
U = universal(8)
hom = epsilon2(U).hom
for name in U.table.names:
    print(f"{name} ->", hom(U.table.gen(name)))

# The elements T(l,k): epsilon2 kills them when lk is even and fixes them otherwise.
table = universal_table(8)
hom = epsilon2_hom(table)
for prime, max_k in ((2, 4), (3, 3)):
    for el in kozma_table(prime, max_k, table):
        print(f"T({prime},{el.k}) = {el.value}  ->  {hom(el.value)}")
