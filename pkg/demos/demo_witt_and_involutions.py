"""
Sequence groups and formal involutions
======================================

A short tour of the Cauchy-product group, its +/- splitting, the reverted
group law and the bijection between even series and involutions.
"""

from gmpy2 import mpq

from fglkit import witt as W
from fglkit import involutions as I
from fglkit.fgl import additive, multiplicative
from fglkit.idempotents import epsilon2
from fglkit.series import TruncSeries

b = W.WittSeq([1, 1, 0, 0, 0, 0])
plus, minus = W.split(b)
print("b+ =", plus)
print("b- =", minus)
print("b+ * b- == b:", W.star(plus, minus) == b)

c = W.WittSeq([1, 1, 0, 0], W.LEADING)
print("rev(1, 1, 0, 0) =", W.revert_seq(c))

# the same sequence written as a formal sum for the multiplicative law
M = multiplicative(6)
print("twisted:", W.f_twist(M, W.WittSeq([1, 1, 0, 0, 0], W.LEADING)))

# Involutions: every e = -T + ... comes from some even u.
T = TruncSeries.X(8)
g = TruncSeries(T.table, [0, 1, 1, 0, 0, 0, 0, 0])
e = I.invol_from_series(g)
print("e_g =", e.e)
O = epsilon2(multiplicative(8)).law
v = I.u_from_invol(O, e)          # coefficients involve the parameter u of the law
print("v   =", v)
print("back to e:", I.invol_from_u(O, v) == e)

# The same involution from its c coefficients, by Hensel lifting.
cs = I.c_from_invol(e)
print("c =", [str(x) for x in cs])
print("Hensel round trip:", I.invol_from_c(cs, 8) == e)

# Commuting involutions coincide.
f = TruncSeries(T.table, [0, 1, 0, mpq(1, 3), 0, 0, 0, 0]).compose(g)
print("same coset:", I.same_coset(f, g), I.invol_from_series(f) == e)
print("additive law w_2:", I.w_series(additive(8), e.e)[2])
