"""
Formal group laws from their logarithms
=======================================

Build the multiplicative and universal laws, look at their [-1]-series and
expand ``S = X + [-1](X)`` in powers of ``P = -X [-1](X)``.
"""

from fglkit.fgl import c_coefficients, c_coefficients_residue, multiplicative, sp_series, universal

# The multiplicative law X + Y + uXY, known through X^7.
M = multiplicative(8)
print("log     =", M.log)
print("F       =", M.F)
print("[-1](X) =", M.minus)

# S and P are both fixed by X -> [-1](X), so S is a series in P.
S, P = sp_series(M)
print("c for the multiplicative law:", [str(c) for c in c_coefficients(S, P)])

# Over the universal ring Q[m1, m2, ...] the coefficients are polynomials.
U = universal(9)
S, P = sp_series(U)
tri = c_coefficients(S, P)
for r, c in enumerate(tri, start=1):
    print(f"c{2 * r - 1} =", c)

# The residue formula gives the same answer.
print("residue route agrees:", tri == c_coefficients_residue(S, P, U.exp))
