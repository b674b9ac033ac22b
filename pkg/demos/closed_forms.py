"""
Closed forms against brute force
================================

The generating series of the free orthogonal and free symmetric quantum
groups are rational.  Here we expand them and compare with the fusion
dynamic program, then read off the exponential growth rate from the
smallest pole.
"""

from qgrowth import closed_form, expand, growth_ratio, series_from_ring
from qgrowth.asymptotics import root_qn
from qgrowth.qgroups import ao_ring, as_ring

# %%
# S(z) for A_o(3): a rational function with integer coefficients
S = closed_form("ao", 3)
print("S(z) =", S)
print("first terms:", expand(S, 8).as_ints())

# %%
# the fusion engine counts dimensions of irreducibles directly
print("from DP:    ", series_from_ring(ao_ring(3), 8).as_ints())

# %%
# growth rate of the coefficients vs the algebraic oracle
for n in range(3, 8):
    r = growth_ratio(closed_form("ao", n))
    q = root_qn(n + 2).value
    print(f"A_o({n}): ratio {r:.12f}   q^2 {q * q:.12f}")

for n in range(5, 9):
    assert expand(closed_form("as", n), 20) == series_from_ring(as_ring(n), 20)
print("A_s(5..8) agree to order 20")
