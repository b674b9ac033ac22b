"""
Return probabilities of random walks
====================================

p_k is the normalised multiplicity of the trivial representation in
u^{⊗k}, divided by dim(u)^k.  For SU(2) these are Catalan numbers over
4^k; for A_o(n) and A_s(n) the decay is exponential; for Lie groups it is
polynomial with a Gaussian constant.
"""

import math

from qgrowth import build_root_system, lie_return_probability
from qgrowth.fusion import log_return_probabilities
from qgrowth.lie import gaussian_limit_constant, lie_return_probabilities
from qgrowth.qgroups import ao_ring, as_ring

# %%
a1 = build_root_system("A1")
print([str(lie_return_probability(a1, k)) for k in range(6)])

# %%
# exponential decay rates of the free quantum groups
k = 10_000
for n in range(3, 6):
    lp = log_return_probabilities(ao_ring(n), [k])[k]
    print(f"A_o({n}): -log p_k / 2k = {-lp / (2 * k):.5f}   log(n/2) = {math.log(n / 2):.5f}")
for n in (5, 6):
    lp = log_return_probabilities(as_ring(n), [k])[k]
    print(f"A_s({n}): -log p_k / 2k = {-lp / (2 * k):.5f}   log(n/4) = {math.log(n / 4):.5f}")

# %%
# SU(3): p_k (2k)^4 tends to a constant given by a Gaussian integral
a2 = build_root_system("A2")
ps = lie_return_probabilities(a2, [100, 200, 400])
for j, p in ps.items():
    print(f"k={j}: p_k (2k)^4 = {p * (2 * j) ** 4:.4f}")
print("limit:", round(gaussian_limit_constant(a2), 4))
