"""
Polynomial growth of compact Lie groups
=======================================

For a compact connected Lie group with generator the sum of the
fundamental representations, the ball volumes grow like k^d with d the
real dimension.  We fit the exponent on a log-log window.
"""

import numpy as np

from qgrowth import build_root_system, fit_polynomial_exponent, lie_volumes, weyl_dim

# %%
rs = build_root_system("G2")
print(rs.name, "rank", rs.rank, "dim", rs.dimension, "|W|", rs.weyl_order)
print("fundamental dims:", [weyl_dim(rs, lam) for lam in [(1, 0), (0, 1)]])

# %%
# exponent fits, one per type
for name, K in [("A1", 1000), ("A2", 400), ("B2", 300), ("G2", 300)]:
    rs = build_root_system(name)
    b, _ = lie_volumes(rs, K)
    fit = fit_polynomial_exponent(b)
    print(f"{name}: fitted {fit.estimate:6.3f}   dim {rs.dimension}")

# %%
# local slopes drift towards d slowly; finite-size corrections are ~1/k
b, _ = lie_volumes(build_root_system("A2"), 400)
k = np.arange(50, 401, 50)
logb = np.log(np.array([float(b[j]) for j in k]))
print("local slopes:", np.round(np.diff(logb) / np.diff(np.log(k)), 3))
