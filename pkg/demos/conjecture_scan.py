"""
Growth exponent against walk decay
==================================

In the polynomial regime the growth exponent d and the walk decay
exponent x of p_k ~ k^x should satisfy d = -2x.  The CLI bundles both
fits into one report; here we call it in-process.
"""

import json

from qgrowth.cli import RunSpec, run

# %%
for obj, K, k in [("lie:A1", 800, 1600), ("lie:A2", 200, 300), ("ao:3", 60, 80)]:
    code, text = run(RunSpec(command="conjecture", object=obj, K=K, k=k, threads=2))
    rep = json.loads(text)["results"]["report"]
    print(f"{obj:8s} exit {code}: {rep['verdict']}  (d={rep['growth_exponent']}, -2x={rep['walk_exponent']})")
