"""Division games with residues: value growth, missing values and SVG scatter plots.

Usage: python demos/03_growth_and_gaps.py [output-dir]
"""

# %%
import sys
import time
from pathlib import Path

import numpy as np

from arithgames import sg_table
from arithgames.analysis import occurrence_report, ratio_trend, scatter_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-figures")
out.mkdir(exist_ok=True)

# %% divide-and-residue: each small value seems to appear only a few times.
t0 = time.perf_counter()
dar = sg_table("divide-and-residue", 20_000)
print(f"built divide-and-residue to 20000 in {time.perf_counter() - t0:.1f} s")
rep = occurrence_report(dar)
print(rep.summary())
for v in range(1, 6):
    o = rep.occurrences[v]
    print(f"value {v}: {o.count} times, n in [{o.first}, {o.last}]")

# %% Growth looks sublinear; compare against n^(3/5).
vals = np.array(dar.sequence())
n = np.arange(1, len(vals) + 1)
print("heaps with SG(n) > n^0.6 beyond 1000:", int(np.sum((vals > n**0.6) & (n > 1000))))
print("block maxima of SG(n)/n:", [f"{float(r):.3f}" for _, r in ratio_trend(dar, 8)])

# %% complement-grundy skips some values altogether.
cg = sg_table("complement-grundy", 20_000)
crep = occurrence_report(cg)
print(crep.summary())

# %% Plots.
for name, table in (("divide-and-residue", dar), ("complement-grundy", cg),
                    ("saliquant", sg_table("saliquant", 1000)), ("nontotative", sg_table("nontotative", 1000))):
    scatter_svg(table, out / f"{name}.svg")
print("wrote", sorted(p.name for p in out.glob("*.svg")))
