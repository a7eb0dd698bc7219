"""Plot a sweep CSV written by ``ancosa sweep``.  Documentation only: needs
matplotlib, which the package itself does not depend on.

    ancosa sweep configs/reference.json --output sweep.csv
    python3 demos/plot_sweep.py sweep.csv sweep.png
"""

import csv
import statistics
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

src, dst = sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "sweep.png"
with open(src) as fh:
    rows = [r for r in csv.DictReader(fh) if r["normalized_efficiency"]]

fig, ax = plt.subplots(figsize=(5, 3.5))
for strategy in sorted({r["strategy"] for r in rows}):
    ns = sorted({int(r["n"]) for r in rows if r["strategy"] == strategy})
    ys = [statistics.mean(float(r["normalized_efficiency"]) for r in rows
                          if r["strategy"] == strategy and int(r["n"]) == n) for n in ns]
    ax.plot(ns, ys, marker="o", label=strategy)
ax.set_xscale("log", base=2)
ax.set_xlabel("packets per coding group (n)")
ax.set_ylabel("efficiency / routing efficiency")
ax.legend()
fig.tight_layout()
fig.savefig(dst, dpi=150)
print("wrote", dst)
