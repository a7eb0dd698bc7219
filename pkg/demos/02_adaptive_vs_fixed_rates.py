"""Efficiency of routing, fixed-rate coding and controller-driven coding.

Runs the reference two-sink topology over a handful of seeds (the shipped
acceptance run uses 200) and prints the seed-averaged efficiency of each
strategy divided by the routing baseline.

    python3 demos/02_adaptive_vs_fixed_rates.py [seeds]
"""

import statistics
import sys
from pathlib import Path

from ancosa import netsim

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 20
config_path = Path(__file__).resolve().parents[1] / "configs" / "reference.json"
topology, config, doc = netsim.load_config(config_path)

# one run first, to see what the controller does to the rates
result = netsim.run(topology, netsim.RunConfig(**{**config.to_dict(), "n": 64}))
print("one adaptive run, n=64:")
for node in ("S", "R1", "R2", "R3"):
    rates = [row["rate"] for row in result.trace if row["node"] == node]
    print(f"  {node}: rate {rates[0]} -> {rates[-1]} over {len(rates)} rounds,"
          f" sent {result.sent_by_node[node]}")
print(f"  sinks decoded at rounds {result.decode_rounds}\n")

rows = netsim.sweep(topology, config, doc["n_values"], seeds=range(seeds))
print(f"normalized efficiency, mean over {seeds} seeds")
print(f"{'n':>5} {'routing':>8} {'fixed':>8} {'adaptive':>9} {'gain':>8}")
for n in doc["n_values"]:
    mean = {s: statistics.mean(r["normalized_efficiency"] for r in rows
                               if r["n"] == n and r["strategy"] == s)
            for s in netsim.STRATEGIES}
    print(f"{n:>5} {mean['no_coding_retransmit']:>8.3f} {mean['fixed']:>8.3f}"
          f" {mean['adaptive']:>9.3f} {mean['adaptive'] - mean['fixed']:>+8.4f}")
