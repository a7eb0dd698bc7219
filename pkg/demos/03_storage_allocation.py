"""Where to put 45 coded parts when any 21 of them rebuild the data.

Compares spreading the parts evenly with the best allocation found by
exhaustive search over partitions, first as the recovery threshold k moves
and then as more storage sites are added.

    python3 demos/03_storage_allocation.py
"""

from fractions import Fraction

from ancosa import StorageParams, failure_probability, optimal_allocation, sweep_reliability
from ancosa.allocation import Allocation
from ancosa.regen import regen_points

# the two-site toy case: 4 parts, any 2 recover, each site fails 1% of the time
params = StorageParams(4, 2, 2, Fraction(1, 100))
for parts in ((3, 1), (2, 2)):
    print(parts, failure_probability(Allocation(parts), params))
print("best:", optimal_allocation(params), "\n")

print("n=45, N=9, p=0.1")
print(f"{'k':>3} {'even':>12} {'optimal':>12} {'ratio':>6}  allocation")
for row in sweep_reliability({"n": 45, "k": [16, 21, 26, 31], "N": 9, "p": 0.1}):
    print(f"{row['k']:>3} {row['P_even']:>12.4e} {row['P_osa']:>12.4e}"
          f" {row['P_even'] / row['P_osa']:>6.2f}  {row['allocation']}")

print("\nn=45, k=21, p=0.1")
print(f"{'N':>3} {'even':>12} {'optimal':>12}  allocation")
for row in sweep_reliability({"n": 45, "k": 21, "N": list(range(5, 10)), "p": 0.1}):
    print(f"{row['N']:>3} {row['P_even']:>12.4e} {row['P_osa']:>12.4e}  {row['allocation']}")
# at N=6 and N=8 the even split is already optimal, so the gap closes to zero

msr, mbr = regen_points(4, 2, 3)
print(f"\nregenerating code B=4, k=2, d=3: MSR alpha={msr.alpha} gamma={msr.gamma},"
      f" MBR alpha={mbr.alpha} gamma={mbr.gamma}")
