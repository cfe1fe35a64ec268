"""Degrading-map solving: sweep amplitude damping through its degradable /
anti-degradable transition and inspect the certificates of each solve.

Run: python3 demos/03_degradability_tour.py
"""

from pdchannel import degradability as deg
from pdchannel import zoo

print("amplitude damping, B->E (degradable) and E->B (anti-degradable) solves")
print(f"{'gamma':>6} {'B->E ok':>8} {'residual':>10} {'cp_min':>10} "
      f"{'E->B ok':>8} {'label':>16}")
for gamma in (0.1, 0.3, 0.5, 0.7, 0.9):
    c = zoo.amplitude_damping(gamma)
    fwd = deg.is_degradable(c)
    bwd = deg.is_antidegradable(c)
    label = deg.classify_pd(c).label
    print(f"{gamma:6.1f} {str(fwd.success):>8} {fwd.residual:10.2e} "
          f"{fwd.cp_min_eig:10.2e} {str(bwd.success):>8} {label:>16}")

print("\nerasure channel behaves the same way around p = 1/2:")
for p in (0.25, 0.5, 0.75):
    c = zoo.erasure(p)
    print(f"  p={p}: degradable={deg.is_degradable(c).success} "
          f"anti-degradable={deg.is_antidegradable(c).success}")

# a successful solve returns the degrading map itself as a Kraus channel
sol = deg.is_degradable(zoo.amplitude_damping(0.2))
print(f"\nreturned degrading map: {sol.map.dim_in} -> {sol.map.dim_out}, "
      f"{len(sol.map.kraus)} Kraus ops, tp residual {sol.map.tp_residual():.2e}")
print("a failed solve reports its certificates instead of raising:")
print(" ", deg.is_degradable(zoo.amplitude_damping(0.9)).as_dict())
