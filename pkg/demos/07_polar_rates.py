"""Exact-rational rate accounting for polar codeword-set fractions in the
degradable and anti-degradable regimes.

Run: python3 demos/07_polar_rates.py
"""

from fractions import Fraction as F

from pdchannel import polar

led = polar.PolarLedger(
    g_amp=F(1), g_phase=F(3, 4), p1=F(1, 4), p1_prime=F(1, 8),
    p2=F(0), p2_prime=F(0), b=F(0), regime="DEGRADABLE_PD",
)
print("degradable-PD ledger:")
print(f"  base rate        : {polar.rate_degradable(led)}")
print(f"  PD rate          : {polar.rate_pd_degradable(led)}")
print(f"  improvement delta: {polar.delta(led)} (exactly the recoverable fraction)")
chi = {k: str(v) for k, v in polar.holevo_triples(led).items()}
print(f"  Holevo fractions : {chi}")
print(f"  partition check  : {polar.validate_partition(led) or 'consistent'}")

anti = polar.PolarLedger(
    g_amp=F(7, 8), g_phase=F(1, 2), p1=F(1, 4), p1_prime=F(1, 8),
    p2=F(0), p2_prime=F(0), b=F(1, 8), regime="ANTI_DEGRADABLE_PD",
)
rates = polar.rate_pd_antidegradable(anti)
print("\nanti-degradable-PD ledger (entanglement-assisted):")
print(f"  gross rate        : {rates['gross']}")
print(f"  entanglement rate : {rates['entanglement_rate']}")
print(f"  net rate          : {rates['net']}")
print(f"  partition check   : {polar.validate_partition(anti) or 'consistent'}")

broken = polar.PolarLedger(
    g_amp=F(1, 2), g_phase=F(1, 2), p1=F(1, 4), p1_prime=F(1, 8),
    p2=F(0), p2_prime=F(0), b=F(0), regime="DEGRADABLE_PD",
)
print("\ninconsistent ledger is reported, not rounded away:")
for violation in polar.validate_partition(broken):
    print(f"  - {violation}")
